#include "nlsbvp/filon.hpp"

#include <algorithm>

namespace nlsbvp {

Complex expm1_over(Complex z) {
  if (std::abs(z) < 0.5) {
    Complex sum = 1.0, term = 1.0;
    for (int k = 1; k < 24; ++k) {
      term *= z / Real(k + 1);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

Complex expm1_ramp(Complex z) {
  if (std::abs(z) < 0.5) {
    // sum_{k>=0} (k+1) z^k / (k+2)!
    Complex sum = 0.5, term = 0.5;
    for (int k = 1; k < 24; ++k) {
      term *= z * Real(k + 1) / (Real(k) * Real(k + 2));
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  return (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
}

OscillatoryWeights oscillatory_weights(Real omega, Real dt) {
  const Complex z = kI * omega * dt;
  const Complex i0 = dt * expm1_over(z);        // int e^{i w s} ds
  const Complex i1 = dt * dt * expm1_ramp(z);   // int s e^{i w s} ds
  return {i0 - i1 / dt, i1 / dt};
}

Complex oscillatory_integral(const Vec& f, Real dt, Real omega) {
  const Index n = f.size();
  if (n < 2) throw InvalidInput("oscillatory_integral: need at least 2 samples");
  const auto [w0, w1] = oscillatory_weights(omega, dt);
  Complex acc = 0.0;
  for (Index j = 0; j + 1 < n; ++j) {
    const Complex phase = std::polar(1.0, omega * dt * Real(j));
    acc += phase * (w0 * f[j] + w1 * f[j + 1]);
  }
  return acc;
}

Vec oscillatory_cumulative(const Vec& f, Real dt, Real omega) {
  const Index n = f.size();
  if (n < 2) throw InvalidInput("oscillatory_cumulative: need at least 2 samples");
  const auto [w0, w1] = oscillatory_weights(omega, dt);
  Vec out(n);
  out[0] = 0.0;
  Complex acc = 0.0;
  for (Index j = 0; j + 1 < n; ++j) {
    const Complex phase = std::polar(1.0, omega * dt * Real(j));
    acc += phase * (w0 * f[j] + w1 * f[j + 1]);
    out[j + 1] = acc;
  }
  return out;
}

Complex oscillatory_partial(const Vec& f, Real dt, Real omega, Real t) {
  const Index n = f.size();
  const Real T = dt * Real(n - 1);
  if (t < -1e-12 || t > T * (1.0 + 1e-12))
    throw InvalidInput("oscillatory_partial: t outside the sampled range");
  t = std::clamp(t, 0.0, T);
  const Index jfull = std::min<Index>(Index(t / dt), n - 2);
  const auto [w0, w1] = oscillatory_weights(omega, dt);
  Complex acc = 0.0;
  for (Index j = 0; j < jfull; ++j) {
    const Complex phase = std::polar(1.0, omega * dt * Real(j));
    acc += phase * (w0 * f[j] + w1 * f[j + 1]);
  }
  const Real rem = t - dt * Real(jfull);
  if (rem > 0.0) {
    // linear interpolant on the last (partial) interval
    const Complex slope = (f[jfull + 1] - f[jfull]) / dt;
    const Complex z = kI * omega * rem;
    const Complex i0 = rem * expm1_over(z);
    const Complex i1 = rem * rem * expm1_ramp(z);
    const Complex phase = std::polar(1.0, omega * dt * Real(jfull));
    acc += phase * (f[jfull] * i0 + slope * i1);
  }
  return acc;
}

}  // namespace nlsbvp
