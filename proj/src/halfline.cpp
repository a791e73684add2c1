#include "nlsbvp/halfline.hpp"

#include <algorithm>
#include <cmath>

#include "nlsbvp/fft.hpp"
#include "nlsbvp/filon.hpp"
#include "nlsbvp/spectral.hpp"

namespace nlsbvp {

RVec geometric_beta_grid(Real beta_min, Real beta_max, Index n) {
  if (beta_min <= 0.0 || beta_max <= beta_min || n < 32)
    throw InvalidInput("geometric_beta_grid: need 0 < beta_min < beta_max and n >= 32");
  // linear head from 0 to beta_min anchors the quadrature at the origin,
  // geometric spacing above
  const Index head = std::max<Index>(16, n / 16);
  RVec b(n);
  for (Index j = 0; j < head; ++j) b[j] = beta_min * Real(j) / Real(head);
  const Real ratio = std::log(beta_max / beta_min) / Real(n - head - 1);
  for (Index j = head; j < n; ++j) b[j] = beta_min * std::exp(ratio * Real(j - head));
  return b;
}

LaplaceBoundarySymbol laplace_symbol(const BoundaryTrace& h, const RVec& beta_grid) {
  LaplaceBoundarySymbol sym;
  sym.beta_grid = beta_grid;
  sym.minus_branch.resize(beta_grid.size());
  sym.plus_branch.resize(beta_grid.size());
  const Real dt = h.dt();
  for (Index j = 0; j < beta_grid.size(); ++j) {
    const Real mu = beta_grid[j] * beta_grid[j];
    sym.minus_branch[j] = oscillatory_integral(h.samples, dt, +mu);  // Lh(-i mu)
    sym.plus_branch[j] = oscillatory_integral(h.samples, dt, -mu);   // Lh(+i mu)
  }
  return sym;
}

namespace {

// Roll the symbol off smoothly over the top half-decade of the mu grid so the
// quadrature never sums unresolved oscillation there.
RVec taper_profile(const RVec& mu, bool enabled) {
  const Index n = mu.size();
  RVec r = RVec::Ones(n);
  if (!enabled) return r;
  const Real lhi = std::log10(mu[n - 1]);
  const Real llo = lhi - 0.5;
  for (Index j = 0; j < n; ++j) {
    const Real l = std::log10(mu[j]);
    if (l > llo) {
      const Real u = std::min((l - llo) / (lhi - llo), 1.0);
      const Real c = std::cos(0.5 * kPi * u);
      r[j] = c * c;
    }
  }
  return r;
}

void check_bandwidth(const RVec& mu, const Vec& branch, const WbOptions& opt) {
  if (!opt.check_bandwidth) return;
  const Index n = mu.size();
  const Real lhi = std::log10(mu[n - 1]);
  Real peak = 0.0, tail = 0.0;
  for (Index j = 0; j < n; ++j) {
    const Real level = std::abs(branch[j]);
    peak = std::max(peak, level);
    if (mu[j] > 0.0 && std::log10(mu[j]) > lhi - 0.5) tail = std::max(tail, level);
  }
  if (peak > 0.0 && tail > opt.bandwidth_tol * peak)
    throw InvalidInput("wb: boundary data bandwidth exceeds the beta grid (raise beta_max)");
}

// int over the mu grid of e^{i sgn t mu} * (piecewise-linear amplitude),
// divided by 2 pi.
Complex mu_filon(const RVec& mu, const Vec& amp, Real omega) {
  Complex acc = 0.0;
  for (Index j = 0; j + 1 < mu.size(); ++j) {
    const auto [w0, w1] = oscillatory_weights(omega, mu[j + 1] - mu[j]);
    acc += std::polar(1.0, omega * mu[j]) * (w0 * amp[j] + w1 * amp[j + 1]);
  }
  return acc / (2.0 * kPi);
}

}  // namespace

Complex wb1(const LaplaceBoundarySymbol& sym, Real x, Real t, const WbOptions& opt) {
  const RVec mu = sym.beta_grid.cwiseAbs2();
  check_bandwidth(mu, sym.minus_branch, opt);
  const RVec r = taper_profile(mu, opt.taper);
  Vec amp(mu.size());
  for (Index j = 0; j < mu.size(); ++j)
    amp[j] = std::polar(1.0, std::sqrt(mu[j]) * x) * sym.minus_branch[j] * r[j];
  return mu_filon(mu, amp, -t);
}

Complex wb2(const LaplaceBoundarySymbol& sym, Real x, Real t, const WbOptions& opt) {
  const RVec mu = sym.beta_grid.cwiseAbs2();
  check_bandwidth(mu, sym.plus_branch, opt);
  const RVec r = taper_profile(mu, opt.taper);
  Vec amp(mu.size());
  for (Index j = 0; j < mu.size(); ++j)
    amp[j] = std::exp(-std::sqrt(mu[j]) * std::abs(x)) * sym.plus_branch[j] * r[j];
  return mu_filon(mu, amp, t);
}

Mat wb_field(const LaplaceBoundarySymbol& sym, const RVec& xs, const RVec& ts,
             const WbOptions& opt) {
  const RVec mu = sym.beta_grid.cwiseAbs2();
  check_bandwidth(mu, sym.minus_branch, opt);
  check_bandwidth(mu, sym.plus_branch, opt);
  const RVec r = taper_profile(mu, opt.taper);
  const Index nm = mu.size(), nx = xs.size(), nt = ts.size();

  // collapsed per-node quadrature weights for e^{-i mu t} and e^{+i mu t}
  Mat w_minus = Mat::Zero(nm, nt), w_plus = Mat::Zero(nm, nt);
  for (Index k = 0; k < nt; ++k) {
    for (Index j = 0; j + 1 < nm; ++j) {
      const Real dmu = mu[j + 1] - mu[j];
      {
        const auto [w0, w1] = oscillatory_weights(-ts[k], dmu);
        const Complex ph = std::polar(1.0, -ts[k] * mu[j]);
        w_minus(j, k) += ph * w0;
        w_minus(j + 1, k) += ph * w1;
      }
      {
        const auto [w0, w1] = oscillatory_weights(ts[k], dmu);
        const Complex ph = std::polar(1.0, ts[k] * mu[j]);
        w_plus(j, k) += ph * w0;
        w_plus(j + 1, k) += ph * w1;
      }
    }
  }

  Mat amp1(nx, nm), amp2(nx, nm);
  for (Index j = 0; j < nm; ++j) {
    const Real root = std::sqrt(mu[j]);
    const Complex s1 = sym.minus_branch[j] * r[j];
    const Complex s2 = sym.plus_branch[j] * r[j];
    for (Index i = 0; i < nx; ++i) {
      amp1(i, j) = std::polar(1.0, root * xs[i]) * s1;
      amp2(i, j) = std::exp(-root * std::abs(xs[i])) * s2;
    }
  }
  return (amp1 * w_minus + amp2 * w_plus) / (2.0 * kPi);
}

Complex faddeeva_w(Complex z, Real step) {
  if (z.imag() < 0.0)
    return 2.0 * std::exp(-z * z) - faddeeva_w(-z, step);
  const Real h = step;
  // nudge off the sampling comb (z real and exactly on a node)
  if (z.imag() < 1e-10) {
    const Real frac = std::abs(std::remainder(z.real() / h - 0.5, 1.0));
    if (frac < 1e-10) z += Complex(0.0, 1e-9);
  }
  const Index kmax = Index(std::ceil(7.0 / h));
  Complex sum = 0.0;
  for (Index k = -kmax; k < kmax; ++k) {
    const Real s = (Real(k) + 0.5) * h;
    sum += std::exp(-s * s) / (z - s);
  }
  Complex w = kI * h / kPi * sum;
  // pole-crossing correction of the sampled representation
  const Index m0 = Index(std::floor(z.imag() * h / kPi)) + 1;
  const Complex q = std::exp(2.0 * kPi * kI * z / h);
  Complex qm = std::pow(-q, Real(m0));
  w -= 2.0 * std::exp(-z * z) * qm / (1.0 + q);
  return w;
}

Complex kernel_Kt(Real x, Real y, Real t, const KernelOptions& opt) {
  if (t == 0.0) throw InvalidInput("kernel_Kt: t must be nonzero");
  if (t < 0.0) return std::conj(kernel_Kt(x, -y, -t, opt));
  const Complex rot = std::polar(1.0, kPi / 4.0);
  const Complex z = kI * rot * Complex(std::abs(x), y) / (2.0 * std::sqrt(t));
  return rot / (2.0 * std::sqrt(kPi * t)) * faddeeva_w(z, opt.faddeeva_step);
}

ComplexSamples free_propagator_line(const ComplexSamples& psi, Real t,
                                    bool* truncation_warning) {
  const Index n = psi.grid.n_points;
  if (truncation_warning) {
    const Real total = psi.values.cwiseAbs2().sum();
    Real edge = 0.0;
    for (Index j = 0; j < std::min<Index>(5, n); ++j)
      edge += std::norm(psi.values[j]) + std::norm(psi.values[n - 1 - j]);
    *truncation_warning = total > 0.0 && edge > 1e-6 * total;
  }
  Vec spec = fft_forward(psi.values);
  const RVec xi = fft_frequencies(n, psi.grid.spacing());
  for (Index j = 0; j < n; ++j) spec[j] *= std::polar(1.0, -xi[j] * xi[j] * t);
  return ComplexSamples(psi.grid, fft_inverse(spec));
}

namespace {

Complex cubic_sample(const Vec& v, Real dx, Real x) {
  // 4-point Lagrange interpolation on a uniform grid starting at 0
  const Index n = v.size();
  const Real r = x / dx;
  Index j = Index(std::floor(r));
  j = std::clamp<Index>(j, 1, n - 3);
  const Real u = r - Real(j);
  const Real wm1 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const Real w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const Real w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const Real w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return wm1 * v[j - 1] + w0 * v[j] + w1 * v[j + 1] + w2 * v[j + 2];
}

}  // namespace

ComplexSamples extend(const ComplexSamples& phi, SobolevIndex s, const TruncatedLine& line) {
  if (s.s >= 2.5) throw InvalidInput("extend: reflection extension is built for s < 5/2");
  const Grid1D half = line.half_grid();
  if (!(phi.grid == half))
    throw InvalidInput("extend: phi must live on the positive half of the target line");
  const Index z = line.zero_index();
  Vec out(line.grid.n_points);
  for (Index j = 0; j <= z; ++j) out[z + j] = phi.values[j];
  const Real dx = half.spacing();
  const Real cutoff_hi = 0.5 * line.x_max;   // zero beyond here
  const Real cutoff_lo = 0.25 * line.x_max;  // untouched before here
  for (Index j = 1; j <= z; ++j) {
    const Real x = dx * Real(j);  // extension evaluated at -x
    // value-and-slope matching; second derivatives may jump, which H^s
    // tolerates throughout s < 5/2
    Complex v = -2.0 * cubic_sample(phi.values, dx, x) +
                3.0 * cubic_sample(phi.values, dx, x / 3.0);
    if (x >= cutoff_hi) {
      v = 0.0;
    } else if (x > cutoff_lo) {
      const Real u = (x - cutoff_lo) / (cutoff_hi - cutoff_lo);
      const Real c = std::cos(0.5 * kPi * u);
      v *= c * c;
    }
    out[z - j] = v;
  }
  return ComplexSamples(line.grid, std::move(out));
}

ComplexSamples extend_odd(const ComplexSamples& phi, const TruncatedLine& line) {
  if (!(phi.grid == line.half_grid()))
    throw InvalidInput("extend_odd: phi must live on the positive half of the target line");
  const Index z = line.zero_index();
  Vec out(line.grid.n_points);
  for (Index j = 0; j <= z; ++j) out[z + j] = phi.values[j];
  for (Index j = 1; j <= z; ++j) out[z - j] = -phi.values[j];
  return ComplexSamples(line.grid, std::move(out));
}

SpaceTimeField solve_linear_halfline(const ComplexSamples& phi, const BoundaryTrace& h,
                                     const std::optional<SpaceTimeField>& f, const RVec& times,
                                     const HalflineSolveOptions& opt) {
  const Real x_max = phi.grid.origin + phi.grid.extent;
  if (std::abs(phi.grid.origin) > 1e-14)
    throw InvalidInput("solve_linear_halfline: phi must start at x = 0");
  TruncatedLine line = TruncatedLine::symmetric(x_max, phi.grid.n_points);
  const Index z = line.zero_index();
  const Index nl = line.grid.n_points;

  if (opt.enforce_compatibility) {
    const Real scale = std::max({1.0, phi.values.cwiseAbs().maxCoeff(),
                                 h.samples.cwiseAbs().maxCoeff()});
    if (std::abs(phi.values[0] - h.samples[0]) > opt.compat_tol * scale)
      throw CompatibilityError("solve_linear_halfline: corner mismatch phi(0) != h(0)");
  }

  auto extend_by_kind = [&](const ComplexSamples& g) {
    return opt.extension == ExtensionKind::odd ? extend_odd(g, line)
                                               : extend(g, opt.extension_regularity, line);
  };
  const ComplexSamples phi_star = extend_by_kind(phi);
  const Vec spectrum = fft_forward(phi_star.values);
  const RVec xi = fft_frequencies(nl, line.grid.spacing());

  auto free_at = [&](Real t) {
    Vec s(nl);
    for (Index j = 0; j < nl; ++j) s[j] = spectrum[j] * std::polar(1.0, -xi[j] * xi[j] * t);
    return fft_inverse(s);
  };

  // forced part: per-frequency quadrature against the phase e^{i xi^2 tau}
  Mat duhamel_hat;  // nl x n_trace coefficients, already rotated to time t_m
  const Index nh = h.size();
  const Real dt = h.dt();
  if (f.has_value()) {
    if (f->n_time() != nh || std::abs(f->times[nh - 1] - h.duration) > 1e-12)
      throw InvalidInput("solve_linear_halfline: forcing must share the trace's time grid");
    Mat fhat(nl, nh);
    for (Index m = 0; m < nh; ++m) {
      ComplexSamples slice(phi.grid, f->values.col(m));
      fhat.col(m) = fft_forward(extend_by_kind(slice).values);
    }
    duhamel_hat.resize(nl, nh);
    for (Index j = 0; j < nl; ++j) {
      const Real w = xi[j] * xi[j];
      const Vec cum = oscillatory_cumulative(fhat.row(j).transpose(), dt, w);
      for (Index m = 0; m < nh; ++m)
        duhamel_hat(j, m) = -kI * std::polar(1.0, -w * dt * Real(m)) * cum[m];
    }
  }

  // traces of the free and forced parts at x = 0, on the trace grid
  Vec g_trace(nh), p_trace = Vec::Zero(nh);
  Vec phase_zero(nl);
  for (Index j = 0; j < nl; ++j)
    phase_zero[j] = std::polar(1.0, 2.0 * kPi * Real(j) * Real(z) / Real(nl)) / Real(nl);
  for (Index m = 0; m < nh; ++m) {
    const Real t = dt * Real(m);
    Complex acc = 0.0;
    for (Index j = 0; j < nl; ++j)
      acc += spectrum[j] * std::polar(1.0, -xi[j] * xi[j] * t) * phase_zero[j];
    g_trace[m] = acc;
    if (f.has_value()) {
      Complex pacc = 0.0;
      for (Index j = 0; j < nl; ++j) pacc += duhamel_hat(j, m) * phase_zero[j];
      p_trace[m] = pacc;
    }
  }

  BoundaryTrace delta(h.duration, h.samples - g_trace - p_trace);
  const Real beta_min = opt.beta_min > 0.0 ? opt.beta_min : kPi / (8.0 * h.duration);
  const Real beta_max = opt.beta_max > 0.0 ? opt.beta_max : kPi / dt;
  const LaplaceBoundarySymbol sym =
      laplace_symbol(delta, geometric_beta_grid(beta_min, beta_max, opt.n_beta));

  const Grid1D half = line.half_grid();
  RVec xs = half.nodes();
  Mat correction = wb_field(sym, xs, times, opt.wb);

  Mat out(half.n_points, times.size());
  for (Index k = 0; k < times.size(); ++k) {
    const Vec freev = free_at(times[k]);
    out.col(k) = freev.segment(z, half.n_points);
    if (f.has_value()) {
      const Real r = times[k] / dt;
      const Index m = Index(std::llround(r));
      if (m < 0 || m >= nh || std::abs(r - Real(m)) > 1e-9)
        throw InvalidInput("solve_linear_halfline: output times must lie on the trace grid when forcing is present");
      Vec dh(nl);
      for (Index j = 0; j < nl; ++j) dh[j] = duhamel_hat(j, m);
      out.col(k) += fft_inverse(dh).segment(z, half.n_points);
    }
  }
  out += correction;
  return SpaceTimeField(half, times, std::move(out));
}

}  // namespace nlsbvp
