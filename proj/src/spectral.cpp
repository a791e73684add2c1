#include "nlsbvp/spectral.hpp"

#include <algorithm>

#include "nlsbvp/fft.hpp"

namespace nlsbvp {

Real trapezoid(const RVec& f, Real dx) {
  const Index n = f.size();
  if (n < 2) return 0.0;
  return dx * (f.segment(1, n - 2).sum() + 0.5 * (f[0] + f[n - 1]));
}

Real trapezoid_nonuniform(const RVec& f, const RVec& x) {
  Real acc = 0.0;
  for (Index j = 0; j + 1 < f.size(); ++j)
    acc += 0.5 * (x[j + 1] - x[j]) * (f[j] + f[j + 1]);
  return acc;
}

Real l2_norm(const ComplexSamples& f) {
  return std::sqrt(trapezoid(f.values.cwiseAbs2(), f.grid.spacing()));
}

namespace {

// sum_{j=1}^{M-1} f_j sin(n pi j / M) for n = 1..M-1 via the FFT of the odd
// extension of length 2M.
Vec sine_sum(const Vec& interior) {
  const Index m = interior.size() + 1;
  Vec g = Vec::Zero(2 * m);
  for (Index j = 1; j < m; ++j) {
    g[j] = interior[j - 1];
    g[2 * m - j] = -interior[j - 1];
  }
  const Vec G = fft_forward(g);
  Vec s(m - 1);
  for (Index n = 1; n < m; ++n) s[n - 1] = Complex(0.0, 0.5) * G[n];
  return s;
}

}  // namespace

SineSpectrum dst_forward(const ComplexSamples& f) {
  const Index m = f.grid.n_points - 1;
  if (m < 2) throw InvalidInput("dst_forward: grid too small");
  const Vec interior = f.values.segment(1, m - 1);
  Vec coeffs = sine_sum(interior) * (2.0 / Real(m));
  return SineSpectrum{std::move(coeffs)};
}

ComplexSamples dst_inverse(const SineSpectrum& spec, const Grid1D& grid) {
  const Index m = grid.n_points - 1;
  const Index nmodes = spec.n_modes();
  Vec out = Vec::Zero(grid.n_points);
  if (nmodes <= m - 1) {
    Vec padded = Vec::Zero(m - 1);
    padded.head(nmodes) = spec.coeffs;
    const Vec interior = sine_sum(padded);  // synthesis is the same sum
    out.segment(1, m - 1) = interior;
  } else {
    // more modes than the grid resolves: direct evaluation
    for (Index j = 0; j < grid.n_points; ++j) {
      const Real x = grid.node(j);
      Complex acc = 0.0;
      for (Index n = 1; n <= nmodes; ++n)
        acc += spec.coeffs[n - 1] * std::sin(Real(n) * kPi * x);
      out[j] = acc;
    }
  }
  return ComplexSamples(grid, std::move(out));
}

ComplexSamples odd_extension(const ComplexSamples& f) {
  const Grid1D& g = f.grid;
  const Index n = g.n_points;
  Grid1D ext(g.origin - g.extent, 2.0 * g.extent, 2 * n - 1);
  Vec v(2 * n - 1);
  for (Index j = 0; j < n; ++j) v[n - 1 + j] = f.values[j];
  for (Index j = 1; j < n; ++j) v[n - 1 - j] = -f.values[j];
  v[n - 1] = f.values[0];  // node shared with the original grid
  return ComplexSamples(ext, std::move(v));
}

Real sobolev_norm_time(const BoundaryTrace& h, SobolevIndex s, int pad_factor) {
  if (h.size() < 8) throw InvalidInput("sobolev_norm_time: need at least 8 samples");
  if (pad_factor < 1) throw InvalidInput("sobolev_norm_time: pad_factor must be >= 1");
  const Index n = h.size();
  const Index m = next_pow2(n * Index(pad_factor));
  Vec padded = Vec::Zero(m);
  padded.head(n) = h.samples;
  const Vec H = fft_forward(padded);
  const Real dt = h.dt();
  const RVec xi = fft_frequencies(m, dt);
  // h_hat(xi) ~= dt * DFT / sqrt(2 pi); integral by the rectangle sum, which
  // is the trapezoid of the zero extension on the padded grid.
  const Real dxi = 2.0 * kPi / (Real(m) * dt);
  const Real scale = dt * dt / (2.0 * kPi);
  RVec weighted(m);
  for (Index j = 0; j < m; ++j)
    weighted[j] = std::pow(1.0 + xi[j] * xi[j], s.s) * std::norm(H[j]) * scale;
  const Real peak = weighted.maxCoeff();
  Real acc = 0.0;
  for (Index j = 0; j < m; ++j)
    if (weighted[j] >= 1e-14 * peak) acc += weighted[j];
  return std::sqrt(acc * dxi);
}

Real mixed_norm(const SpaceTimeField& u, Real q, Real r) {
  if (q < 1.0 || r < 1.0) throw InvalidInput("mixed_norm: need q, r >= 1");
  const Index nt = u.n_time();
  RVec inner(nt);
  const Real dx = u.space.spacing();
  for (Index k = 0; k < nt; ++k) {
    const auto col = u.values.col(k).cwiseAbs();
    if (std::isinf(r)) {
      inner[k] = col.maxCoeff();
    } else {
      RVec p = col.array().pow(r).matrix();
      inner[k] = std::pow(trapezoid(p, dx), 1.0 / r);
    }
  }
  if (std::isinf(q)) return inner.maxCoeff();
  RVec p = inner.array().pow(q).matrix();
  return std::pow(trapezoid_nonuniform(p, u.times), 1.0 / q);
}

Real sobolev_norm_interval(const ComplexSamples& f, SobolevIndex s) {
  const SineSpectrum spec = dst_forward(f);
  Real acc = 0.0;
  for (Index n = 1; n <= spec.n_modes(); ++n) {
    const Real w = Real(n) * kPi;
    acc += std::pow(1.0 + w * w, s.s) * std::norm(spec.coeffs[n - 1]);
  }
  return std::sqrt(0.5 * acc);
}

Real sobolev_norm_line(const ComplexSamples& f, SobolevIndex s) {
  const Index n = f.grid.n_points;
  const Real dx = f.grid.spacing();
  const Vec F = fft_forward(f.values);
  const RVec xi = fft_frequencies(n, dx);
  // unitary-transform Parseval: sum dx |f|^2 = (dxi/2pi) sum |dx F|^2
  const Real dxi = 2.0 * kPi / (Real(n) * dx);
  Real acc = 0.0;
  for (Index j = 0; j < n; ++j)
    acc += std::pow(1.0 + xi[j] * xi[j], s.s) * std::norm(F[j]) * dx * dx;
  return std::sqrt(acc * dxi / (2.0 * kPi));
}

}  // namespace nlsbvp
