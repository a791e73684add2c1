#include "nlsbvp/interval.hpp"

#include <algorithm>
#include <cmath>

#include "nlsbvp/filon.hpp"
#include "nlsbvp/spectral.hpp"

namespace nlsbvp {

namespace {

Real mode_frequency(Index n) {
  const Real w = Real(n) * kPi;
  return w * w;
}

Complex interp_trace(const BoundaryTrace& h, Real t) {
  const Real dt = h.dt();
  const Index j = std::min<Index>(Index(std::max(t, 0.0) / dt), h.size() - 2);
  const Real a = (t - dt * Real(j)) / dt;
  return (1.0 - a) * h.samples[j] + a * h.samples[j + 1];
}

bool aligned_with_trace(const RVec& times, const BoundaryTrace& h, Eigen::VectorXi& idx) {
  const Real dt = h.dt();
  idx.resize(times.size());
  for (Index k = 0; k < times.size(); ++k) {
    const Real r = times[k] / dt;
    const Index j = Index(std::llround(r));
    if (j < 0 || j >= h.size() || std::abs(r - Real(j)) > 1e-9) return false;
    idx[k] = int(j);
  }
  return true;
}

}  // namespace

SineSpectrum w0_group(const SineSpectrum& spec, Real t) {
  Vec out(spec.coeffs.size());
  for (Index n = 1; n <= spec.coeffs.size(); ++n)
    out[n - 1] = spec.coeffs[n - 1] * std::polar(1.0, -mode_frequency(n) * t);
  return SineSpectrum{std::move(out)};
}

ComplexSamples w0_group(const ComplexSamples& phi, Real t) {
  return dst_inverse(w0_group(dst_forward(phi), t), phi.grid);
}

namespace {

// Sine coefficients of every time column of f.
Mat modal_columns(const SpaceTimeField& f) {
  const Index nmodes = f.space.n_points - 2;
  Mat fhat(nmodes, f.n_time());
  for (Index k = 0; k < f.n_time(); ++k) {
    ComplexSamples col(f.space, f.values.col(k));
    fhat.col(k) = dst_forward(col).coeffs;
  }
  return fhat;
}

}  // namespace

ComplexSamples w0_duhamel(const SpaceTimeField& f, Real t) {
  const Real T = f.times[f.n_time() - 1];
  if (t < -1e-12 || t > T * (1.0 + 1e-12))
    throw InvalidInput("w0_duhamel: t outside the forcing's time grid");
  const Real dt = f.times[1] - f.times[0];
  const Mat fhat = modal_columns(f);
  const Index nmodes = fhat.rows();
  Vec coeffs(nmodes);
  for (Index n = 1; n <= nmodes; ++n) {
    const Real w = mode_frequency(n);
    const Complex j = oscillatory_partial(fhat.row(n - 1).transpose(), dt, w, t);
    coeffs[n - 1] = -kI * std::polar(1.0, -w * t) * j;
  }
  return dst_inverse(SineSpectrum{std::move(coeffs)}, f.space);
}

SpaceTimeField w0_duhamel_field(const SpaceTimeField& f) {
  const Real dt = f.times[1] - f.times[0];
  const Mat fhat = modal_columns(f);
  const Index nmodes = fhat.rows();
  const Index nt = f.n_time();
  Mat coeffs(nmodes, nt);
  for (Index n = 1; n <= nmodes; ++n) {
    const Real w = mode_frequency(n);
    const Vec cum = oscillatory_cumulative(fhat.row(n - 1).transpose(), dt, w);
    for (Index k = 0; k < nt; ++k)
      coeffs(n - 1, k) = -kI * std::polar(1.0, -w * f.times[k]) * cum[k];
  }
  Mat out(f.space.n_points, nt);
  for (Index k = 0; k < nt; ++k)
    out.col(k) = dst_inverse(SineSpectrum{Vec(coeffs.col(k))}, f.space).values;
  return SpaceTimeField(f.space, f.times, std::move(out));
}

namespace {

// Peeled boundary-series coefficients at one time:
//   B_n(t) = 2 i n pi e^{-i w_n t} J_n(t) - (2/(n pi)) h(t),  w_n = (n pi)^2,
// so that  u(x,t) = h(t) (1 - x) + sum_n B_n(t) sin(n pi x).
Vec peeled_coefficients(const Vec& mode_integrals, Complex h_t, Real t, Index nmodes) {
  Vec b(nmodes);
  for (Index n = 1; n <= nmodes; ++n) {
    const Real npi = Real(n) * kPi;
    const Complex a = 2.0 * kI * npi * std::polar(1.0, -mode_frequency(n) * t) * mode_integrals[n - 1];
    b[n - 1] = a - 2.0 / npi * h_t;
  }
  return b;
}

Real tail_ratio_of(const Vec& b) {
  const Real norm = b.norm();
  if (norm == 0.0) return 0.0;
  return std::abs(b[b.size() - 1]) / norm;
}

ComplexSamples assemble_boundary_series(const Vec& b, Complex h_t, bool reflect, const Grid1D& grid) {
  Vec coeffs = b;
  if (reflect)
    for (Index n = 2; n <= coeffs.size(); n += 2) coeffs[n - 1] = -coeffs[n - 1];
  ComplexSamples u = dst_inverse(SineSpectrum{std::move(coeffs)}, grid);
  for (Index j = 0; j < grid.n_points; ++j) {
    const Real x = grid.node(j);
    u.values[j] += h_t * (reflect ? x : (1.0 - x));
  }
  return u;
}

}  // namespace

BoundarySeries wh_boundary(const BoundaryTrace& h, Real t, bool reflect, const Grid1D& grid,
                           const BoundarySeriesOptions& opt) {
  const Index nmodes = opt.n_modes > 0 ? opt.n_modes : grid.n_points - 2;
  const Real scale = h.samples.cwiseAbs().maxCoeff();
  BoundarySeries result;
  result.tail_warning = false;
  Vec mode_integrals(nmodes);
  for (Index n = 1; n <= nmodes; ++n)
    mode_integrals[n - 1] = oscillatory_partial(h.samples, h.dt(), mode_frequency(n), t);
  const Complex h_t = interp_trace(h, t);
  const Vec b = peeled_coefficients(mode_integrals, h_t, t, nmodes);
  result.tail_ratio = tail_ratio_of(b);
  result.tail_warning = result.tail_ratio > opt.tail_tol;
  if (scale > 0.0 && std::abs(h.samples[0]) > opt.start_tol * scale)
    result.tail_warning = true;  // incompatible start rings like a rough tail
  result.samples = assemble_boundary_series(b, h_t, reflect, grid);
  return result;
}

SpaceTimeField wh_boundary_field(const BoundaryTrace& h, bool reflect, const Grid1D& grid,
                                 Index stride, const BoundarySeriesOptions& opt,
                                 bool* tail_warning) {
  if (stride < 1) throw InvalidInput("wh_boundary_field: stride must be positive");
  const Index nmodes = opt.n_modes > 0 ? opt.n_modes : grid.n_points - 2;
  const Index nt = (h.size() - 1) / stride + 1;
  const Real dt = h.dt();
  Mat b(nmodes, nt);
  for (Index n = 1; n <= nmodes; ++n) {
    const Real w = mode_frequency(n);
    const Vec cum = oscillatory_cumulative(h.samples, dt, w);
    const Real npi = Real(n) * kPi;
    for (Index k = 0; k < nt; ++k) {
      const Index j = k * stride;
      const Real t = dt * Real(j);
      b(n - 1, k) = 2.0 * kI * npi * std::polar(1.0, -w * t) * cum[j] - 2.0 / npi * h.samples[j];
    }
  }
  bool warn = false;
  Mat out(grid.n_points, nt);
  RVec times(nt);
  for (Index k = 0; k < nt; ++k) {
    const Index j = k * stride;
    times[k] = dt * Real(j);
    const Vec bk = b.col(k);
    warn = warn || tail_ratio_of(bk) > opt.tail_tol;
    out.col(k) = assemble_boundary_series(bk, h.samples[j], reflect, grid).values;
  }
  if (tail_warning) *tail_warning = warn;
  return SpaceTimeField(grid, std::move(times), std::move(out));
}

SpaceTimeField solve_linear_interval(const ComplexSamples& phi, const BoundaryPairSpec& bc,
                                     const std::optional<SpaceTimeField>& f, const RVec& times,
                                     const IntervalSolveOptions& opt) {
  const Grid1D& grid = phi.grid;
  const Complex c0 = bc.h1.samples[0];
  const Complex c1 = bc.h2.samples[0];
  if (opt.enforce_compatibility) {
    const Real scale = std::max({1.0, phi.values.cwiseAbs().maxCoeff(),
                                 bc.h1.samples.cwiseAbs().maxCoeff(),
                                 bc.h2.samples.cwiseAbs().maxCoeff()});
    std::string bad;
    if (std::abs(phi.values[0] - c0) > opt.compat_tol * scale)
      bad += " left corner: phi(0) != h1(0);";
    if (std::abs(phi.values[grid.n_points - 1] - c1) > opt.compat_tol * scale)
      bad += " right corner: phi(1) != h2(0);";
    if (!bad.empty())
      throw CompatibilityError("solve_linear_interval: incompatible data:" + bad);
  }

  // Corner lift l(x) = (1-x) h1(0) + x h2(0) is a static solution of the free
  // equation; the remainder has boundary data vanishing at t = 0.
  Vec lift(grid.n_points);
  for (Index j = 0; j < grid.n_points; ++j) {
    const Real x = grid.node(j);
    lift[j] = (1.0 - x) * c0 + x * c1;
  }
  ComplexSamples v0(grid, phi.values - lift);

  BoundaryTrace h1s(bc.h1.duration, bc.h1.samples.array() - c0);
  BoundaryTrace h2s(bc.h2.duration, bc.h2.samples.array() - c1);

  const SineSpectrum v0hat = dst_forward(v0);

  Eigen::VectorXi idx;
  const bool fast = aligned_with_trace(times, bc.h1, idx);

  Mat out(grid.n_points, times.size());
  if (fast) {
    // cumulative quadrature once per mode, then subsample
    const Index nmodes = opt.series.n_modes > 0 ? opt.series.n_modes : grid.n_points - 2;
    const Real dt = bc.h1.dt();
    Mat b1(nmodes, times.size()), b2(nmodes, times.size());
    for (Index n = 1; n <= nmodes; ++n) {
      const Real w = mode_frequency(n);
      const Real npi = Real(n) * kPi;
      const Vec cum1 = oscillatory_cumulative(h1s.samples, dt, w);
      const Vec cum2 = oscillatory_cumulative(h2s.samples, dt, w);
      for (Index k = 0; k < times.size(); ++k) {
        const Index j = idx[k];
        const Complex rot = std::polar(1.0, -w * times[k]);
        b1(n - 1, k) = 2.0 * kI * npi * rot * cum1[j] - 2.0 / npi * h1s.samples[j];
        b2(n - 1, k) = 2.0 * kI * npi * rot * cum2[j] - 2.0 / npi * h2s.samples[j];
      }
    }
    for (Index k = 0; k < times.size(); ++k) {
      const Index j = idx[k];
      Vec bs = b1.col(k);
      Vec br = b2.col(k);
      for (Index n = 2; n <= br.size(); n += 2) br[n - 1] = -br[n - 1];
      Vec coeffs = Vec::Zero(grid.n_points - 2);
      const Index ncopy = std::min<Index>(bs.size(), coeffs.size());
      coeffs.head(ncopy) = bs.head(ncopy) + br.head(ncopy);
      // free evolution of the lifted initial data shares the synthesis
      const SineSpectrum ev = w0_group(v0hat, times[k]);
      coeffs.head(std::min<Index>(ev.coeffs.size(), coeffs.size())) +=
          ev.coeffs.head(std::min<Index>(ev.coeffs.size(), coeffs.size()));
      ComplexSamples u = dst_inverse(SineSpectrum{std::move(coeffs)}, grid);
      for (Index m = 0; m < grid.n_points; ++m) {
        const Real x = grid.node(m);
        u.values[m] += h1s.samples[j] * (1.0 - x) + h2s.samples[j] * x + lift[m];
      }
      out.col(k) = u.values;
    }
  } else {
    for (Index k = 0; k < times.size(); ++k) {
      const Real t = times[k];
      Vec acc = dst_inverse(w0_group(v0hat, t), grid).values;
      acc += wh_boundary(h1s, t, false, grid, opt.series).samples.values;
      acc += wh_boundary(h2s, t, true, grid, opt.series).samples.values;
      acc += lift;
      out.col(k) = acc;
    }
  }

  if (f.has_value()) {
    for (Index k = 0; k < times.size(); ++k)
      out.col(k) += w0_duhamel(*f, times[k]).values;
  }
  return SpaceTimeField(grid, times, std::move(out));
}

}  // namespace nlsbvp
