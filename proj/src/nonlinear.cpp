#include "nlsbvp/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlsbvp/fft.hpp"
#include "nlsbvp/filon.hpp"
#include "nlsbvp/spectral.hpp"

namespace nlsbvp {

ComplexSamples nonlinearity(const ComplexSamples& u, Real p, Real lambda) {
  ComplexSamples out = u;
  for (Index j = 0; j < out.values.size(); ++j) {
    const Real a = std::abs(out.values[j]);
    out.values[j] *= (a == 0.0) ? 0.0 : lambda * std::pow(a, p - 2.0);
  }
  return out;
}

Mat nonlinearity(const Mat& u, Real p, Real lambda) {
  Mat out = u;
  for (Index j = 0; j < out.size(); ++j) {
    const Real a = std::abs(out.data()[j]);
    out.data()[j] *= (a == 0.0) ? 0.0 : lambda * std::pow(a, p - 2.0);
  }
  return out;
}

namespace {

std::string fmt(Real v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

GateResult gate(const IBVPSpec& spec) {
  GateResult r;
  const Real s = spec.s.s;
  const Real p = spec.p;

  if (spec.lambda == 0.0) {
    r.reason = "lambda != 0";
    return r;
  }
  if (p < 3.0) {
    r.reason = "3 <= p";
    return r;
  }
  if (s < 0.0 || s >= 2.5) {
    r.reason = "0 <= s < 5/2";
    return r;
  }
  if (is_excluded_half_integer(s)) {
    r.reason = "s != n + 1/2";
    return r;
  }

  // differentiability of |u|^{p-2} u at the requested regularity
  const bool p_integer = std::abs(p - std::round(p)) < 1e-12;
  const bool p_even = p_integer && (std::llround(p) % 2 == 0);
  const bool p_odd = p_integer && !p_even;
  if (p_odd && s > p - 1.0) {
    r.reason = "s <= p - 1 (odd p)";
    return r;
  }
  if (!p_integer && std::floor(s) >= p - 2.0) {
    r.reason = "floor(s) < p - 2 (non-integer p)";
    return r;
  }

  if (s < 0.5) {
    if (spec.domain == DomainKind::half_line) {
      const Real bound = (6.0 - 4.0 * s) / (1.0 - 2.0 * s);
      if (!(p < bound)) {
        r.reason = "3 <= p < (6-4s)/(1-2s) (half line, s < 1/2): p < " + fmt(bound);
        return r;
      }
    } else {
      if (!(p <= 4.0)) {
        r.reason = "3 <= p <= 4 (interval, s < 1/2)";
        return r;
      }
    }
  }
  r.ok = true;

  // global regime
  if (s < 1.0) {
    r.global_reason = "global continuation needs s >= 1";
  } else if (spec.lambda > 0.0) {
    const Real cap = spec.domain == DomainKind::half_line ? 4.0 : 10.0 / 3.0;
    if (p > cap + 1e-12) {
      r.global_reason = spec.domain == DomainKind::half_line
                            ? "lambda > 0 on the half line needs 3 <= p <= 4"
                            : "lambda > 0 on the interval needs 3 <= p <= 10/3";
    } else {
      r.global_ok = true;
    }
  } else {
    r.global_ok = true;
  }
  return r;
}

namespace {

Complex second_derivative_at_end(const Vec& v, Real dx, bool left) {
  if (v.size() < 4) throw InvalidInput("check_compatibility: phi grid too small");
  if (left)
    return (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (dx * dx);
  const Index n = v.size();
  return (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (dx * dx);
}

Complex derivative_at_start(const Vec& v, Real dt) {
  return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * dt);
}

}  // namespace

CompatReport check_compatibility(const IBVPSpec& spec, int order, Real tol) {
  CompatReport rep;
  rep.order = order;
  rep.tolerance = tol;
  const Vec& phi = spec.phi.values;
  const Real dx = spec.phi.grid.spacing();

  auto corner = [&](const BoundaryTrace& h, bool left, const std::string& name) {
    const Complex phi_c = left ? phi[0] : phi[phi.size() - 1];
    rep.labels.push_back(name);
    rep.residuals.push_back(std::abs(h.samples[0] - phi_c));
    if (order >= 1) {
      const Complex lam_term =
          nonlinearity(ComplexSamples(Grid1D(0.0, 1.0, 2), Vec::Constant(2, phi_c)),
                       spec.p, spec.lambda)
              .values[0];
      const Complex res = kI * derivative_at_start(h.samples, h.dt()) +
                          second_derivative_at_end(phi, dx, left) + lam_term;
      rep.labels.push_back(name + " (first order)");
      rep.residuals.push_back(std::abs(res));
    }
  };

  if (spec.domain == DomainKind::half_line) {
    if (!spec.h) throw InvalidInput("check_compatibility: half-line spec needs h");
    corner(*spec.h, true, "x=0");
  } else {
    if (!spec.bc) throw InvalidInput("check_compatibility: interval spec needs h1, h2");
    corner(spec.bc->h1, true, "x=0");
    corner(spec.bc->h2, false, "x=1");
  }
  for (Real r : rep.residuals) rep.pass = rep.pass && (r <= tol);
  return rep;
}

Vec spatial_derivative(const Vec& u, Real dx) {
  const Index n = u.size();
  if (n < 5) throw InvalidInput("spatial_derivative: need at least 5 nodes");
  Vec d(n);
  const Real s = 1.0 / (12.0 * dx);
  d[0] = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) * s;
  d[1] = (-3.0 * u[0] - 10.0 * u[1] + 18.0 * u[2] - 6.0 * u[3] + u[4]) * s;
  for (Index j = 2; j + 2 < n; ++j)
    d[j] = (u[j - 2] - 8.0 * u[j - 1] + 8.0 * u[j + 1] - u[j + 2]) * s;
  d[n - 2] = (3.0 * u[n - 1] + 10.0 * u[n - 2] - 18.0 * u[n - 3] + 6.0 * u[n - 4] - u[n - 5]) * s;
  d[n - 1] = (25.0 * u[n - 1] - 48.0 * u[n - 2] + 36.0 * u[n - 3] - 16.0 * u[n - 4] + 3.0 * u[n - 5]) * s;
  return d;
}

namespace {

Real sup_l2_difference(const Mat& a, const Mat& b, Real dx) {
  Real worst = 0.0;
  for (Index k = 0; k < a.cols(); ++k) {
    const RVec diff = (a.col(k) - b.col(k)).cwiseAbs2();
    worst = std::max(worst, std::sqrt(trapezoid(diff, dx)));
  }
  return worst;
}

struct PicardOutcome {
  Mat field;
  std::vector<Real> residuals;
  int iterations = 0;
};

// one window on the interval: all quantities live on the trace time grid
PicardOutcome picard_interval(const ComplexSamples& phi, const BoundaryPairSpec& bc,
                              Real p, Real lambda, const SolverConfig& cfg, Real s) {
  const Grid1D& g = phi.grid;
  const Index nt = bc.h1.size();
  const RVec times = SpaceTimeField::uniform_times(bc.h1.duration, nt);
  IntervalSolveOptions lin_opt;
  lin_opt.enforce_compatibility = s > 0.5;
  lin_opt.series.n_modes = cfg.n_modes;
  const Mat linear =
      solve_linear_interval(phi, bc, std::nullopt, times, lin_opt).values;

  PicardOutcome out;
  out.field = linear;
  for (int it = 0; it < cfg.picard_max_iter; ++it) {
    SpaceTimeField nl(g, times, nonlinearity(out.field, p, lambda));
    const Mat next = linear - w0_duhamel_field(nl).values;
    const Real res = sup_l2_difference(next, out.field, g.spacing());
    out.field = next;
    out.residuals.push_back(res);
    out.iterations = it + 1;
    if (res < cfg.picard_tol) return out;
  }
  throw NonConvergence(
      "picard_solve: no contraction within max_iter; shrink window_T (local theory "
      "guarantees some T* > 0, not this one)");
}

// one window on the half line; the iterate lives on the whole truncated line
PicardOutcome picard_halfline(const ComplexSamples& phi_half, const BoundaryTrace& h,
                              Real p, Real lambda, const SolverConfig& cfg, Real s) {
  const Index nt = h.size();
  const Real dt = h.dt();
  TruncatedLine line = TruncatedLine::symmetric(cfg.x_max, phi_half.grid.n_points);
  const Index nl = line.grid.n_points;
  const Index z = line.zero_index();
  if (s > 0.5) {
    const Real scale = std::max({1.0, phi_half.values.cwiseAbs().maxCoeff(),
                                 h.samples.cwiseAbs().maxCoeff()});
    if (std::abs(phi_half.values[0] - h.samples[0]) > 1e-6 * scale)
      throw CompatibilityError("picard_solve: corner mismatch phi(0) != h(0)");
  }

  const ComplexSamples phi_star = cfg.extension == ExtensionKind::odd
                                      ? extend_odd(phi_half, line)
                                      : extend(phi_half, SobolevIndex(std::min(s, 2.0)), line);
  const Vec spectrum = fft_forward(phi_star.values);
  const RVec xi = fft_frequencies(nl, line.grid.spacing());
  const RVec xi2 = xi.cwiseAbs2();

  // free part and its trace
  Mat free_field(nl, nt);
  for (Index m = 0; m < nt; ++m) {
    Vec sp(nl);
    for (Index j = 0; j < nl; ++j) sp[j] = spectrum[j] * std::polar(1.0, -xi2[j] * dt * Real(m));
    free_field.col(m) = fft_inverse(sp);
  }
  const Vec g_trace = free_field.row(z).transpose();

  const Real beta_min = cfg.beta_min > 0.0 ? cfg.beta_min : kPi / (8.0 * h.duration);
  const Real beta_max = cfg.beta_max > 0.0 ? cfg.beta_max : kPi / dt;
  const RVec beta = geometric_beta_grid(beta_min, beta_max, cfg.n_beta);
  const RVec xs = line.grid.nodes();
  const RVec times = SpaceTimeField::uniform_times(h.duration, nt);
  WbOptions wb_opt;
  wb_opt.check_bandwidth = false;  // correction traces are solver-generated

  BoundaryTrace delta0(h.duration, h.samples - g_trace);
  Mat linear = free_field + wb_field(laplace_symbol(delta0, beta), xs, times, wb_opt);

  PicardOutcome out;
  out.field = linear;
  Mat duhamel(nl, nt);
  for (int it = 0; it < cfg.picard_max_iter; ++it) {
    // Duhamel of the nonlinearity, frequency by frequency
    const Mat nl_field = nonlinearity(out.field, p, lambda);
    Mat nhat(nl, nt);
    for (Index m = 0; m < nt; ++m) nhat.col(m) = fft_forward(nl_field.col(m));
    for (Index j = 0; j < nl; ++j) {
      const Vec cum = oscillatory_cumulative(nhat.row(j).transpose(), dt, xi2[j]);
      for (Index m = 0; m < nt; ++m)
        nhat(j, m) = kI * std::polar(1.0, -xi2[j] * dt * Real(m)) * cum[m];
    }
    for (Index m = 0; m < nt; ++m) duhamel.col(m) = fft_inverse(nhat.col(m));

    // cancel the spurious boundary trace introduced by the forcing
    BoundaryTrace f_u(h.duration, duhamel.row(z).transpose());
    const Mat corr = wb_field(laplace_symbol(f_u, beta), xs, times, wb_opt);
    Mat next = linear + duhamel - corr;

    const Real res = sup_l2_difference(next.bottomRows(nl - z), out.field.bottomRows(nl - z),
                                       line.grid.spacing());
    out.field = std::move(next);
    out.residuals.push_back(res);
    out.iterations = it + 1;
    if (res < cfg.picard_tol) return out;
  }
  throw NonConvergence(
      "picard_solve: no contraction within max_iter; shrink window_T (local theory "
      "guarantees some T* > 0, not this one)");
}

BoundaryTrace restrict_trace(const BoundaryTrace& h, Real t0, Real t1, Index n) {
  Vec v(n);
  const Real dt = h.dt();
  for (Index k = 0; k < n; ++k) {
    const Real t = t0 + (t1 - t0) * Real(k) / Real(n - 1);
    const Real r = std::clamp(t / dt, 0.0, Real(h.size() - 1));
    const Index j = std::min<Index>(Index(r), h.size() - 2);
    const Real a = r - Real(j);
    v[k] = (1.0 - a) * h.samples[j] + a * h.samples[j + 1];
  }
  return BoundaryTrace(t1 - t0, std::move(v));
}

void append_diagnostics(SolutionRecord& rec, const SpaceTimeField& field, Real t_offset,
                        DomainKind domain, Real s, bool skip_first) {
  const Real dx = field.space.spacing();
  for (Index k = skip_first ? 1 : 0; k < field.n_time(); ++k) {
    ComplexSamples col(field.space, field.values.col(k));
    const Real l2 = l2_norm(col);
    const Vec ux = spatial_derivative(col.values, dx);
    const Real h1 = std::sqrt(l2 * l2 + trapezoid(ux.cwiseAbs2().eval(), dx));
    const Real hs = domain == DomainKind::interval
                        ? sobolev_norm_interval(col, SobolevIndex(s))
                        : sobolev_norm_line(col, SobolevIndex(s));
    const Index i = rec.times.size();
    rec.times.conservativeResize(i + 1);
    rec.l2_series.conservativeResize(i + 1);
    rec.h1_series.conservativeResize(i + 1);
    rec.hs_series.conservativeResize(i + 1);
    rec.times[i] = t_offset + field.times[k];
    rec.l2_series[i] = l2;
    rec.h1_series[i] = h1;
    rec.hs_series[i] = hs;
  }
}

SolutionRecord solve_windows(const IBVPSpec& spec, const SolverConfig& cfg, bool windowed) {
  const GateResult gr = gate(spec);
  if (!gr.ok) throw GateRefusal("gate refused: " + gr.reason);
  if (windowed && !gr.global_ok)
    throw GateRefusal("continue_globally outside the global regime: " + gr.global_reason);

  SolutionRecord rec;
  ComplexSamples current = spec.phi;
  Real t_done = 0.0;
  const Real floor_w = cfg.window_T / cfg.window_floor_factor;
  Real window = windowed ? std::min(cfg.window_T, spec.T) : spec.T;
  Mat all_values;
  RVec all_times;

  while (t_done < spec.T - 1e-12) {
    const Real w = std::min(window, spec.T - t_done);
    const Index nt = std::max<Index>(Index(std::ceil(Real(cfg.n_t) * w / cfg.window_T)) + 1, 33);
    try {
      PicardOutcome out;
      if (spec.domain == DomainKind::interval) {
        BoundaryPairSpec bc{restrict_trace(spec.bc->h1, t_done, t_done + w, nt),
                            restrict_trace(spec.bc->h2, t_done, t_done + w, nt)};
        out = picard_interval(current, bc, spec.p, spec.lambda, cfg, spec.s.s);
        SpaceTimeField f(current.grid, SpaceTimeField::uniform_times(w, nt), out.field);
        append_diagnostics(rec, f, t_done, spec.domain, spec.s.s, t_done > 0.0);
        const Index prev = all_times.size();
        const Index add = t_done > 0.0 ? nt - 1 : nt;
        all_values.conservativeResize(current.grid.n_points, prev + add);
        all_times.conservativeResize(prev + add);
        for (Index k = nt - add; k < nt; ++k) {
          all_values.col(prev + k - (nt - add)) = out.field.col(k);
          all_times[prev + k - (nt - add)] = t_done + f.times[k];
        }
        current = ComplexSamples(current.grid, out.field.col(nt - 1));
      } else {
        BoundaryTrace hw = restrict_trace(*spec.h, t_done, t_done + w, nt);
        out = picard_halfline(current, hw, spec.p, spec.lambda, cfg, spec.s.s);
        TruncatedLine line = TruncatedLine::symmetric(cfg.x_max, current.grid.n_points);
        const Index z = line.zero_index();
        Mat restricted = out.field.bottomRows(line.grid.n_points - z);
        SpaceTimeField f(line.half_grid(), SpaceTimeField::uniform_times(w, nt), restricted);
        append_diagnostics(rec, f, t_done, spec.domain, spec.s.s, t_done > 0.0);
        const Index prev = all_times.size();
        const Index add = t_done > 0.0 ? nt - 1 : nt;
        all_values.conservativeResize(line.half_grid().n_points, prev + add);
        all_times.conservativeResize(prev + add);
        for (Index k = nt - add; k < nt; ++k) {
          all_values.col(prev + k - (nt - add)) = restricted.col(k);
          all_times[prev + k - (nt - add)] = t_done + f.times[k];
        }
        current = ComplexSamples(line.half_grid(), restricted.col(nt - 1));
      }
      rec.iterations_per_window.push_back(out.iterations);
      for (Real r : out.residuals) rec.residual_history.push_back(r);
      t_done += w;
    } catch (const NonConvergence&) {
      if (!windowed || window <= floor_w * (1.0 + 1e-12)) throw;
      window *= 0.5;
      rec.warnings.push_back("window halved to " + fmt(window) + " after non-convergence");
    }
  }
  const Grid1D out_grid = spec.domain == DomainKind::interval
                              ? spec.phi.grid
                              : TruncatedLine::symmetric(cfg.x_max, spec.phi.grid.n_points).half_grid();
  rec.field = SpaceTimeField(out_grid, all_times, all_values);
  return rec;
}

}  // namespace

SolutionRecord picard_solve(const IBVPSpec& spec, const SolverConfig& cfg) {
  SolverConfig one = cfg;
  one.window_T = spec.T;  // single window spanning the whole horizon
  return solve_windows(spec, one, false);
}

SolutionRecord continue_globally(const IBVPSpec& spec, const SolverConfig& cfg) {
  return solve_windows(spec, cfg, true);
}

}  // namespace nlsbvp
