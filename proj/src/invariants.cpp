#include "nlsbvp/invariants.hpp"

#include <cmath>
#include <vector>

#include "nlsbvp/spectral.hpp"

namespace nlsbvp {

namespace {

RVec cumulative_trapezoid(const RVec& f, const RVec& t) {
  RVec out(f.size());
  out[0] = 0.0;
  for (Index k = 1; k < f.size(); ++k)
    out[k] = out[k - 1] + 0.5 * (t[k] - t[k - 1]) * (f[k] + f[k - 1]);
  return out;
}

Vec trace_derivative(const Vec& h, Real dt) {
  const Index n = h.size();
  Vec d(n);
  d[0] = (-3.0 * h[0] + 4.0 * h[1] - h[2]) / (2.0 * dt);
  for (Index k = 1; k + 1 < n; ++k) d[k] = (h[k + 1] - h[k - 1]) / (2.0 * dt);
  d[n - 1] = (3.0 * h[n - 1] - 4.0 * h[n - 2] + h[n - 3]) / (2.0 * dt);
  return d;
}

struct WallDerivatives {
  Vec left, right;  // u_x at the two ends, per time node
};

WallDerivatives wall_derivatives(const SpaceTimeField& u) {
  WallDerivatives w;
  const Index nt = u.n_time();
  w.left.resize(nt);
  w.right.resize(nt);
  const Real dx = u.space.spacing();
  for (Index k = 0; k < nt; ++k) {
    const Vec d = spatial_derivative(u.values.col(k), dx);
    w.left[k] = d[0];
    w.right[k] = d[u.space.n_points - 1];
  }
  return w;
}

BalanceReport assemble(const SpaceTimeField& u, const RVec& series, const RVec& flux) {
  BalanceReport rep;
  rep.times = u.times;
  rep.flux_integral = cumulative_trapezoid(flux, u.times);
  rep.residual = series.array() - series[0] - rep.flux_integral.array();
  return rep;
}

}  // namespace

std::pair<RVec, RVec> mass_energy(const SpaceTimeField& u, Real p, Real lambda) {
  const Index nt = u.n_time();
  RVec I(nt), II(nt);
  const Real dx = u.space.spacing();
  for (Index k = 0; k < nt; ++k) {
    const Vec col = u.values.col(k);
    I[k] = trapezoid(col.cwiseAbs2(), dx);
    const Vec ux = spatial_derivative(col, dx);
    RVec density = ux.cwiseAbs2();
    density -= (2.0 * lambda / p) * col.cwiseAbs().array().pow(p).matrix();
    II[k] = trapezoid(density, dx);
  }
  return {I, II};
}

BalanceReport mass_balance_residual(const SpaceTimeField& u, const BoundaryTrace& h) {
  auto [I, II] = mass_energy(u, 3.0, 0.0);
  const WallDerivatives w = wall_derivatives(u);
  // sign fixed by the pointwise law d/dt |u|^2 = -2 Im(u_x conj(u))_x
  RVec flux(u.n_time());
  for (Index k = 0; k < u.n_time(); ++k)
    flux[k] = 2.0 * std::imag(w.left[k] * std::conj(h.samples[k]));
  BalanceReport rep = assemble(u, I, flux);
  rep.I_series = I;
  rep.II_series = II;
  return rep;
}

BalanceReport mass_balance_residual(const SpaceTimeField& u, const BoundaryPairSpec& bc) {
  auto [I, II] = mass_energy(u, 3.0, 0.0);
  const WallDerivatives w = wall_derivatives(u);
  RVec flux(u.n_time());
  for (Index k = 0; k < u.n_time(); ++k)
    flux[k] = -2.0 * std::imag(w.right[k] * std::conj(bc.h2.samples[k]) -
                               w.left[k] * std::conj(bc.h1.samples[k]));
  BalanceReport rep = assemble(u, I, flux);
  rep.I_series = I;
  rep.II_series = II;
  return rep;
}

BalanceReport energy_balance_residual(const SpaceTimeField& u, const BoundaryTrace& h,
                                      Real p, Real lambda) {
  auto [I, II] = mass_energy(u, p, lambda);
  const WallDerivatives w = wall_derivatives(u);
  const Vec hp = trace_derivative(h.samples, h.dt());
  RVec flux(u.n_time());
  for (Index k = 0; k < u.n_time(); ++k)
    flux[k] = -2.0 * std::real(w.left[k] * std::conj(hp[k]));
  BalanceReport rep = assemble(u, II, flux);
  rep.I_series = I;
  rep.II_series = II;
  return rep;
}

BalanceReport energy_balance_residual(const SpaceTimeField& u, const BoundaryPairSpec& bc,
                                      Real p, Real lambda) {
  auto [I, II] = mass_energy(u, p, lambda);
  const WallDerivatives w = wall_derivatives(u);
  const Vec h1p = trace_derivative(bc.h1.samples, bc.h1.dt());
  const Vec h2p = trace_derivative(bc.h2.samples, bc.h2.dt());
  RVec flux(u.n_time());
  for (Index k = 0; k < u.n_time(); ++k)
    flux[k] = 2.0 * std::real(w.right[k] * std::conj(h2p[k]) - w.left[k] * std::conj(h1p[k]));
  BalanceReport rep = assemble(u, II, flux);
  rep.I_series = I;
  rep.II_series = II;
  return rep;
}

namespace {

Complex ctrapezoid(const Vec& f, Real dx) {
  const Index n = f.size();
  return dx * (f.segment(1, n - 2).sum() + 0.5 * (f[0] + f[n - 1]));
}

}  // namespace

MultiplierReport multiplier_identity_residual(const SpaceTimeField& u,
                                              const ComplexSamples& eta, Real p, Real lambda) {
  const Index nt = u.n_time();
  const Index nx = u.space.n_points;
  if (nt < 3) throw InvalidInput("multiplier_identity_residual: need at least 3 time nodes");
  const Real dx = u.space.spacing();
  const Real dt = u.times[1] - u.times[0];
  const Vec eta_x = spatial_derivative(eta.values, dx);
  const Vec eta_xx = spatial_derivative(eta_x, dx);

  std::vector<Vec> ux(nt);
  Vec pair_integral(nt);  // int eta u conj(u_x) dx
  for (Index k = 0; k < nt; ++k) {
    ux[k] = spatial_derivative(u.values.col(k), dx);
    Vec integrand(nx);
    for (Index j = 0; j < nx; ++j)
      integrand[j] = eta.values[j] * u.values(j, k) * std::conj(ux[k][j]);
    pair_integral[k] = ctrapezoid(integrand, dx);
  }

  MultiplierReport rep;
  rep.times.resize(nt - 2);
  rep.lhs.resize(nt - 2);
  rep.rhs.resize(nt - 2);
  rep.residual.resize(nt - 2);
  rep.scale = 0.0;

  for (Index k = 1; k + 1 < nt; ++k) {
    const Vec col = u.values.col(k);
    const Vec ut = (u.values.col(k + 1) - u.values.col(k - 1)) / (2.0 * dt);

    // lhs: int eta d/dx(|u_x|^2 + (2 lambda/p)|u|^p) dx
    Vec gdens(nx);
    for (Index j = 0; j < nx; ++j)
      gdens[j] = std::norm(ux[k][j]) + (2.0 * lambda / p) * std::pow(std::abs(col[j]), p);
    const Vec gx = spatial_derivative(gdens, dx);
    Vec lhs_int(nx);
    for (Index j = 0; j < nx; ++j) lhs_int[j] = eta.values[j] * gx[j];
    const Complex lhs = ctrapezoid(lhs_int, dx);

    const Complex ddt_pair = (pair_integral[k + 1] - pair_integral[k - 1]) / (2.0 * dt);
    const Complex wall_ut = eta.values[nx - 1] * col[nx - 1] * std::conj(ut[nx - 1]) -
                            eta.values[0] * col[0] * std::conj(ut[0]);
    const Complex wall_ux = eta_x[nx - 1] * col[nx - 1] * std::conj(ux[k][nx - 1]) -
                            eta_x[0] * col[0] * std::conj(ux[k][0]);
    Vec bulk(nx);
    for (Index j = 0; j < nx; ++j)
      bulk[j] = eta_xx[j] * col[j] * std::conj(ux[k][j]) +
                eta_x[j] * (std::norm(ux[k][j]) - lambda * std::pow(std::abs(col[j]), p));
    const Complex rhs = -kI * ddt_pair + kI * wall_ut - wall_ux + ctrapezoid(bulk, dx);

    rep.times[k - 1] = u.times[k];
    rep.lhs[k - 1] = std::abs(lhs);
    rep.rhs[k - 1] = std::abs(rhs);
    rep.residual[k - 1] = std::abs(lhs - rhs);
    rep.scale = std::max({rep.scale, std::abs(lhs), std::abs(rhs), std::abs(ddt_pair),
                          std::abs(wall_ut), std::abs(wall_ux)});
  }
  return rep;
}

}  // namespace nlsbvp
