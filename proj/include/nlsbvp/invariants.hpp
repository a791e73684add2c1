#pragma once

#include "nlsbvp/interval.hpp"
#include "nlsbvp/nonlinear.hpp"
#include "nlsbvp/types.hpp"

namespace nlsbvp {

// Discrete versions of the mass/energy balance laws, from the pointwise
// identities d/dt |u|^2 = -2 Im(u_x conj(u))_x and
// d/dt (|u_x|^2 - (2 lambda/p)|u|^p) = 2 Re(u_x conj(u_t))_x: on the half
// line the mass flux is +2 Im(u_x(0,t) conj(h)) and the energy flux is
// -2 Re(u_x(0,t) conj(h')).  Residuals compare each quantity's increment
// against its accumulated flux.

struct BalanceReport {
  RVec times;
  RVec I_series;        // mass
  RVec II_series;       // energy
  RVec flux_integral;   // accumulated boundary flux
  RVec residual;        // increment minus accumulated flux
};

/// Mass and energy series of a field: I(t) = int |u|^2, II(t) = int (|u_x|^2
/// - (2 lambda/p) |u|^p), u_x by the 4th-order stencils.
std::pair<RVec, RVec> mass_energy(const SpaceTimeField& u, Real p, Real lambda);

BalanceReport mass_balance_residual(const SpaceTimeField& u, const BoundaryTrace& h);
BalanceReport mass_balance_residual(const SpaceTimeField& u, const BoundaryPairSpec& bc);

BalanceReport energy_balance_residual(const SpaceTimeField& u, const BoundaryTrace& h,
                                      Real p, Real lambda);
BalanceReport energy_balance_residual(const SpaceTimeField& u, const BoundaryPairSpec& bc,
                                      Real p, Real lambda);

/// Residual of the multiplier identity on (0,1): both sides of
///   eta (|u_x|^2 + (2 lambda/p) |u|^p)_x =
///     -i d/dt(eta u conj(u_x)) + i (eta u conj(u_t))_x - (eta_x u conj(u_x))_x
///     + eta_xx u conj(u_x) + eta_x |u_x|^2 - lambda eta_x |u|^p
/// integrated over (0,1), reported per time node (time derivatives by centered
/// differences, so the first and last nodes are skipped).
struct MultiplierReport {
  RVec times;
  RVec lhs, rhs, residual;
  Real scale = 0.0;  // largest term magnitude, for relative comparisons
};
MultiplierReport multiplier_identity_residual(const SpaceTimeField& u,
                                              const ComplexSamples& eta, Real p, Real lambda);

}  // namespace nlsbvp
