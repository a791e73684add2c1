#pragma once

#include "nlsbvp/types.hpp"

namespace nlsbvp {

// Quadrature that integrates e^{i omega tau} exactly against piecewise-linear
// interpolants of sampled data.  The weights stay accurate when the
// exponential oscillates many times within a single step, which uniform rules
// cannot handle.

/// phi1(z) = (e^z - 1)/z, series branch near 0.
Complex expm1_over(Complex z);

/// psi2(z) = (e^z (z - 1) + 1)/z^2 = int_0^1 u e^{z u} du, series branch near 0.
Complex expm1_ramp(Complex z);

/// Weights (w0, w1) such that  int_0^dt e^{i omega tau} (linear through f0, f1) dtau
/// equals w0 f0 + w1 f1.
struct OscillatoryWeights {
  Complex w0, w1;
};
OscillatoryWeights oscillatory_weights(Real omega, Real dt);

/// int_0^T e^{i omega tau} f(tau) dtau with f piecewise linear through the samples.
Complex oscillatory_integral(const Vec& f, Real dt, Real omega);

/// Values of int_0^{t_k} e^{i omega tau} f(tau) dtau at every node t_k.
Vec oscillatory_cumulative(const Vec& f, Real dt, Real omega);

/// int_0^t for t anywhere inside the sampled range (partial last interval allowed).
Complex oscillatory_partial(const Vec& f, Real dt, Real omega, Real t);

}  // namespace nlsbvp
