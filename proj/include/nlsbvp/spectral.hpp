#pragma once

#include "nlsbvp/types.hpp"

namespace nlsbvp {

/// Composite trapezoid of sampled values with uniform spacing.
Real trapezoid(const RVec& f, Real dx);
Real trapezoid_nonuniform(const RVec& f, const RVec& x);

/// L^2 norm of samples by composite trapezoid on their grid.
Real l2_norm(const ComplexSamples& f);

/// Sine coefficients c_n = 2 int_0^1 f(x) sin(n pi x) dx for n = 1..n_points-2.
/// Exact for band-limited f by discrete orthogonality; endpoint values are
/// ignored (the basis vanishes there).
SineSpectrum dst_forward(const ComplexSamples& f);

/// Evaluate sum_n c_n sin(n pi x) on a grid over [0,1].
ComplexSamples dst_inverse(const SineSpectrum& spec, const Grid1D& grid);

/// Odd reflection of samples on (0,L) to (-L,L); shared nodes keep their values.
ComplexSamples odd_extension(const ComplexSamples& f);

/// H^s norm of the extension of h by zero to the line:
/// ( int (1+xi^2)^s |h_hat(xi)|^2 dxi )^{1/2} with the unitary transform,
/// computed by zero-padded FFT.  For h with nonzero endpoint values and
/// s >= 1/2 the value is finite on the grid but grows without bound under
/// refinement; that is a property of the zero extension, not a bug.
Real sobolev_norm_time(const BoundaryTrace& h, SobolevIndex s, int pad_factor = 8);

/// ( int_0^T ( int |u|^r dx )^{q/r} dt )^{1/q} by trapezoid; q or r may be
/// infinite (sup semantics).
Real mixed_norm(const SpaceTimeField& u, Real q, Real r);

/// Spectral H^s proxy on (0,1): ( sum (1+(n pi)^2)^s |c_n|^2 / 2 )^{1/2}.
Real sobolev_norm_interval(const ComplexSamples& f, SobolevIndex s);

/// FFT-based H^s proxy for samples on a truncated line.
Real sobolev_norm_line(const ComplexSamples& f, SobolevIndex s);

}  // namespace nlsbvp
