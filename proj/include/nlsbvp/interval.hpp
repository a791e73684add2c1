#pragma once

#include <optional>

#include "nlsbvp/types.hpp"

namespace nlsbvp {

// Linear solution operators on (0,1) in the sine basis:
//   free group      u = sum_n c_n e^{-i(n pi)^2 t} sin(n pi x)
//   forced term     -i int_0^t W0(t-tau) f(tau) dtau           (per-mode quadrature)
//   boundary term   sum_n 2 i n pi e^{-i(n pi)^2 t} int_0^t e^{i(n pi)^2 tau} h(tau) dtau sin(n pi x)
// The boundary series is summed with its leading 1/n part peeled off and
// resummed in closed form as h(t)(1-x), so smooth boundary data converge
// uniformly up to the wall instead of ringing.

SineSpectrum w0_group(const SineSpectrum& spec, Real t);
ComplexSamples w0_group(const ComplexSamples& phi, Real t);

/// -i int_0^t W0(t - tau) f(., tau) dtau evaluated at a single time.
ComplexSamples w0_duhamel(const SpaceTimeField& f, Real t);

/// Same integral evaluated at every time node of f.
SpaceTimeField w0_duhamel_field(const SpaceTimeField& f);

struct BoundarySeries {
  ComplexSamples samples;
  bool tail_warning = false;
  Real tail_ratio = 0.0;
};

struct BoundarySeriesOptions {
  Index n_modes = -1;       // default: grid.n_points - 2
  Real tail_tol = 1e-10;
  Real start_tol = 1e-8;    // |h(0)| above this (relative) flags the result
};

/// Solution of the interval problem with zero initial data and boundary data
/// h at x=0 (or at x=1 when reflect is set), evaluated at time t.
BoundarySeries wh_boundary(const BoundaryTrace& h, Real t, bool reflect,
                           const Grid1D& grid, const BoundarySeriesOptions& opt = {});

/// Field version sampled at every stride-th node of h's time grid.
SpaceTimeField wh_boundary_field(const BoundaryTrace& h, bool reflect, const Grid1D& grid,
                                 Index stride = 1, const BoundarySeriesOptions& opt = {},
                                 bool* tail_warning = nullptr);

struct BoundaryPairSpec {
  BoundaryTrace h1, h2;
};

struct IntervalSolveOptions {
  BoundarySeriesOptions series;
  Real compat_tol = 1e-6;
  bool enforce_compatibility = true;
};

/// Composed linear solver on (0,1): initial data phi, boundary pair bc,
/// optional forcing f, output at the requested times (all inside bc's span).
SpaceTimeField solve_linear_interval(const ComplexSamples& phi, const BoundaryPairSpec& bc,
                                     const std::optional<SpaceTimeField>& f, const RVec& times,
                                     const IntervalSolveOptions& opt = {});

}  // namespace nlsbvp
