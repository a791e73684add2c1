#pragma once

#include <optional>

#include "nlsbvp/types.hpp"

namespace nlsbvp {

// Linear solution operators on the half line.  The boundary-driven solution
// with zero initial state is
//   u(x,t) = (1/pi) int_0^inf e^{-i b^2 t + i b x} b Lh(-i b^2) db
//          + (1/pi) int_0^inf e^{ i b^2 t - b|x|} b Lh( i b^2) db
// where Lh is the Laplace transform of the (zero-extended) trace.  Both
// integrals are evaluated in the variable mu = b^2, where the time factor
// e^{-+ i mu t} has linear phase and integrates exactly against a
// piecewise-linear interpolant of the rest.

/// Computational truncation of the line: symmetric grid [-x_max, x_max]
/// with an odd point count so that x = 0 is a node.
struct TruncatedLine {
  Grid1D grid;
  Real x_max = 0.0;

  static TruncatedLine symmetric(Real x_max, Index n_half) {
    TruncatedLine line;
    line.x_max = x_max;
    line.grid = Grid1D(-x_max, 2.0 * x_max, 2 * n_half - 1);
    return line;
  }
  Index zero_index() const { return (grid.n_points - 1) / 2; }
  Grid1D half_grid() const { return Grid1D(0.0, x_max, zero_index() + 1); }
};

/// Laplace transform values of a boundary trace along both imaginary branches:
/// minus_branch[j] = Lh(-i b_j^2), plus_branch[j] = Lh(+i b_j^2).
struct LaplaceBoundarySymbol {
  RVec beta_grid;
  Vec minus_branch, plus_branch;
};

RVec geometric_beta_grid(Real beta_min, Real beta_max, Index n);

LaplaceBoundarySymbol laplace_symbol(const BoundaryTrace& h, const RVec& beta_grid);

struct WbOptions {
  bool taper = true;            // smooth roll-off over the top half-decade
  Real bandwidth_tol = 1e-2;    // relative |symbol| level allowed up there
  bool check_bandwidth = true;
};

Complex wb1(const LaplaceBoundarySymbol& sym, Real x, Real t, const WbOptions& opt = {});
Complex wb2(const LaplaceBoundarySymbol& sym, Real x, Real t, const WbOptions& opt = {});

/// wb1 + wb2 on a grid of points and times (matrixized quadrature).
Mat wb_field(const LaplaceBoundarySymbol& sym, const RVec& xs, const RVec& ts,
             const WbOptions& opt = {});

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz), evaluated by a midpoint
/// trapezoid sum over the Gaussian with an exact pole-crossing correction.
/// `step` is the quadrature spacing; halving it squares the (already tiny)
/// error term.
Complex faddeeva_w(Complex z, Real step = 0.5);

struct KernelOptions {
  Real faddeeva_step = 0.5;
};

/// K_t(x,y) = (1/pi) int_0^inf e^{i b^2 t - b|x| - i y b} db, t != 0,
/// evaluated on the rotated contour b = e^{i pi/4} s.
Complex kernel_Kt(Real x, Real y, Real t, const KernelOptions& opt = {});

/// Free propagator on the truncated line: multiply the spectrum by e^{-i xi^2 t}.
/// Sets *truncation_warning when more than 1e-6 of the mass sits within five
/// cells of either boundary.
ComplexSamples free_propagator_line(const ComplexSamples& psi, Real t,
                                    bool* truncation_warning = nullptr);

/// Reflection extension of samples on [0, X] to the symmetric truncated line:
/// phi*(-x) = -2 phi(x) + 3 phi(x/3), matching value and slope at the origin,
/// windowed to zero beyond -x_max/2.  Restriction to x >= 0 reproduces phi
/// exactly.
ComplexSamples extend(const ComplexSamples& phi, SobolevIndex s, const TruncatedLine& line);

/// Odd extension onto the truncated line (for data with phi(0) = 0).
ComplexSamples extend_odd(const ComplexSamples& phi, const TruncatedLine& line);

enum class ExtensionKind { reflection, odd };

struct HalflineSolveOptions {
  Index n_beta = 2048;
  Real beta_min = -1.0;   // default: pi / (8 T)
  Real beta_max = -1.0;   // default: pi / dt of the trace
  WbOptions wb;
  Real compat_tol = 1e-6;
  bool enforce_compatibility = false;  // callers enable it when s > 1/2
  SobolevIndex extension_regularity{2.0};
  ExtensionKind extension = ExtensionKind::reflection;
};

/// Composed linear solver on the half line.  phi lives on [0, x_max]; the
/// returned field is the restriction to x >= 0 of the line representation.
SpaceTimeField solve_linear_halfline(const ComplexSamples& phi, const BoundaryTrace& h,
                                     const std::optional<SpaceTimeField>& f, const RVec& times,
                                     const HalflineSolveOptions& opt = {});

}  // namespace nlsbvp
