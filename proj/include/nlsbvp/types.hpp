#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace nlsbvp {

using Real = double;
using Complex = std::complex<Real>;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Mat = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr Real kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CompatibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GateRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniform 1D grid, both endpoints included.
struct Grid1D {
  Real origin = 0.0;
  Real extent = 1.0;
  Index n_points = 2;

  Grid1D() = default;
  Grid1D(Real origin_, Real extent_, Index n) : origin(origin_), extent(extent_), n_points(n) {
    if (extent <= 0.0) throw InvalidInput("Grid1D: extent must be positive");
    if (n_points < 2) throw InvalidInput("Grid1D: need at least 2 points");
  }

  Real spacing() const { return extent / Real(n_points - 1); }
  Real node(Index j) const { return origin + spacing() * Real(j); }
  RVec nodes() const {
    return RVec::LinSpaced(n_points, origin, origin + extent);
  }
  static Grid1D unit(Index n) { return Grid1D(0.0, 1.0, n); }
  bool operator==(const Grid1D& o) const {
    return origin == o.origin && extent == o.extent && n_points == o.n_points;
  }
};

/// Complex-valued samples of a function on a Grid1D.
struct ComplexSamples {
  Grid1D grid;
  Vec values;

  ComplexSamples() = default;
  ComplexSamples(Grid1D g, Vec v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_points)
      throw InvalidInput("ComplexSamples: value count does not match grid");
  }
  static ComplexSamples zero(const Grid1D& g) {
    return ComplexSamples(g, Vec::Zero(g.n_points));
  }
};

/// Complex time series on a uniform grid over [0, duration]; the implied
/// object is always the extension of the series by zero to the whole line.
struct BoundaryTrace {
  Real duration = 1.0;
  Vec samples;

  BoundaryTrace() = default;
  BoundaryTrace(Real T, Vec s) : duration(T), samples(std::move(s)) {
    if (duration <= 0.0) throw InvalidInput("BoundaryTrace: duration must be positive");
    if (samples.size() < 2) throw InvalidInput("BoundaryTrace: need at least 2 samples");
    if (!samples.allFinite()) throw InvalidInput("BoundaryTrace: samples must be finite");
  }
  Index size() const { return samples.size(); }
  Real dt() const { return duration / Real(samples.size() - 1); }
  Real node(Index k) const { return dt() * Real(k); }
  static BoundaryTrace zero(Real T, Index n) {
    return BoundaryTrace(T, Vec::Zero(n));
  }
  template <typename F>
  static BoundaryTrace sample(Real T, Index n, F&& f) {
    Vec v(n);
    const Real h = T / Real(n - 1);
    for (Index k = 0; k < n; ++k) v[k] = Complex(f(h * Real(k)));
    return BoundaryTrace(T, std::move(v));
  }
};

/// Coefficients c_1..c_N of a function on (0,1) in the sin(n pi x) basis.
struct SineSpectrum {
  Vec coeffs;

  Index n_modes() const { return coeffs.size(); }
};

/// Spatial regularity index.
struct SobolevIndex {
  Real s = 0.0;

  SobolevIndex() = default;
  explicit SobolevIndex(Real s_) : s(s_) {
    if (s < 0.0) throw InvalidInput("SobolevIndex: s must be nonnegative");
  }
};

inline bool is_excluded_half_integer(Real s, Real tol = 1e-12) {
  const Real r = s - std::floor(s);
  return std::abs(r - 0.5) < tol;
}

/// Exponent pair (q, r) with 1/q + 1/(2r) = 1/4; r may be infinite.
struct AdmissiblePair {
  Real q = 4.0;
  Real r = std::numeric_limits<Real>::infinity();

  AdmissiblePair() = default;
  AdmissiblePair(Real q_, Real r_) : q(q_), r(r_) {
    if (q < 2.0 || r < 2.0) throw InvalidInput("AdmissiblePair: need q, r >= 2");
    const Real inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    if (std::abs(1.0 / q + 0.5 * inv_r - 0.25) > 1e-12)
      throw InvalidInput("AdmissiblePair: 1/q + 1/(2r) = 1/4 violated");
  }
};

/// Complex field u(x_j, t_k) sampled on a space grid and a list of times.
struct SpaceTimeField {
  Grid1D space;
  RVec times;    // nondecreasing, usually uniform from 0
  Mat values;    // n_x rows, n_t columns

  SpaceTimeField() = default;
  SpaceTimeField(Grid1D g, RVec t, Mat v) : space(g), times(std::move(t)), values(std::move(v)) {
    if (values.rows() != space.n_points || values.cols() != times.size())
      throw InvalidInput("SpaceTimeField: shape mismatch");
  }
  Index n_time() const { return times.size(); }
  static RVec uniform_times(Real T, Index n) { return RVec::LinSpaced(n, 0.0, T); }
  static SpaceTimeField zero(const Grid1D& g, const RVec& t) {
    return SpaceTimeField(g, t, Mat::Zero(g.n_points, t.size()));
  }
  Vec column(Index k) const { return values.col(k); }
};

}  // namespace nlsbvp
