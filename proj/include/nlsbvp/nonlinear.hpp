#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlsbvp/halfline.hpp"
#include "nlsbvp/interval.hpp"
#include "nlsbvp/types.hpp"

namespace nlsbvp {

// Fixed-point solvers for i u_t + u_xx + lambda |u|^{p-2} u = 0 with Dirichlet
// data, on (0,1) and on the half line.  Each solve iterates
//   u <- LinearPart + i lambda int_0^t W(t - tau) |u|^{p-2} u dtau   (+ trace
// correction on the half line), starting from the full linear solution.

enum class DomainKind { half_line, interval };

struct IBVPSpec {
  DomainKind domain = DomainKind::interval;
  SobolevIndex s{0.0};
  Real p = 3.0;
  Real lambda = -1.0;
  ComplexSamples phi;
  std::optional<BoundaryTrace> h;        // half line
  std::optional<BoundaryPairSpec> bc;    // interval
  Real T = 0.1;
};

struct SolverConfig {
  Index n_x = 257;            // interval nodes, or half-line nodes on [0, x_max]
  Index n_t = 256;            // time nodes per unit window
  Real picard_tol = 1e-8;
  Index picard_max_iter = 50;
  Real window_T = 0.1;
  Index n_modes = -1;         // interval series truncation; default n_x - 2
  Real x_max = 16.0;          // half-line truncation
  Index n_beta = 1024;
  Real beta_min = -1.0;
  Real beta_max = -1.0;
  Real window_floor_factor = 16.0;
  ExtensionKind extension = ExtensionKind::reflection;
};

/// lambda |u|^{p-2} u, with the value 0 at u = 0.
ComplexSamples nonlinearity(const ComplexSamples& u, Real p, Real lambda);
Mat nonlinearity(const Mat& u, Real p, Real lambda);

struct GateResult {
  bool ok = false;
  bool global_ok = false;
  std::string reason;         // violated inequality, verbatim, when !ok
  std::string global_reason;  // why the global regime does not apply
};

/// Accept/refuse the (domain, s, p, lambda) combination for a local solve and
/// report whether the global regime also applies.
GateResult gate(const IBVPSpec& spec);

struct CompatReport {
  int order = 0;
  std::vector<std::string> labels;
  std::vector<Real> residuals;
  Real tolerance = 1e-8;
  bool pass = true;
};

CompatReport check_compatibility(const IBVPSpec& spec, int order, Real tol = 1e-8);

struct SolutionRecord {
  SpaceTimeField field;                  // on (0,1), or restricted to [0, x_max]
  std::vector<int> iterations_per_window;
  std::vector<Real> residual_history;
  RVec times;
  RVec l2_series, h1_series, hs_series;
  std::vector<std::string> warnings;
};

SolutionRecord picard_solve(const IBVPSpec& spec, const SolverConfig& cfg);

/// Windowed continuation: consecutive windows seeded by the previous endpoint,
/// window halved (down to window_T / window_floor_factor) on non-convergence.
SolutionRecord continue_globally(const IBVPSpec& spec, const SolverConfig& cfg);

/// Derivative by 4th-order stencils, one-sided in the two cells at each end.
Vec spatial_derivative(const Vec& u, Real dx);

}  // namespace nlsbvp
