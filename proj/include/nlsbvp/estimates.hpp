#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlsbvp/types.hpp"

namespace nlsbvp {

// Operator-norm ratio probes: draw random band-limited data, apply one of the
// linear solution operators, and report the distribution of
// ||output||_lhs / ||data||_rhs over the ensemble.  A bounded, concentration-
// free distribution is numerical evidence for the corresponding estimate at
// the probed regularity; growth under a rising bandwidth cap is evidence
// against it.

enum class ProbeOperator {
  wh,                   // interval boundary operator
  wh_derivative,        // d/dx of the interval boundary operator
  wb,                   // half-line boundary operator
  free_line_trace,      // whole-line group, temporal trace norm
  free_line_strichartz  // whole-line group, space-time norm
};

struct EstimateProbe {
  ProbeOperator op = ProbeOperator::wh;
  std::string lhs_norm = "L4(Omega_T)";
  std::string rhs_norm = "H_alpha(0,T)";
  Real alpha = 0.5;
  Index ensemble_size = 50;
  uint64_t seed = 1;
  Index bandwidth_cap = 16;   // highest excited mode of the random data
  Real amplitude = 1.0;
  Real T = 1.0;
  // discretization knobs
  Index n_t = 1025;
  Index n_x = 257;
  Real x_max = 24.0;
  Index n_beta = 768;
  Index trace_stride = 4;     // x-subsampling for sup_x trace norms
};

struct ProbeResult {
  RVec ratios, lhs, rhs;
  Real max_ratio = 0.0;
  Real median_ratio = 0.0;
};

/// Names of the registered (operator, lhs, rhs) combinations.
std::vector<std::string> probe_registry();

ProbeResult probe_ratio(const EstimateProbe& probe);

/// Random boundary trace: complex Gaussian Fourier coefficients up to the
/// bandwidth cap, smoothly tapered at both ends of [0, T].
BoundaryTrace random_boundary_trace(Real T, Index n, Index bandwidth_cap, Real amplitude,
                                    uint64_t seed, Index sample_index);

/// Random band-limited wave packet on a truncated line grid.
ComplexSamples random_line_packet(const Grid1D& grid, Real frequency_cap, Real amplitude,
                                  uint64_t seed, Index sample_index);

// Sharpness family for the interval boundary operator: boundary data with
// spectrum at the near-resonant frequencies pi^2 (m^2 + 1),
//   h_k(t) = sum_{m=1..k} m^{-beta} e^{-i pi^2 (m^2+1) t},
// whose output-to-input norm ratio diverges as k grows whenever the data norm
// is weaker than H^{1/2}(0, 2/pi).

struct CounterexampleSpec {
  Real alpha = 0.3;                 // data-norm regularity
  Real beta = 1.2;                  // spectral decay of the family
  std::vector<int> k_list = {4, 8, 16, 32, 64};
};

struct CounterexampleResult {
  std::vector<int> k;
  RVec R;             // ||u_h||^2_{L2((0,1)x(0,2/pi))} / ||h||^2_{H_alpha}
  RVec lower_bound;   // sum_{m<=k} m^2 pi^2 m^{-2 beta}
  RVec u_norm2, h_norm2;
};

CounterexampleResult counterexample_norm_series(const CounterexampleSpec& spec);

/// Samples of the family on a uniform time grid over [0, 2/pi].
BoundaryTrace counterexample_trace(Real beta, int k, Index n);

/// Smooth even cutoff: 1 on [-1/2, 1/2], 0 outside (-1, 1), strictly
/// decreasing in between.
struct CutoffPsi {
  Real operator()(Real x) const;
};

enum class LemmaFFamily { exp_decay, gaussian, band_concentrated };

struct LemmaA1Result {
  Real lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

/// Evaluates both sides of the weighted resolvent-sum bound
///   sum_n | int f(mu) (1 - psi(n^2 - mu^2)) / (mu - n) dmu |^2
///     <= C int (mu + 1) |f|^2 dmu
/// with the n-sum truncated at n_terms and trapezoid quadrature on
/// [0, mu_max] with n_quad nodes.
LemmaA1Result lemma_a1_check(LemmaFFamily family, const CutoffPsi& psi, Index n_terms,
                             Index n_quad, Real mu_max);
LemmaA1Result lemma_a1_check(const std::function<Real(Real)>& f, const CutoffPsi& psi,
                             Index n_terms, Index n_quad, Real mu_max);

}  // namespace nlsbvp
