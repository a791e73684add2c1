#include "nlsbvp/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nlsbvp/fft.hpp"
#include "nlsbvp/halfline.hpp"
#include "nlsbvp/interval.hpp"
#include "nlsbvp/nonlinear.hpp"
#include "nlsbvp/spectral.hpp"

namespace nlsbvp {

namespace {

std::mt19937_64 sample_rng(uint64_t seed, Index sample_index) {
  return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL * (sample_index + 1));
}

Real smooth_ramp(Real u) {
  // 0 at 0, 1 at 1, C1 transition
  u = std::clamp(u, 0.0, 1.0);
  const Real s = std::sin(0.5 * kPi * u);
  return s * s;
}

}  // namespace

BoundaryTrace random_boundary_trace(Real T, Index n, Index bandwidth_cap, Real amplitude,
                                    uint64_t seed, Index sample_index) {
  auto rng = sample_rng(seed, sample_index);
  std::normal_distribution<Real> gauss;
  std::vector<Complex> coeff(bandwidth_cap + 1);
  for (auto& c : coeff) c = Complex(gauss(rng), gauss(rng));
  Vec v(n);
  const Real ramp_width = 0.125;
  for (Index j = 0; j < n; ++j) {
    const Real t = T * Real(j) / Real(n - 1);
    Complex acc = 0.0;
    for (Index k = 1; k <= bandwidth_cap; ++k)
      acc += coeff[k] * std::polar(1.0, -2.0 * kPi * Real(k) * t / T);
    const Real taper = smooth_ramp(t / (ramp_width * T)) * smooth_ramp((T - t) / (ramp_width * T));
    v[j] = amplitude * taper * acc / std::sqrt(Real(bandwidth_cap));
  }
  return BoundaryTrace(T, std::move(v));
}

ComplexSamples random_line_packet(const Grid1D& grid, Real frequency_cap, Real amplitude,
                                  uint64_t seed, Index sample_index) {
  auto rng = sample_rng(seed, sample_index ^ 0x7f);
  std::normal_distribution<Real> gauss;
  std::uniform_real_distribution<Real> unif(-frequency_cap, frequency_cap);
  const Real width = 0.15 * grid.extent;
  const Real center = grid.origin + grid.extent * 0.5;
  Vec v = Vec::Zero(grid.n_points);
  for (int m = 0; m < 8; ++m) {
    const Complex a(gauss(rng), gauss(rng));
    const Real xi = unif(rng);
    for (Index j = 0; j < grid.n_points; ++j) {
      const Real x = grid.node(j);
      v[j] += a * std::polar(1.0, xi * x) *
              std::exp(-(x - center) * (x - center) / (width * width));
    }
  }
  return ComplexSamples(grid, amplitude * v / std::sqrt(8.0));
}

namespace {

struct RegistryEntry {
  ProbeOperator op;
  std::string lhs, rhs;
};

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {ProbeOperator::wh, "L4(Omega_T)", "H_alpha(0,T)"},
      {ProbeOperator::wh, "L2(Omega_T)", "H_alpha(0,T)"},
      {ProbeOperator::wh_derivative, "L4(Omega_T)", "H_alpha(0,T)"},
      {ProbeOperator::wb, "L2(R+x(0,T))", "H_alpha(0,T)"},
      {ProbeOperator::free_line_trace, "sup_x H1/4(0,T)", "L2(R)"},
      {ProbeOperator::free_line_strichartz, "L6(0,T;L6(R))", "L2(R)"},
  };
  return entries;
}

void validate_probe(const EstimateProbe& probe) {
  if (probe.ensemble_size < 10)
    throw InvalidInput("probe_ratio: ensemble_size must be at least 10");
  for (const auto& e : registry())
    if (e.op == probe.op && e.lhs == probe.lhs_norm && e.rhs == probe.rhs_norm) return;
  throw InvalidInput("probe_ratio: unknown operator/norm combination '" + probe.lhs_norm +
                     "' <- '" + probe.rhs_norm + "' (see probe_registry())");
}

}  // namespace

std::vector<std::string> probe_registry() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.lhs + " <- " + e.rhs);
  return names;
}

ProbeResult probe_ratio(const EstimateProbe& probe) {
  validate_probe(probe);
  ProbeResult res;
  res.ratios.resize(probe.ensemble_size);
  res.lhs.resize(probe.ensemble_size);
  res.rhs.resize(probe.ensemble_size);

  const Grid1D unit = Grid1D::unit(probe.n_x);
  const Index stride = (probe.n_t - 1) / 128;  // field times for space-time norms

  for (Index i = 0; i < probe.ensemble_size; ++i) {
    Real lhs = 0.0, rhs = 0.0;
    switch (probe.op) {
      case ProbeOperator::wh:
      case ProbeOperator::wh_derivative: {
        BoundaryTrace h = random_boundary_trace(probe.T, probe.n_t, probe.bandwidth_cap,
                                                probe.amplitude, probe.seed, i);
        rhs = sobolev_norm_time(h, SobolevIndex(probe.alpha));
        SpaceTimeField u = wh_boundary_field(h, false, unit, std::max<Index>(stride, 1));
        if (probe.op == ProbeOperator::wh_derivative) {
          Mat d(u.space.n_points, u.n_time());
          for (Index k = 0; k < u.n_time(); ++k)
            d.col(k) = spatial_derivative(u.values.col(k), u.space.spacing());
          u.values = std::move(d);
        }
        lhs = mixed_norm(u, probe.lhs_norm == "L4(Omega_T)" ? 4.0 : 2.0,
                         probe.lhs_norm == "L4(Omega_T)" ? 4.0 : 2.0);
        break;
      }
      case ProbeOperator::wb: {
        BoundaryTrace h = random_boundary_trace(probe.T, probe.n_t, probe.bandwidth_cap,
                                                probe.amplitude, probe.seed, i);
        rhs = sobolev_norm_time(h, SobolevIndex(probe.alpha));
        const RVec beta = geometric_beta_grid(kPi / (8.0 * probe.T), kPi * Real(probe.n_t - 1) / probe.T,
                                              probe.n_beta);
        LaplaceBoundarySymbol sym = laplace_symbol(h, beta);
        Grid1D half(0.0, probe.x_max, probe.n_x);
        RVec ts = SpaceTimeField::uniform_times(probe.T, 129);
        WbOptions wopt;
        wopt.check_bandwidth = false;
        Mat field = wb_field(sym, half.nodes(), ts, wopt);
        lhs = mixed_norm(SpaceTimeField(half, ts, field), 2.0, 2.0);
        break;
      }
      case ProbeOperator::free_line_trace:
      case ProbeOperator::free_line_strichartz: {
        TruncatedLine line = TruncatedLine::symmetric(probe.x_max, probe.n_x);
        const Real cap = 2.0 * kPi * Real(probe.bandwidth_cap) / probe.T;
        ComplexSamples psi =
            random_line_packet(line.grid, std::min(cap, 0.5 * kPi / line.grid.spacing()),
                               probe.amplitude, probe.seed, i);
        rhs = l2_norm(psi);
        const Index nt = 129;
        RVec ts = SpaceTimeField::uniform_times(probe.T, nt);
        Mat field(line.grid.n_points, nt);
        for (Index k = 0; k < nt; ++k)
          field.col(k) = free_propagator_line(psi, ts[k]).values;
        if (probe.op == ProbeOperator::free_line_strichartz) {
          lhs = mixed_norm(SpaceTimeField(line.grid, ts, field), 6.0, 6.0);
        } else {
          Real worst = 0.0;
          for (Index j = 0; j < line.grid.n_points; j += probe.trace_stride) {
            BoundaryTrace row(probe.T, field.row(j).transpose());
            worst = std::max(worst, sobolev_norm_time(row, SobolevIndex(0.25)));
          }
          lhs = worst;
        }
        break;
      }
    }
    if (rhs == 0.0)
      throw InvalidInput("probe_ratio: invalid ensemble (zero data norm)");
    res.lhs[i] = lhs;
    res.rhs[i] = rhs;
    res.ratios[i] = lhs / rhs;
  }
  res.max_ratio = res.ratios.maxCoeff();
  RVec sorted = res.ratios;
  std::sort(sorted.begin(), sorted.end());
  res.median_ratio = sorted[sorted.size() / 2];
  return res;
}

BoundaryTrace counterexample_trace(Real beta, int k, Index n) {
  const Real T = 2.0 / kPi;
  Vec v = Vec::Zero(n);
  for (Index j = 0; j < n; ++j) {
    const Real t = T * Real(j) / Real(n - 1);
    for (int m = 1; m <= k; ++m)
      v[j] += std::pow(Real(m), -beta) *
              std::polar(1.0, -kPi * kPi * Real(m * m + 1) * t);
  }
  return BoundaryTrace(T, std::move(v));
}

CounterexampleResult counterexample_norm_series(const CounterexampleSpec& spec) {
  const Real a = spec.alpha, b = spec.beta;
  if (a < 0.0 || a > 0.5) throw InvalidInput("counterexample: need 0 <= alpha <= 1/2");
  if (!(b > 0.5 && b < 1.5)) throw InvalidInput("counterexample: need 1/2 < beta < 3/2");
  if (a < 0.5 && !(b > 2.0 * a + 0.5))
    throw InvalidInput("counterexample: need beta > 2 alpha + 1/2");
  if (spec.k_list.empty()) throw InvalidInput("counterexample: empty k list");

  CounterexampleResult out;
  out.k = spec.k_list;
  const Index nk = Index(spec.k_list.size());
  out.R.resize(nk);
  out.lower_bound.resize(nk);
  out.u_norm2.resize(nk);
  out.h_norm2.resize(nk);

  for (Index idx = 0; idx < nk; ++idx) {
    const int k = spec.k_list[idx];
    // spectral lines at j = m^2 + 1; none of these are perfect squares
    std::vector<long> lines(k);
    std::vector<Real> amps(k);
    for (int m = 1; m <= k; ++m) {
      const long j = long(m) * m + 1;
      const long r = std::lround(std::sqrt(Real(j)));
      if (r * r == j) throw std::logic_error("counterexample: line landed on a square");
      lines[m - 1] = j;
      amps[m - 1] = std::pow(Real(m), -b);
    }

    const long n_trunc = std::max<long>(8192, 64L * k * k);
    Real s1_total = 0.0;  // sum_j a_j^2 sum_n n^2/(n^2-j)^2
    for (int m = 1; m <= k; ++m) {
      Real s1 = 0.0;
      for (long n = 1; n <= n_trunc; ++n) {
        const Real d = Real(n) * Real(n) - Real(lines[m - 1]);
        s1 += Real(n) * Real(n) / (d * d);
      }
      s1 *= 2.0;          // n and -n
      s1 += 2.0 / Real(n_trunc);  // certified tail bound, added as a bracket
      s1_total += amps[m - 1] * amps[m - 1] * s1;
    }
    Real s2_total = 0.0;  // sum_n n^2 (sum_j a_j/(n^2-j))^2
    for (long n = 1; n <= n_trunc; ++n) {
      Real inner = 0.0;
      for (int m = 1; m <= k; ++m)
        inner += amps[m - 1] / (Real(n) * Real(n) - Real(lines[m - 1]));
      s2_total += 2.0 * Real(n) * Real(n) * inner * inner;
    }
    const Real time_measure = 2.0 / kPi;
    out.u_norm2[idx] = time_measure / (kPi * kPi) * (s1_total + s2_total);

    Real hn = 0.0, lb = 0.0;
    for (int m = 1; m <= k; ++m) {
      const Real j = Real(lines[m - 1]);
      hn += std::pow(1.0 + kPi * kPi * kPi * kPi * j * j, a) * amps[m - 1] * amps[m - 1];
      lb += Real(m) * Real(m) * kPi * kPi * std::pow(Real(m), -2.0 * b);
    }
    out.h_norm2[idx] = hn;
    out.lower_bound[idx] = lb;
    out.R[idx] = out.u_norm2[idx] / hn;
  }
  return out;
}

Real CutoffPsi::operator()(Real x) const {
  const Real ax = std::abs(x);
  if (ax <= 0.5) return 1.0;
  if (ax >= 1.0) return 0.0;
  auto g = [](Real u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  return g(1.0 - ax) / (g(1.0 - ax) + g(ax - 0.5));
}

LemmaA1Result lemma_a1_check(LemmaFFamily family, const CutoffPsi& psi, Index n_terms,
                             Index n_quad, Real mu_max) {
  std::function<Real(Real)> f;
  switch (family) {
    case LemmaFFamily::exp_decay:
      f = [](Real mu) { return std::exp(-mu); };
      break;
    case LemmaFFamily::gaussian:
      f = [](Real mu) { return std::exp(-(mu - 3.0) * (mu - 3.0) / 8.0); };
      break;
    case LemmaFFamily::band_concentrated:
      f = [](Real mu) {
        Real acc = 0.0;
        for (int n = 1; n <= 12; ++n)
          acc += std::exp(-(mu - Real(n)) * (mu - Real(n)) / 0.09) / Real(n);
        return acc;
      };
      break;
  }
  return lemma_a1_check(f, psi, n_terms, n_quad, mu_max);
}

LemmaA1Result lemma_a1_check(const std::function<Real(Real)>& f, const CutoffPsi& psi,
                             Index n_terms, Index n_quad, Real mu_max) {
  const Real dmu = mu_max / Real(n_quad - 1);
  RVec fv(n_quad), mu(n_quad);
  for (Index j = 0; j < n_quad; ++j) {
    mu[j] = dmu * Real(j);
    fv[j] = f(mu[j]);
  }
  {
    Real edge = 0.0, peak = 0.0;
    for (Index j = 0; j < n_quad; ++j) {
      peak = std::max(peak, std::abs(fv[j]));
      if (mu[j] > 0.9 * mu_max) edge = std::max(edge, std::abs(fv[j]));
    }
    if (peak > 0.0 && edge > 1e-8 * peak)
      throw InvalidInput("lemma_a1_check: f does not decay within mu_max");
  }

  LemmaA1Result out;
  for (Index n = 1; n <= n_terms; ++n) {
    Real inner = 0.0;
    for (Index j = 0; j < n_quad; ++j) {
      const Real w = (j == 0 || j == n_quad - 1) ? 0.5 : 1.0;
      const Real cut = 1.0 - psi(Real(n) * Real(n) - mu[j] * mu[j]);
      if (cut == 0.0) continue;
      inner += w * fv[j] * cut / (mu[j] - Real(n));
    }
    inner *= dmu;
    out.lhs += inner * inner;
  }
  RVec weighted = (mu.array() + 1.0) * fv.array().square();
  out.rhs = trapezoid(weighted, dmu);
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

}  // namespace nlsbvp
