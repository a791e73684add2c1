#include "doctest.h"

#include <random>

#include "nlsbvp/filon.hpp"
#include "nlsbvp/spectral.hpp"
#include "oracles.hpp"

using namespace nlsbvp;

namespace {

ComplexSamples sample_unit(Index n, const std::function<Complex(Real)>& f) {
  Grid1D g = Grid1D::unit(n);
  Vec v(n);
  for (Index j = 0; j < n; ++j) v[j] = f(g.node(j));
  return ComplexSamples(g, std::move(v));
}

}  // namespace

TEST_CASE("oscillatory weights reduce to plain trapezoid moments at omega = 0") {
  auto [w0, w1] = oscillatory_weights(0.0, 0.25);
  CHECK(std::abs(w0 - Complex(0.125)) < 1e-15);
  CHECK(std::abs(w1 - Complex(0.125)) < 1e-15);
}

TEST_CASE("oscillatory integral matches the closed form for linear data") {
  // int_0^1 e^{i w t} t dt, integrand is exactly piecewise linear
  const Real w = 37.123;
  Vec f(9);
  for (Index j = 0; j < 9; ++j) f[j] = Real(j) / 8.0;
  const Complex z = kI * w;
  const Complex exact = (std::exp(z) * (z - 1.0) + 1.0) / (z * z);
  CHECK(std::abs(oscillatory_integral(f, 1.0 / 8.0, w) - exact) < 1e-13);
}

TEST_CASE("oscillatory cumulative agrees with partial evaluation") {
  std::mt19937_64 rng(7);
  std::normal_distribution<Real> gauss;
  Vec f(33);
  for (auto& v : f) v = Complex(gauss(rng), gauss(rng));
  const Real dt = 0.03;
  const Real w = 211.0;
  const Vec cum = oscillatory_cumulative(f, dt, w);
  for (Index k : {Index(1), Index(16), Index(32)})
    CHECK(std::abs(cum[k] - oscillatory_partial(f, dt, w, dt * Real(k))) < 1e-13);
}

TEST_CASE("dst picks out a pure mode") {
  auto f = sample_unit(65, [](Real x) { return std::sin(3.0 * kPi * x); });
  SineSpectrum s = dst_forward(f);
  for (Index n = 1; n <= s.n_modes(); ++n) {
    const Real expect = (n == 3) ? 1.0 : 0.0;
    CHECK(std::abs(s.coeffs[n - 1] - expect) < 1e-12);
  }
}

TEST_CASE("dst of zero spectrum synthesizes the zero function") {
  SineSpectrum s{Vec::Zero(10)};
  ComplexSamples f = dst_inverse(s, Grid1D::unit(33));
  CHECK(f.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dst coefficients of x(1-x) match the closed form") {
  // c_n = 8/(n pi)^3 for odd n, 0 for even n
  auto f = sample_unit(4097, [](Real x) { return x * (1.0 - x); });
  SineSpectrum s = dst_forward(f);
  for (Index n = 1; n <= 5; ++n) {
    const Real expect = (n % 2 == 1) ? 8.0 / std::pow(Real(n) * kPi, 3.0) : 0.0;
    CHECK(std::abs(s.coeffs[n - 1] - expect) < 1e-6);
  }
}

TEST_CASE("dst round trip is exact at interior nodes for band-limited data") {
  std::mt19937_64 rng(11);
  std::normal_distribution<Real> gauss;
  Grid1D g = Grid1D::unit(129);
  Vec coeffs(40);
  for (auto& c : coeffs) c = Complex(gauss(rng), gauss(rng));
  ComplexSamples f = dst_inverse(SineSpectrum{coeffs}, g);
  SineSpectrum back = dst_forward(f);
  CHECK((back.coeffs.head(40) - coeffs).cwiseAbs().maxCoeff() < 1e-10);
  ComplexSamples f2 = dst_inverse(back, g);
  CHECK((f2.values - f.values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("parseval holds on the sine basis") {
  std::mt19937_64 rng(3);
  std::normal_distribution<Real> gauss;
  Grid1D g = Grid1D::unit(257);
  Vec coeffs(100);
  for (auto& c : coeffs) c = Complex(gauss(rng), gauss(rng));
  ComplexSamples f = dst_inverse(SineSpectrum{coeffs}, g);
  const Real l2sq = trapezoid(f.values.cwiseAbs2(), g.spacing());
  const Real modal = 0.5 * dst_forward(f).coeffs.squaredNorm();
  CHECK(std::abs(l2sq - modal) < 1e-8 * l2sq);
}

TEST_CASE("odd extension") {
  SUBCASE("sine is already odd-periodic") {
    auto f = sample_unit(65, [](Real x) { return std::sin(kPi * x); });
    ComplexSamples g = odd_extension(f);
    CHECK(g.grid.origin == -1.0);
    CHECK(g.grid.n_points == 129);
    for (Index j = 0; j < g.grid.n_points; ++j)
      CHECK(std::abs(g.values[j] - std::sin(kPi * g.grid.node(j))) < 1e-12);
  }
  SUBCASE("zero stays zero") {
    ComplexSamples g = odd_extension(ComplexSamples::zero(Grid1D::unit(17)));
    CHECK(g.values.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("x(1-x) reflects pointwise") {
    auto f = sample_unit(65, [](Real x) { return x * (1.0 - x); });
    ComplexSamples g = odd_extension(f);
    const Index j = 32;  // x = -0.5
    CHECK(std::abs(g.grid.node(j) - (-0.5)) < 1e-14);
    CHECK(std::abs(g.values[j] - Complex(-0.25)) < 1e-14);
  }
  SUBCASE("restriction inverts extension on the nodes") {
    std::mt19937_64 rng(5);
    std::normal_distribution<Real> gauss;
    Grid1D g = Grid1D::unit(33);
    Vec v(33);
    for (auto& c : v) c = Complex(gauss(rng), gauss(rng));
    v[0] = 0.0;
    ComplexSamples f(g, v);
    ComplexSamples ext = odd_extension(f);
    for (Index j = 0; j < 33; ++j)
      CHECK(ext.values[32 + j] == f.values[j]);
  }
}

TEST_CASE("time sobolev norm") {
  SUBCASE("zero trace has zero norm") {
    CHECK(sobolev_norm_time(BoundaryTrace::zero(1.0, 64), SobolevIndex(0.7)) == 0.0);
  }
  SUBCASE("empty-ish trace is rejected") {
    CHECK_THROWS_AS(sobolev_norm_time(BoundaryTrace::zero(1.0, 4), SobolevIndex(0.0)),
                    InvalidInput);
  }
  SUBCASE("s = 0 reduces to the L2 norm of the zero extension") {
    auto h = BoundaryTrace::sample(1.0, 512, [](Real t) {
      return std::sin(2.0 * kPi * t) * t;
    });
    const Real fft_path = sobolev_norm_time(h, SobolevIndex(0.0));
    const Real direct = std::sqrt(h.dt() * h.samples.cwiseAbs2().sum());
    CHECK(std::abs(fft_path - direct) < 1e-8 * direct);
  }
  SUBCASE("s = 1/2 matches direct quadrature of the frequency integral") {
    const Real a = kPi * kPi;
    const Real T = 2.0 / kPi;
    auto h = BoundaryTrace::sample(T, 2048, [&](Real t) { return std::sin(a * t); });
    // transform of sin(a t) restricted to [0, T]
    auto h_hat = [&](Real xi) {
      const Complex em = (std::exp(kI * (a - xi) * T) - 1.0) / (kI * (a - xi));
      const Complex ep = (std::exp(-kI * (a + xi) * T) - 1.0) / (-kI * (a + xi));
      return (em - ep) / (2.0 * kI) / std::sqrt(2.0 * kPi);
    };
    const Real direct = oracle::sobolev_norm_direct(h_hat, 0.5);
    const Real fft_path = sobolev_norm_time(h, SobolevIndex(0.5));
    CHECK(std::abs(fft_path - direct) < 1e-3 * direct);
  }
  SUBCASE("monotone in s") {
    std::mt19937_64 rng(23);
    std::normal_distribution<Real> gauss;
    for (int trial = 0; trial < 8; ++trial) {
      Vec v(64);
      for (auto& c : v) c = Complex(gauss(rng), gauss(rng));
      BoundaryTrace h(0.7, v);
      Real prev = 0.0;
      for (Real s : {0.0, 0.2, 0.5, 0.9, 1.4}) {
        const Real cur = sobolev_norm_time(h, SobolevIndex(s));
        CHECK(cur >= prev * (1.0 - 1e-12));
        prev = cur;
      }
    }
  }
}

TEST_CASE("mixed norm") {
  Grid1D g = Grid1D::unit(101);
  RVec times = SpaceTimeField::uniform_times(1.0, 51);

  SUBCASE("constant field") {
    SpaceTimeField u(g, times, Mat::Ones(101, 51));
    CHECK(mixed_norm(u, 4.0, 4.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero field") {
    CHECK(mixed_norm(SpaceTimeField::zero(g, times), 2.0, 2.0) == 0.0);
  }
  SUBCASE("separable sine field") {
    Mat v(101, 51);
    for (Index j = 0; j < 101; ++j)
      v.row(j).setConstant(std::sin(kPi * g.node(j)));
    SpaceTimeField u(g, times, v);
    CHECK(mixed_norm(u, 2.0, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  }
  SUBCASE("q = r = 2 equals the flattened L2 norm") {
    std::mt19937_64 rng(9);
    std::normal_distribution<Real> gauss;
    Mat v(101, 51);
    for (Index j = 0; j < v.size(); ++j) v.data()[j] = Complex(gauss(rng), gauss(rng));
    SpaceTimeField u(g, times, v);
    // flattened trapezoid in both directions
    RVec colnorm(51);
    for (Index k = 0; k < 51; ++k)
      colnorm[k] = trapezoid(v.col(k).cwiseAbs2().eval(), g.spacing());
    const Real flat = std::sqrt(trapezoid(colnorm, times[1] - times[0]));
    CHECK(std::abs(mixed_norm(u, 2.0, 2.0) - flat) < 1e-10);
  }
  SUBCASE("sup interpretations") {
    Mat v = Mat::Ones(101, 51);
    v(50, 25) = 3.0;
    SpaceTimeField u(g, times, v);
    CHECK(mixed_norm(u, std::numeric_limits<Real>::infinity(),
                     std::numeric_limits<Real>::infinity()) == doctest::Approx(3.0));
  }
}

TEST_CASE("admissible pair validation") {
  CHECK_NOTHROW(AdmissiblePair(6.0, 6.0));
  CHECK_NOTHROW(AdmissiblePair(4.0, std::numeric_limits<Real>::infinity()));
  CHECK_THROWS_AS(AdmissiblePair(4.0, 4.0), InvalidInput);
}
