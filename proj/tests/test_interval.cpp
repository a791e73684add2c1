#include "doctest.h"

#include <random>

#include "nlsbvp/filon.hpp"
#include "nlsbvp/interval.hpp"
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

SineSpectrum random_spectrum(Index n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> gauss;
  Vec c(n);
  for (auto& v : c) v = Complex(gauss(rng), gauss(rng));
  return SineSpectrum{std::move(c)};
}

}  // namespace

TEST_CASE("free group is the identity at t = 0") {
  auto phi = sample_unit(65, [](Real x) { return std::sin(2.0 * kPi * x) + 0.3 * std::sin(5.0 * kPi * x); });
  ComplexSamples u = w0_group(phi, 0.0);
  CHECK((u.values - phi.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("free group rotates an eigenmode") {
  auto phi = sample_unit(129, [](Real x) { return std::sin(kPi * x); });
  for (Real t : {0.1, 0.7, 2.3}) {
    ComplexSamples u = w0_group(phi, t);
    const Complex phase = std::polar(1.0, -kPi * kPi * t);
    Real err = 0.0;
    for (Index j = 0; j < 129; ++j)
      err = std::max(err, std::abs(u.values[j] - phase * std::sin(kPi * u.grid.node(j))));
    CHECK(err <= 1e-10);
  }
}

TEST_CASE("free group two-mode phases match direct exponentials") {
  auto phi = sample_unit(129, [](Real x) { return std::sin(kPi * x) + std::sin(2.0 * kPi * x); });
  const Real t = 1.0 / (kPi * kPi);
  SineSpectrum s = dst_forward(w0_group(phi, t));
  CHECK(std::abs(s.coeffs[0] - Complex(std::polar(1.0, -1.0))) < 1e-10);
  CHECK(std::abs(s.coeffs[1] - Complex(std::polar(1.0, -4.0))) < 1e-10);
  // spelled out: phases are e^{-i} and e^{-4i}
  CHECK(std::abs(s.coeffs[1] - std::exp(Complex(0.0, -4.0))) < 1e-10);
}

TEST_CASE("free group preserves the L2 norm") {
  SineSpectrum s = random_spectrum(50, 17);
  Grid1D g = Grid1D::unit(129);
  const Real before = l2_norm(dst_inverse(s, g));
  for (Real t : {0.05, 1.0, 13.7}) {
    const Real after = l2_norm(dst_inverse(w0_group(s, t), g));
    CHECK(std::abs(after - before) <= 1e-10 * before);
  }
}

TEST_CASE("free group composes") {
  SineSpectrum s = random_spectrum(64, 99);
  const SineSpectrum a = w0_group(s, 0.4 + 0.9);
  const SineSpectrum b = w0_group(w0_group(s, 0.9), 0.4);
  CHECK((a.coeffs - b.coeffs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("forced integral of zero forcing vanishes") {
  Grid1D g = Grid1D::unit(33);
  RVec times = SpaceTimeField::uniform_times(1.0, 17);
  ComplexSamples u = w0_duhamel(SpaceTimeField::zero(g, times), 0.8);
  CHECK(u.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forced integral of a static eigenmode matches the antiderivative") {
  Grid1D g = Grid1D::unit(129);
  RVec times = SpaceTimeField::uniform_times(0.5, 257);
  Mat f(129, 257);
  for (Index j = 0; j < 129; ++j) f.row(j).setConstant(std::sin(kPi * g.node(j)));
  SpaceTimeField field(g, times, f);
  for (Real t : {0.125, 0.5}) {
    ComplexSamples u = w0_duhamel(field, t);
    // -i sin(pi x) (1 - e^{-i pi^2 t}) / (i pi^2)
    const Complex expect_amp = -kI * (1.0 - std::polar(1.0, -kPi * kPi * t)) / (kI * kPi * kPi);
    Real err = 0.0;
    for (Index j = 0; j < 129; ++j)
      err = std::max(err, std::abs(u.values[j] - expect_amp * std::sin(kPi * g.node(j))));
    CHECK(err < 1e-6);
  }
}

TEST_CASE("forced integral is linear") {
  std::mt19937_64 rng(31);
  std::normal_distribution<Real> gauss;
  Grid1D g = Grid1D::unit(65);
  RVec times = SpaceTimeField::uniform_times(0.3, 65);
  Mat a(65, 65), b(65, 65);
  for (Index j = 0; j < a.size(); ++j) {
    a.data()[j] = Complex(gauss(rng), gauss(rng));
    b.data()[j] = Complex(gauss(rng), gauss(rng));
  }
  SpaceTimeField fa(g, times, a), fb(g, times, b), fab(g, times, a + b);
  const Real t = 0.3;
  Vec lhs = w0_duhamel(fab, t).values;
  Vec rhs = w0_duhamel(fa, t).values + w0_duhamel(fb, t).values;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("forced integral rejects times outside the grid") {
  Grid1D g = Grid1D::unit(17);
  RVec times = SpaceTimeField::uniform_times(0.2, 9);
  CHECK_THROWS_AS(w0_duhamel(SpaceTimeField::zero(g, times), 0.5), InvalidInput);
}

TEST_CASE("boundary series of zero data is zero") {
  BoundarySeries out = wh_boundary(BoundaryTrace::zero(1.0, 65), 0.7, false, Grid1D::unit(65));
  CHECK(out.samples.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK_FALSE(out.tail_warning);
}

TEST_CASE("boundary mode integrals match the closed form for oscillating data") {
  // h(t) = e^{-i pi^2 k t}: the mode-n integral is (e^{i(n^2-k) pi^2 t} - 1)/(i (n^2-k) pi^2)
  const int k = 2;
  const Real T = 0.25;
  auto h = BoundaryTrace::sample(T, 1 << 16, [&](Real t) {
    return std::polar(1.0, -kPi * kPi * Real(k) * t);
  });
  for (int n = 1; n <= 8; ++n) {
    const Real w = Real(n) * kPi * Real(n) * kPi;
    const Complex got = oscillatory_partial(h.samples, h.dt(), w, T);
    const Complex alpha = kI * (Real(n * n) - Real(k)) * kPi * kPi;
    const Complex expect = (std::exp(alpha * T) - 1.0) / alpha;
    CHECK(std::abs(got - expect) < 1e-8);
  }
}

TEST_CASE("boundary mode integral in the resonant case grows linearly") {
  const int k = 4;  // resonates with n = 2
  const Real T = 0.25;
  auto h = BoundaryTrace::sample(T, 1 << 16, [&](Real t) {
    return std::polar(1.0, -kPi * kPi * Real(k) * t);
  });
  const Real w = 4.0 * kPi * kPi;
  CHECK(std::abs(oscillatory_partial(h.samples, h.dt(), w, T) - Complex(T)) < 1e-8);
}

TEST_CASE("boundary series reflection identity") {
  auto h = BoundaryTrace::sample(0.4, 513, [](Real t) { return t * std::exp(-t); });
  Grid1D g = Grid1D::unit(65);
  BoundarySeries plain = wh_boundary(h, 0.4, false, g);
  BoundarySeries refl = wh_boundary(h, 0.4, true, g);
  for (Index j = 0; j < g.n_points; ++j)
    CHECK(std::abs(refl.samples.values[j] - plain.samples.values[g.n_points - 1 - j]) < 1e-12);
}

TEST_CASE("boundary series vanishes at t = 0") {
  auto h = BoundaryTrace::sample(0.5, 257, [](Real t) { return std::sin(4.0 * t); });
  BoundarySeries out = wh_boundary(h, 0.0, false, Grid1D::unit(129));
  CHECK(l2_norm(out.samples) <= 1e-10 * h.samples.cwiseAbs().maxCoeff());
}

TEST_CASE("boundary trace recovery near the wall against a Crank-Nicolson oracle") {
  // smooth h with h(0) = 0; compare the whole reconstructed field
  const Real T = 0.5;
  auto hfun = [](Real t) { return Complex(1.0 - std::exp(-3.0 * t)); };

  auto run_level = [&](Index nx, Index nt) {
    Grid1D g = Grid1D::unit(nx);
    auto h = BoundaryTrace::sample(T, nt, hfun);
    SpaceTimeField u = wh_boundary_field(h, false, g, 1);
    // trace error at the first interior node
    Real err = 0.0;
    for (Index k = 0; k < u.n_time(); ++k)
      err = std::max(err, std::abs(u.values(1, k) - hfun(u.times[k])));
    return err;
  };

  const Real hmax = 1.0 - std::exp(-3.0 * T);
  const Real e0 = run_level(129, 1025);
  const Real e1 = run_level(257, 2049);
  const Real e2 = run_level(513, 4097);
  CHECK(e1 / hmax < 2e-2);  // default resolution, relative
  CHECK(e1 < e0);
  CHECK(e2 < e1);
  const Real order = std::log2(e0 / e2) / 2.0;
  CHECK(order >= 0.95);  // first order up to measurement jitter

  // independent check of interior values against Crank-Nicolson
  Grid1D g = Grid1D::unit(257);
  auto h = BoundaryTrace::sample(T, 2049, hfun);
  SpaceTimeField u = wh_boundary_field(h, false, g, 8);
  oracle::CrankNicolson cn{g, T / 8192.0, hfun, [](Real) { return Complex(0.0); }, nullptr};
  Mat ref = cn.run(Vec::Zero(257), 8192);
  Real err = 0.0;
  for (Index k = 0; k < u.n_time(); ++k) {
    const Index ck = k * (8192 / (u.n_time() - 1));
    err = std::max(err, (u.values.col(k) - ref.col(ck)).cwiseAbs().maxCoeff());
  }
  CHECK(err < 2e-3);
}

TEST_CASE("composed linear solve") {
  const Real T = 0.5;
  Grid1D g = Grid1D::unit(129);
  RVec times = SpaceTimeField::uniform_times(T, 129);

  SUBCASE("homogeneous boundary reduces to the free group") {
    auto phi = sample_unit(129, [](Real x) { return std::sin(kPi * x); });
    BoundaryPairSpec bc{BoundaryTrace::zero(T, 129), BoundaryTrace::zero(T, 129)};
    SpaceTimeField u = solve_linear_interval(phi, bc, std::nullopt, times);
    Real err = 0.0;
    for (Index k = 0; k < times.size(); ++k)
      err = std::max(err, (u.values.col(k) - w0_group(phi, times[k]).values).cwiseAbs().maxCoeff());
    CHECK(err < 1e-12);
  }

  SUBCASE("incompatible corners are rejected with the offending corner named") {
    auto phi = sample_unit(129, [](Real) { return Complex(1.0); });
    BoundaryPairSpec bc{BoundaryTrace::zero(T, 129), BoundaryTrace::zero(T, 129)};
    try {
      solve_linear_interval(phi, bc, std::nullopt, times);
      FAIL("expected CompatibilityError");
    } catch (const CompatibilityError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("left corner") != std::string::npos);
      CHECK(msg.find("right corner") != std::string::npos);
    }
  }

  SUBCASE("pure boundary drive matches Crank-Nicolson") {
    auto hfun = [](Real t) { return Complex(1.0 - std::exp(-t)); };
    auto phi = ComplexSamples::zero(g);
    RVec tcoarse = SpaceTimeField::uniform_times(T, 65);
    BoundaryPairSpec bc{BoundaryTrace::sample(T, 1025, hfun), BoundaryTrace::zero(T, 1025)};
    SpaceTimeField u = solve_linear_interval(phi, bc, std::nullopt, tcoarse);
    oracle::CrankNicolson cn{g, T / 8192.0, hfun, [](Real) { return Complex(0.0); }, nullptr};
    Mat ref = cn.run(Vec::Zero(129), 8192);
    Real err = 0.0;
    for (Index k = 0; k < tcoarse.size(); ++k) {
      const Index ck = k * (8192 / 64);
      err = std::max(err, (u.values.col(k) - ref.col(ck)).cwiseAbs().maxCoeff());
    }
    CHECK(err < 1e-3);
  }

  SUBCASE("superposition of the three data channels") {
    std::mt19937_64 rng(55);
    std::normal_distribution<Real> gauss;
    Vec c(30);
    for (auto& v : c) v = Complex(gauss(rng), gauss(rng));
    ComplexSamples phi = dst_inverse(SineSpectrum{c}, g);
    auto h1 = BoundaryTrace::sample(T, 257, [](Real t) { return Complex(std::sin(3.0 * t), t); });
    auto h2 = BoundaryTrace::sample(T, 257, [](Real t) { return Complex(1.0 - std::cos(2.0 * t)); });
    RVec tt = SpaceTimeField::uniform_times(T, 65);

    SpaceTimeField all = solve_linear_interval(phi, {h1, h2}, std::nullopt, tt);
    SpaceTimeField a = solve_linear_interval(phi, {BoundaryTrace::zero(T, 257), BoundaryTrace::zero(T, 257)}, std::nullopt, tt);
    SpaceTimeField b = solve_linear_interval(ComplexSamples::zero(g), {h1, BoundaryTrace::zero(T, 257)}, std::nullopt, tt);
    SpaceTimeField d = solve_linear_interval(ComplexSamples::zero(g), {BoundaryTrace::zero(T, 257), h2}, std::nullopt, tt);
    const Real err = (all.values - a.values - b.values - d.values).cwiseAbs().maxCoeff();
    CHECK(err < 1e-10);
  }
}

TEST_CASE("composed solve boundary consistency improves with order at least one") {
  const Real T = 0.4;
  auto hfun = [](Real t) { return Complex(std::sin(2.0 * t)); };
  auto run_level = [&](Index nx, Index nt) {
    Grid1D g = Grid1D::unit(nx);
    BoundaryPairSpec bc{BoundaryTrace::sample(T, nt, hfun), BoundaryTrace::zero(T, nt)};
    RVec tt = SpaceTimeField::uniform_times(T, 33);
    SpaceTimeField u = solve_linear_interval(ComplexSamples::zero(g), bc, std::nullopt, tt);
    Real err = 0.0;
    for (Index k = 0; k < tt.size(); ++k) {
      err = std::max(err, std::abs(u.values(1, k) - hfun(tt[k])));
      err = std::max(err, std::abs(u.values(nx - 2, k)));
    }
    return err;
  };
  const Real e0 = run_level(65, 513);
  const Real e2 = run_level(257, 2049);
  CHECK(std::log2(e0 / e2) / 2.0 >= 0.95);
}
