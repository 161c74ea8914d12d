#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cct/geometry.hpp"
#include "cct/special.hpp"

using namespace cct;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("RngStream: identical ids reproduce, distinct ids decorrelate") {
  RngStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  bool same_ab = true, same_ac = true, same_ad = true;
  for (int i = 0; i < 64; ++i) {
    const double x = a.uniform();
    same_ab &= (x == b.uniform());
    same_ac &= (x == c.uniform());
    same_ad &= (x == d.uniform());
  }
  CHECK(same_ab);
  CHECK_FALSE(same_ac);
  CHECK_FALSE(same_ad);
}

TEST_CASE("RngStream: gaussian and gamma sample moments") {
  RngStream rng(1, 0);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, g1 = 0.0;
  const double shape = 2.5;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian();
    s1 += x;
    s2 += x * x;
    g1 += rng.gamma(shape);
  }
  CHECK(std::abs(s1 / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(g1 / n == doctest::Approx(shape).epsilon(0.01));
}

TEST_CASE("mc_mean is a pure function of (seed, samples, partitions)") {
  auto f = [](RngStream& rng) { return Complex(rng.gaussian(), 0.0); };
  McOptions opts;
  opts.samples = 20000;
  opts.seed = 9;
  const McEstimate a = mc_mean(f, opts);
  const McEstimate b = mc_mean(f, opts);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);
  opts.threads = 1;  // threading must not change the reduction
  const McEstimate c = mc_mean(f, opts);
  CHECK(a.value == c.value);
}

TEST_CASE("mc_mean counts skipped samples and averages the rest") {
  auto f = [](RngStream& rng) -> Complex {
    if (rng.uniform() < 0.25) throw NotPositiveDefinite("reject");
    return 1.0;
  };
  McOptions opts;
  opts.samples = 40000;
  const McEstimate e = mc_mean(f, opts);
  CHECK(e.value.real() == 1.0);
  CHECK(e.skipped_fraction() == doctest::Approx(0.25).epsilon(0.05));
  CHECK(e.samples == 40000);
}

TEST_CASE("sample_stiefel produces orthonormal, Haar-symmetric frames") {
  RngStream rng(5, 0);
  double mean_sq = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) {
    const StiefelFrame v = sample_stiefel(4, 2, rng);
    const Matrix gram = v.columns().transpose() * v.columns();
    CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    mean_sq += v.columns()(0, 0) * v.columns()(0, 0);
  }
  // Column entries have mean square 1/n under the invariant distribution.
  CHECK(mean_sq / reps == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("StiefelFrame validates orthonormality") {
  Matrix bad(3, 2);
  bad << 1, 1, 0, 0, 0, 0;
  CHECK_THROWS_AS(StiefelFrame{bad}, RankDeficient);
}

TEST_CASE("integrate_stiefel of 1 is the manifold mass, exactly") {
  McOptions opts;
  opts.samples = 1000;
  for (auto [n, m] : {std::pair{3, 1}, {4, 2}, {5, 3}}) {
    const McEstimate e = integrate_stiefel(
        [](const StiefelFrame&) { return Complex(1.0); }, n, m, opts);
    CHECK(std::abs(e.value.real() - stiefel_volume(n, m)) <
          1e-10 * stiefel_volume(n, m));
    CHECK(e.stderr_ < 1e-10);
  }
}

TEST_CASE("integrate_matrix_gaussian: mass and a second moment") {
  McOptions opts;
  opts.samples = 200000;
  const int n = 3, m = 2;
  const McEstimate mass = integrate_matrix_gaussian(
      [](const Matrix& x) { return Complex(std::exp(-0.5 * x.squaredNorm())); },
      n, m, opts);
  const double want = std::pow(2.0 * kPi, 0.5 * n * m);
  CHECK(std::abs(mass.value.real() - want) < 1e-9 * want);

  const McEstimate mom = integrate_matrix_gaussian(
      [](const Matrix& x) {
        return Complex(x(0, 0) * x(0, 0) * std::exp(-0.5 * x.squaredNorm()));
      },
      n, m, opts);
  CHECK(std::abs(mom.value.real() - want) <
        3.0 * mom.stderr_ + 1e-9 * want);
}

TEST_CASE("integrate_polar_power recovers a scaled Gaussian mass") {
  McOptions opts;
  opts.samples = 200000;
  const int n = 4, m = 2;
  const double s = 1.3;
  const McEstimate e = integrate_polar_power(
      [s](const Matrix& x) {
        return Complex(std::exp(-0.5 * s * x.squaredNorm()));
      },
      n, m, MultiIndex::constant(Complex(n, 0.0), m), 0.45 * s, opts);
  const double want = std::pow(2.0 * kPi / s, 0.5 * n * m);
  CHECK(std::abs(e.value.real() - want) < 3.0 * e.stderr_ + 1e-9 * want);
  CHECK(e.stderr_ < 0.05 * want);
}

TEST_CASE("polar and triangular coordinates reconstruct x") {
  RngStream rng(21, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix x = sample_gaussian_matrix(5, 3, rng);
    const auto [v, r] = polar_decompose(x);
    CHECK((v.columns() * sqrt_posdef(r) - x).norm() < 1e-10);
    CHECK((r.entries() - x.transpose() * x).norm() < 1e-10);
    const auto [u, t] = triangular_decompose(x);
    CHECK((u.columns() * t - x).norm() < 1e-10);
    CHECK(t.isUpperTriangular(1e-14));
    for (int j = 0; j < 3; ++j) CHECK(t(j, j) > 0.0);
  }
}

TEST_CASE("decompositions flag rank-deficient input") {
  Matrix x(3, 2);
  x << 1, 2, 1, 2, 1, 2;  // second column is twice the first
  CHECK_THROWS_AS(polar_decompose(x), RankDeficient);
  // The triangular route either rejects outright or surfaces the
  // deficiency as a vanishing pivot.
  try {
    const auto [u, t] = triangular_decompose(x);
    CHECK(t(1, 1) <= 1e-12);
  } catch (const RankDeficient&) {
    CHECK(true);
  }
}

TEST_CASE("sqrt_posdef squares back") {
  RngStream rng(23, 0);
  const Matrix x = sample_gaussian_matrix(6, 3, rng);
  const PosDefMatrix r((x.transpose() * x).eval());
  const Matrix s = sqrt_posdef(r);
  CHECK((s * s - r.entries()).norm() < 1e-10);
  CHECK((s - s.transpose()).norm() < 1e-12);
}

TEST_CASE("cone quadrature: Laplace integral at m = 1 is Gamma(lambda/2)") {
  // Higher powers spread the integrand in log coordinates; use a finer
  // grid than the default so both refinement passes are converged.
  ConeQuadratureSpec spec;
  spec.points = 180;
  for (double lam : {1.0, 2.6, 5.0}) {
    const MultiIndex idx{Complex(lam, 0.0)};
    const Complex got = integrate_cone(
        [&](const PosDefMatrix& r) {
          return composite_power(r, idx) *
                 std::exp(-r.entries().trace());
        },
        1, spec);
    CHECK(std::abs(got.real() - std::tgamma(lam / 2.0)) <
          1e-6 * std::tgamma(lam / 2.0));
  }
}

TEST_CASE("cone quadrature: Laplace integral at m = 2 matches gamma_cone") {
  const MultiIndex idx{Complex(1.4, 0.0), Complex(2.7, 0.0)};
  const Complex got = integrate_cone(
      [&](const PosDefMatrix& r) {
        return composite_power(r, idx) * std::exp(-r.entries().trace());
      },
      2);
  const TaggedValue want = gamma_cone(idx);
  REQUIRE(want.is_finite());
  CHECK(std::abs(got - want.value) < 1e-6 * std::abs(want.value));
}

TEST_CASE("weighted triangular quadrature at m = 1") {
  // int_0^inf e^{-t^2/2} t^{n-1} dt = 2^{(n-2)/2} Gamma(n/2).
  ConeQuadratureSpec spec;
  spec.points = 180;
  for (int n : {2, 3, 5}) {
    const Complex got = integrate_triangular_weighted(
        [](const Matrix& t) {
          return Complex(std::exp(-0.5 * t(0, 0) * t(0, 0)));
        },
        1, n, spec);
    const double want = std::pow(2.0, 0.5 * (n - 2)) * std::tgamma(0.5 * n);
    CHECK(std::abs(got.real() - want) < 1e-6 * want);
  }
}
