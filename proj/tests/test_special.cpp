#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cct/special.hpp"

using namespace cct;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent log-gamma oracle: push Re z up by the recurrence, then a
// Stirling series with Bernoulli-number coefficients. Written from the
// asymptotic series directly, sharing no code with the library routine.
Complex lgamma_stirling(Complex z) {
  Complex shift = 0.0;
  while (z.real() < 12.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  static const double b[] = {1.0 / 12.0,     -1.0 / 360.0,  1.0 / 1260.0,
                             -1.0 / 1680.0,  1.0 / 1188.0,  -691.0 / 360360.0};
  Complex s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
  Complex zp = z;
  for (double coeff : b) {
    s += coeff / zp;
    zp *= z * z;
  }
  return s + shift;
}

// Scalar multiplier in gamma form, evaluated straight through the
// standard library for real arguments away from poles (m = 1 oracle).
double mu_scalar(double lambda, int k, int n) {
  auto g = [](double x) { return std::tgamma(x); };
  return g((lambda + 1.0) / 2.0) * g((k - lambda) / 2.0) /
         (g(-lambda / 2.0) * g((lambda + k + n) / 2.0));
}

}  // namespace

TEST_CASE("log_gamma_complex vs an independent Stirling oracle") {
  const Complex pts[] = {{0.5, 0.0},  {1.0, 0.0},   {3.7, 0.0},
                         {0.5, 2.0},  {1.3, -4.2},  {6.0, 1.0},
                         {0.1, 0.3},  {2.5, -0.7},  {-1.5, 2.0},
                         {-3.2, -1.1}};
  for (const Complex& z : pts) {
    const Complex a = log_gamma_complex(z);
    const Complex b = lgamma_stirling(z);
    // Compare Gamma values to dodge branch-offset ambiguity in the logs.
    CHECK(std::abs(std::exp(a - b) - 1.0) < 1e-11);
  }
}

TEST_CASE("log_gamma_complex agrees with std::lgamma on the positive axis") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 20.5, 101.25}) {
    CHECK(log_gamma_complex(Complex(x, 0.0)).real() ==
          doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    CHECK(std::abs(log_gamma_complex(Complex(x, 0.0)).imag()) < 1e-13);
  }
}

TEST_CASE("reflection identity Gamma(z) Gamma(1-z) sin(pi z) = pi") {
  const Complex pts[] = {{0.3, 0.0}, {0.5, 1.5}, {-0.7, 0.4}, {0.9, -2.0}};
  for (const Complex& z : pts) {
    const Complex prod = gamma_complex(z) * gamma_complex(1.0 - z) *
                         std::sin(kPi * z);
    CHECK(std::abs(prod - kPi) < 1e-10 * std::abs(prod));
  }
}

TEST_CASE("gamma poles: throws at non-positive integers, tolerance honored") {
  CHECK_THROWS_AS(log_gamma_complex(Complex(0.0, 0.0)),
                  PoleAtNonPositiveInteger);
  CHECK_THROWS_AS(log_gamma_complex(Complex(-3.0, 0.0)),
                  PoleAtNonPositiveInteger);
  int q = -1;
  CHECK(is_gamma_pole(Complex(-5.0 + 1e-14, 0.0), &q));
  CHECK(q == 5);
  CHECK_FALSE(is_gamma_pole(Complex(-5.0 + 1e-9, 0.0), &q));
  CHECK_FALSE(is_gamma_pole(Complex(0.5, 0.0), &q));
}

TEST_CASE("gamma_cone at m = 1 is Gamma(lambda / 2)") {
  for (double lam : {0.7, 1.0, 3.3, 8.0}) {
    const TaggedValue v = gamma_cone(MultiIndex{Complex(lam, 0.0)});
    REQUIRE(v.is_finite());
    CHECK(v.value.real() == doctest::Approx(std::tgamma(lam / 2.0)));
    CHECK(std::abs(v.value.imag()) < 1e-12);
  }
}

TEST_CASE("gamma_cone tags pole orders") {
  // m = 2, lambda = (0, 1): both scalar factors sit at Gamma(0).
  const TaggedValue v =
      gamma_cone(MultiIndex{Complex(0.0, 0.0), Complex(1.0, 0.0)});
  CHECK(v.is_pole());
  CHECK(v.order == 2);
  // Single singular factor.
  const TaggedValue w =
      gamma_cone(MultiIndex{Complex(0.0, 0.0), Complex(2.0, 0.0)});
  CHECK(w.is_pole());
  CHECK(w.order == 1);
}

TEST_CASE("constant index reduces the cone gamma to a Siegel gamma") {
  for (int m = 1; m <= 4; ++m) {
    const Complex lam(2.6, 0.9);
    const TaggedValue a = gamma_cone(MultiIndex::constant(lam, m));
    const TaggedValue b = siegel_gamma(lam / 2.0, m);
    REQUIRE(a.is_finite());
    REQUIRE(b.is_finite());
    CHECK(std::abs(a.value - b.value) < 1e-12 * std::abs(a.value));
  }
}

TEST_CASE("siegel_gamma small cases in closed form") {
  const Complex lam(1.7, 0.0);
  const TaggedValue g1 = siegel_gamma(lam, 1);
  CHECK(std::abs(g1.value - gamma_complex(lam)) <
        1e-13 * std::abs(g1.value));
  const TaggedValue g2 = siegel_gamma(lam, 2);
  const Complex want = std::sqrt(kPi) * gamma_complex(lam) *
                       gamma_complex(lam - 0.5);
  CHECK(std::abs(g2.value - want) < 1e-12 * std::abs(want));
}

TEST_CASE("Stiefel volumes: known values and dual formulas") {
  CHECK(stiefel_volume(1, 1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(stiefel_volume(2, 1) == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(stiefel_volume(3, 1) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  CHECK(stiefel_volume(3, 2) ==
        doctest::Approx(8.0 * kPi * kPi).epsilon(1e-13));
  for (int n = 1; n <= 10; ++n)
    for (int m = 1; m <= n; ++m)
      CHECK(stiefel_volume(n, m) ==
            doctest::Approx(stiefel_volume_sphere_product(n, m))
                .epsilon(1e-12));
}

TEST_CASE("multiplier at m = 1 matches the scalar gamma-ratio oracle") {
  for (double lam : {0.5, 1.0, 2.5}) {
    for (int k : {0, 2, 4, 6}) {
      const TaggedValue v = multiplier_mu(MultiIndex{Complex(lam, 0.0)}, k, 3);
      REQUIRE(v.is_finite());
      CHECK(v.value.real() == doctest::Approx(mu_scalar(lam, k, 3)));
      CHECK(std::abs(v.value.imag()) < 1e-12);
    }
  }
  // Hand-evaluated table at lambda = 1, n = 3.
  CHECK(multiplier_mu(MultiIndex{Complex(1, 0)}, 0, 3).value.real() ==
        doctest::Approx(1.0));
  CHECK(multiplier_mu(MultiIndex{Complex(1, 0)}, 2, 3).value.real() ==
        doctest::Approx(-0.25));
  CHECK(multiplier_mu(MultiIndex{Complex(1, 0)}, 4, 3).value.real() ==
        doctest::Approx(-1.0 / 24.0));
}

TEST_CASE("multiplier: removable singularity is cancelled analytically") {
  // lambda = 4, k = 2, n = 3: one pole upstairs, one downstairs. The
  // residue expansion gives Gamma(5/2) * (-2) / Gamma(9/2) = -8/35.
  const TaggedValue v = multiplier_mu(MultiIndex{Complex(4.0, 0.0)}, 2, 3);
  REQUIRE(v.is_finite());
  CHECK(v.value.real() == doctest::Approx(-8.0 / 35.0).epsilon(1e-12));
  // Cross-check with a numeric limit through perturbed gamma ratios.
  const double eps = 1e-7;
  const double limit = mu_scalar(4.0 + eps, 2, 3);
  CHECK(v.value.real() == doctest::Approx(limit).epsilon(1e-5));
}

TEST_CASE("multiplier zero tags") {
  // m = 1, lambda = 0, k = 2: Gamma(0) downstairs only.
  const TaggedValue a = multiplier_mu(MultiIndex{Complex(0.0, 0.0)}, 2, 3);
  CHECK(a.is_zero());
  CHECK(a.order == 1);
  // m = 2, lambda = (1, 0), k = 2 annihilates as well.
  const TaggedValue b =
      multiplier_mu(MultiIndex{Complex(1.0, 0.0), Complex(0.0, 0.0)}, 2, 4);
  CHECK(b.is_zero());
}

TEST_CASE("constant-index multiplier equals a Siegel-gamma ratio") {
  const double lam = 0.5;
  const int k = 2, n = 5, m = 2;
  const TaggedValue mu =
      multiplier_mu(MultiIndex::constant(Complex(lam, 0.0), m), k, n);
  REQUIRE(mu.is_finite());
  const Complex want = siegel_gamma(Complex((lam + m) / 2.0, 0.0), m).value *
                       siegel_gamma(Complex((k - lam) / 2.0, 0.0), m).value /
                       (siegel_gamma(Complex(-lam / 2.0, 0.0), m).value *
                        siegel_gamma(Complex((lam + k + n) / 2.0, 0.0), m)
                            .value);
  CHECK(std::abs(mu.value - want) < 1e-12 * std::abs(want));
}

TEST_CASE("funk_hecke_constant at m = 1") {
  // c = pi^{(n-1)/2} i^k sigma_{1,1} = 2 pi^{(n-1)/2} i^k.
  const Complex c = funk_hecke_constant(3, 1, 2);
  CHECK(std::abs(c - Complex(-2.0 * kPi, 0.0)) < 1e-12);
  const Complex c4 = funk_hecke_constant(3, 1, 4);
  CHECK(std::abs(c4 - Complex(2.0 * kPi, 0.0)) < 1e-12);
}

TEST_CASE("convergence-set predicates") {
  // m = 2: need Re lambda_j > j - 3.
  CHECK(in_L_set(MultiIndex{Complex(-1.9, 0.0), Complex(-0.9, 0.0)}));
  CHECK_FALSE(in_L_set(MultiIndex{Complex(-2.1, 0.0), Complex(0.0, 0.0)}));
  CHECK_FALSE(in_L_set(MultiIndex{Complex(0.0, 0.0), Complex(-1.1, 0.0)}));
  // Lambda set with n = 4: Re lambda_j > j - 5.
  CHECK(in_Lambda_set(MultiIndex{Complex(-3.9, 0.0), Complex(-2.9, 0.0)}, 4));
  CHECK_FALSE(
      in_Lambda_set(MultiIndex{Complex(-4.1, 0.0), Complex(0.0, 0.0)}, 4));
  // Polar set, m = 1, n = 3: lambda = -3, -5, ...
  CHECK(in_polar_set(MultiIndex{Complex(-3.0, 0.0)}, 3));
  CHECK(in_polar_set(MultiIndex{Complex(-5.0, 0.0)}, 3));
  CHECK_FALSE(in_polar_set(MultiIndex{Complex(-2.0, 0.0)}, 3));
  CHECK_FALSE(in_polar_set(MultiIndex{Complex(-3.5, 0.0)}, 3));
}

TEST_CASE("condition on the multiplier zero set") {
  // Fails when some lambda_j + m - j is a non-negative even integer.
  CHECK(condition_uhh_holds(MultiIndex{Complex(0.5, 0.0)}));
  CHECK_FALSE(condition_uhh_holds(MultiIndex{Complex(0.0, 0.0)}));
  CHECK_FALSE(condition_uhh_holds(MultiIndex{Complex(2.0, 0.0)}));
  CHECK_FALSE(
      condition_uhh_holds(MultiIndex{Complex(1.0, 0.0), Complex(1.0, 0.0)}));
  CHECK(
      condition_uhh_holds(MultiIndex{Complex(0.5, 0.0), Complex(0.5, 0.0)}));
}

TEST_CASE("injectivity classifier on reference cases") {
  // (3, 1), lambda = 1: injective.
  const auto a = injectivity_classify(MultiIndex{Complex(1.0, 0.0)}, 3);
  CHECK(a.applicable);
  CHECK(a.known);
  CHECK(a.injective);
  // (4, 2), lambda = (1, 1): not injective, even degrees annihilated.
  const auto b = injectivity_classify(
      MultiIndex{Complex(1.0, 0.0), Complex(1.0, 0.0)}, 4);
  CHECK(b.applicable);
  CHECK(b.known);
  CHECK_FALSE(b.injective);
  CHECK_FALSE(b.annihilated_degrees.empty());
  // (5, 2), lambda = (0.5, 0.5): injective.
  const auto c = injectivity_classify(
      MultiIndex{Complex(0.5, 0.0), Complex(0.5, 0.0)}, 5);
  CHECK(c.applicable);
  CHECK(c.injective);
  // Outside the convergence set: not applicable.
  const auto d = injectivity_classify(MultiIndex{Complex(-3.0, 0.0)}, 3);
  CHECK_FALSE(d.applicable);
}
