#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cct/transforms.hpp"

using namespace cct;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix haar_rotation(int n, RngStream& rng) {
  const Matrix x = sample_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

}  // namespace

TEST_CASE("H-polynomial: isotropy, normalization, dimension guard") {
  const HPolynomial P = make_h_polynomial(5, 2, 3);
  CHECK((P.a().transpose() * P.a()).cwiseAbs().maxCoeff() < 1e-12);
  // At x = Re(a) the frame pairs to the identity, so P = 1.
  const Matrix x0 = P.a().real();
  CHECK(std::abs(P.eval(x0) - Complex(1.0)) < 1e-12);
  CHECK_THROWS_AS(make_h_polynomial(3, 2, 1), DimensionsTooSmall);
}

TEST_CASE("H-polynomial: determinantal homogeneity P(xg) = det(g)^k P(x)") {
  RngStream rng(3, 0);
  const HPolynomial P = make_h_polynomial(5, 2, 2);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix x = sample_gaussian_matrix(5, 2, rng);
    Matrix g(2, 2);
    g << 1.0 + rng.gaussian(), rng.gaussian(), rng.gaussian(),
        1.0 + rng.gaussian();
    const Complex lhs = P.eval((x * g).eval());
    const Complex rhs = std::pow(Complex(g.determinant()), 2) * P.eval(x);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("H-polynomial is harmonic (finite-difference Laplacian)") {
  RngStream rng(5, 0);
  const HPolynomial P = make_h_polynomial(4, 2, 2);
  const double h = 1e-3;
  for (int rep = 0; rep < 5; ++rep) {
    Matrix x = sample_gaussian_matrix(4, 2, rng);
    x *= 0.7;
    Complex lap = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j) {
        Matrix xp = x, xm = x;
        xp(i, j) += h;
        xm(i, j) -= h;
        lap += (P.eval(xp) - 2.0 * P.eval(x) + P.eval(xm)) / (h * h);
      }
    CHECK(std::abs(lap) < 1e-4 * (1.0 + std::abs(P.eval(x))));
  }
}

TEST_CASE("even-degree H-polynomials are right-O(m)-invariant on frames") {
  RngStream rng(7, 0);
  const HPolynomial P = make_h_polynomial(5, 2, 2);
  AngleFunction f;
  f.evaluator = [&](const StiefelFrame& v) { return P.eval(v); };
  f.invariance = Invariance::RightOm;
  CHECK(f.check_invariance(5, 2, rng));
}

TEST_CASE("check_invariance rejects a falsely declared function") {
  RngStream rng(9, 0);
  AngleFunction f;
  f.evaluator = [](const StiefelFrame& v) {
    return Complex(v.columns()(0, 0));
  };
  f.invariance = Invariance::RightOm;
  CHECK_FALSE(f.check_invariance(4, 2, rng));
}

TEST_CASE("from_projector builds an invariant function") {
  RngStream rng(11, 0);
  const AngleFunction f = AngleFunction::from_projector(
      [](const Matrix& p) { return Complex(p(0, 0) * p(1, 1)); });
  CHECK(f.check_invariance(4, 2, rng));
  REQUIRE(f.projector_form);
}

TEST_CASE("GaussianSchwartz Fourier transform vs direct 1-D quadrature") {
  GaussianSchwartz phi;
  phi.scale = 1.2;
  Matrix shift(1, 1);
  shift << 0.4;
  phi.shift = shift;
  Matrix y(1, 1);
  y << 1.7;
  const Complex got = phi.fourier(y, 1, 1);
  // Riemann sum of exp(-s (x - x0)^2 / 2) exp(i x y) over a wide window.
  Complex sum = 0.0;
  const double h = 1e-3;
  for (double x = -20.0; x <= 20.0; x += h) {
    Matrix xm(1, 1);
    xm << x;
    sum += phi.eval(xm) * std::exp(Complex(0.0, x * y(0, 0))) * h;
  }
  CHECK(std::abs(got - sum) < 1e-8);
}

TEST_CASE("cosine transform at lambda = 0 returns the manifold mass") {
  McOptions opts;
  opts.samples = 2000;
  RngStream rng(13, 0);
  const StiefelFrame u = sample_stiefel(4, 2, rng);
  const McEstimate e = cosine_transform(
      AngleFunction::one(), MultiIndex::constant(0.0, 2), u, opts);
  CHECK(std::abs(e.value.real() - stiefel_volume(4, 2)) <
        1e-10 * stiefel_volume(4, 2));
}

TEST_CASE("cosine transform enforces the convergence set unless forced") {
  McOptions opts;
  opts.samples = 1000;
  RngStream rng(15, 0);
  const StiefelFrame u = sample_stiefel(4, 2, rng);
  const MultiIndex bad{Complex(-2.5, 0.0), Complex(0.0, 0.0)};
  CHECK_THROWS_AS(cosine_transform(AngleFunction::one(), bad, u, opts),
                  ConvergenceDomain);
  CHECK_NOTHROW(cosine_transform(AngleFunction::one(), bad, u, opts, true));
}

TEST_CASE("determinant path agrees with the composite path") {
  McOptions opts;
  opts.samples = 60000;
  RngStream rng(17, 0);
  const StiefelFrame u = sample_stiefel(4, 2, rng);
  const Complex lam(0.7, 0.0);
  McOptions opts2 = opts;
  opts2.stream_base = 1000;
  const McEstimate a = cosine_transform(AngleFunction::one(),
                                        MultiIndex::constant(lam, 2), u, opts);
  const McEstimate b =
      det_cosine_transform(AngleFunction::one(), lam, u, opts2);
  // det(u'v v'u) = det(v'u)^2, so (u'v v'u)^{lam_0} = |det(v'u)|^{lam}.
  CHECK(std::abs(a.value - b.value) <
        3.0 * (a.stderr_ + b.stderr_) + 1e-9 * std::abs(a.value));
}

TEST_CASE("closed-form average equals the k = 0 eigenvalue") {
  for (auto [n, m] : {std::pair{3, 1}, {4, 2}, {5, 2}}) {
    const MultiIndex lambda =
        m == 1 ? MultiIndex{Complex(1.3, 0.2)}
               : MultiIndex{Complex(1.3, 0.2), Complex(0.4, -0.1)};
    const TaggedValue avg = average_identity_value(lambda, n);
    const TaggedValue mu = multiplier_mu(lambda, 0, n);
    REQUIRE(avg.is_finite());
    REQUIRE(mu.is_finite());
    const Complex want = funk_hecke_constant(n, m, 0) * mu.value;
    CHECK(std::abs(avg.value - want) < 1e-10 * std::abs(want));
  }
}

TEST_CASE("closed-form average vs Monte Carlo at (3, 1)") {
  McOptions opts;
  opts.samples = 100000;
  RngStream rng(19, 0);
  const StiefelFrame u = sample_stiefel(3, 1, rng);
  const MultiIndex lambda{Complex(1.0, 0.0)};
  const McEstimate e =
      cosine_transform(AngleFunction::one(), lambda, u, opts);
  const TaggedValue want = average_identity_value(lambda, 3);
  REQUIRE(want.is_finite());
  CHECK(std::abs(e.value - want.value) <
        3.0 * e.stderr_ + 1e-9 * std::abs(want.value));
}

TEST_CASE("average grows toward the convergence boundary") {
  // lambda_j = j - m - 1 + eps; the closed form must blow up as eps -> 0.
  const int n = 4;
  double prev = 0.0;
  for (double eps : {0.5, 0.25, 0.125}) {
    const MultiIndex lambda{Complex(-2.0 + eps, 0.0),
                            Complex(-1.0 + eps, 0.0)};
    const TaggedValue v = average_identity_value(lambda, n);
    REQUIRE(v.is_finite());
    CHECK(std::abs(v.value) > prev);
    prev = std::abs(v.value);
  }
}

TEST_CASE("radial extension scales by the composite power of y'y") {
  McOptions opts;
  opts.samples = 20000;
  RngStream rng(21, 0);
  const StiefelFrame u = sample_stiefel(4, 2, rng);
  const MultiIndex lambda{Complex(0.8, 0.0), Complex(0.5, 0.0)};
  const McEstimate base =
      cosine_transform(AngleFunction::one(), lambda, u, opts);
  const Matrix y = 2.0 * u.columns();  // y'y = 4 I, so (y'y)^lambda = 2^{|l|}
  const McEstimate ext =
      radial_extension(AngleFunction::one(), lambda, y, opts);
  const Complex want = std::pow(2.0, lambda.total().real()) * base.value;
  CHECK(std::abs(ext.value - want) < 1e-9 * std::abs(want));
}

TEST_CASE("rotation equivariance of the transform") {
  McOptions opts;
  opts.samples = 150000;
  RngStream rng(23, 0);
  const Matrix gamma = haar_rotation(4, rng);
  const StiefelFrame u = sample_stiefel(4, 2, rng);
  const AngleFunction f = AngleFunction::from_projector(
      [](const Matrix& p) { return Complex(p(0, 0)); });
  AngleFunction f_rot;
  f_rot.evaluator = [&, f](const StiefelFrame& v) {
    return f.evaluator(StiefelFrame((gamma * v.columns()).eval()));
  };
  f_rot.invariance = Invariance::RightOm;
  const MultiIndex lambda{Complex(1.0, 0.0), Complex(0.5, 0.0)};
  McOptions opts2 = opts;
  opts2.stream_base = 5000;
  const McEstimate lhs = cosine_transform(f_rot, lambda, u, opts);
  const StiefelFrame gu((gamma * u.columns()).eval());
  const McEstimate rhs = cosine_transform(f, lambda, gu, opts2);
  CHECK(std::abs(lhs.value - rhs.value) <
        3.0 * (lhs.stderr_ + rhs.stderr_) + 1e-9 * std::abs(rhs.value));
}

TEST_CASE("eigen relation at (3, 1), k = 2, lambda = 1") {
  McOptions opts;
  opts.samples = 60000;
  const HPolynomial P = make_h_polynomial(3, 1, 2);
  const EigenRelationReport rep =
      eigen_relation_check(P, MultiIndex{Complex(1.0, 0.0)}, 3, opts);
  CHECK(rep.pass);
  // c mu_2(1) = (-2 pi)(-1/4) = pi/2.
  CHECK(std::abs(rep.expected - Complex(kPi / 2.0, 0.0)) < 1e-10);
}

TEST_CASE("annihilation at (3, 1), lambda = 0, k = 2") {
  McOptions opts;
  opts.samples = 40000;
  const HPolynomial P = make_h_polynomial(3, 1, 2);
  const AnnihilationReport rep =
      annihilation_check(P, MultiIndex{Complex(0.0, 0.0)}, opts, 3);
  CHECK(rep.mu.is_zero());
  CHECK(rep.pass);
}

TEST_CASE("zeta integral of a centered Gaussian at lambda = 0") {
  McOptions opts;
  opts.samples = 20000;
  GaussianSchwartz phi;  // scale 1, centered
  const int n = 4, m = 2;
  const McEstimate e =
      zeta_integral(phi, MultiIndex::constant(0.0, m), AngleFunction::one(),
                    n, m, opts);
  const double want = std::pow(2.0 * kPi, 0.5 * n * m);
  CHECK(std::abs(e.value.real() - want) <
        3.0 * e.stderr_ + 1e-8 * want);
}

TEST_CASE("reversed zeta equals plain zeta for invariant data") {
  // With f right-O(m)-invariant and phi centered, the substitution that
  // implements the reversed kernel leaves the integrand unchanged, so the
  // two estimators coincide sample-by-sample.
  McOptions opts;
  opts.samples = 10000;
  GaussianSchwartz phi;
  const MultiIndex lambda{Complex(1.0, 0.0), Complex(0.5, 0.0)};
  const McEstimate a =
      zeta_integral(phi, lambda, AngleFunction::one(), 4, 2, opts);
  const McEstimate b =
      zeta_star(phi, lambda, AngleFunction::one(), 4, 2, opts);
  CHECK(std::abs(a.value - b.value) < 1e-10 * std::abs(a.value));
}

TEST_CASE("functional equation enforces its strip") {
  McOptions opts;
  opts.samples = 1000;
  GaussianSchwartz phi;
  CHECK_THROWS_AS(
      functional_equation_residual(MultiIndex{Complex(0.5, 0.0)},
                                   AngleFunction::one(), phi, 3, 1, opts),
      ConvergenceDomain);
}

TEST_CASE("power-Fourier identity enforces its strip") {
  McOptions opts;
  opts.samples = 1000;
  GaussianSchwartz phi;
  CHECK_THROWS_AS(
      power_fourier_residual(MultiIndex{Complex(0.5, 0.0)}, 3, 1, phi, opts),
      ConvergenceDomain);
}

TEST_CASE("Hecke identity: degree 0 and a vanishing point") {
  McOptions opts;
  opts.samples = 100000;
  const HPolynomial p0 = make_h_polynomial(4, 2, 0);
  RngStream rng(29, 0);
  Matrix y = 0.5 * sample_gaussian_matrix(4, 2, rng);
  const CaseResult c0 = hecke_identity_residual(p0, y, opts);
  CHECK(c0.pass);
  // Self-dual Gaussian: the right-hand side is e^{-pi |y|^2} exactly.
  CHECK(std::abs(c0.rhs - Complex(std::exp(-kPi * y.squaredNorm()), 0.0)) <
        1e-12);
  const HPolynomial p2 = make_h_polynomial(4, 2, 2);
  const Matrix y0 = Matrix::Zero(4, 2);
  const CaseResult cz = hecke_identity_residual(p2, y0, opts);
  CHECK(cz.pass);
  CHECK(std::abs(cz.rhs) < 1e-14);
}
