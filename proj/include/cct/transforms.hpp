#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cct/geometry.hpp"
#include "cct/special.hpp"

namespace cct {

using CMatrix = Eigen::MatrixXcd;

/// Determinantally homogeneous harmonic polynomial P_k(x) = det(a'x)^k with
/// a'a = 0 (complex isotropic n x m matrix).
class HPolynomial {
 public:
  HPolynomial(CMatrix a, int k);

  Complex eval(const Matrix& x) const;
  Complex eval(const StiefelFrame& v) const { return eval(v.columns()); }

  const CMatrix& a() const { return a_; }
  int k() const { return k_; }
  int n() const { return static_cast<int>(a_.rows()); }
  int m() const { return static_cast<int>(a_.cols()); }

 private:
  CMatrix a_;
  int k_;
};

/// Standard construction a = [e_1..e_m] + i [e_{m+1}..e_{2m}]; needs 2m <= n.
HPolynomial make_h_polynomial(int n, int m, int k);

enum class Invariance { RightOm, RightSOm, None };

/// "Angle component": a function on the Stiefel manifold, with a declared
/// right-invariance class. A projector form g(vv') is attached when the
/// function factors through the Grassmannian; the perp-duality check
/// requires it.
struct AngleFunction {
  std::function<Complex(const StiefelFrame&)> evaluator;
  Invariance invariance = Invariance::None;
  std::function<Complex(const Matrix&)> projector_form;  // optional

  static AngleFunction one();

  /// Build from g acting on the rank-m projector vv' (right-O(m)-invariant
  /// by construction).
  static AngleFunction from_projector(std::function<Complex(const Matrix&)> g);

  /// Spot-check the declared invariance on random (frame, rotation) pairs.
  bool check_invariance(int n, int m, RngStream& rng, int trials = 10,
                        double tol = 1e-10) const;
};

/// Concrete Schwartz test function phi(x) = exp(-scale * |x - shift|_F^2 / 2)
/// with closed-form Fourier transform under the e^{tr(i y'x)} convention.
struct GaussianSchwartz {
  double scale = 1.0;
  std::optional<Matrix> shift;

  double eval(const Matrix& x) const;
  Complex fourier(const Matrix& y, int n, int m) const;
};

struct GaussianMixtureTerm {
  double weight = 1.0;
  GaussianSchwartz component;
};
using GaussianMixture = std::vector<GaussianMixtureTerm>;

/// Composite cosine transform (T^lambda f)(u) = int f(v) (u'v v'u)^lambda dv
/// by Haar Monte Carlo with the sigma_{n,m} mass convention. Throws
/// ConvergenceDomain for lambda outside the convergence set unless `force`.
McEstimate cosine_transform(const AngleFunction& f, const MultiIndex& lambda,
                            const StiefelFrame& u, const McOptions& opts,
                            bool force = false);

/// Constant-index transform int f(v) |det(v'u)|^lambda dv via the cheaper
/// determinant path. Needs Re lambda > -1.
McEstimate det_cosine_transform(const AngleFunction& f, Complex lambda,
                                const StiefelFrame& u, const McOptions& opts,
                                bool force = false);

/// Extension to full-rank y via the radial factorization
/// (T^lambda f)(y) = (y'y)^lambda (T^lambda f)(u), y = u t.
McEstimate radial_extension(const AngleFunction& f, const MultiIndex& lambda,
                            const Matrix& y, const McOptions& opts,
                            bool force = false);

/// Closed form of the average int (u'v v'u)^lambda dv
/// = (2^m pi^{nm/2} / Gamma_m(m/2)) Gamma_O(lambda+m0) / Gamma_O(lambda+n0).
TaggedValue average_identity_value(const MultiIndex& lambda, int n);

/// One verified comparison; the building block of suite reports.
struct CaseResult {
  std::string name;
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double stderr_ = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double skipped_fraction = 0.0;
};

CaseResult make_case(std::string name, Complex lhs, Complex rhs,
                     double stderr_combined, double tolerance,
                     double skipped_fraction = 0.0);

/// Rayleigh-quotient verification of the eigen relation
/// (T^lambda P_k)(u) = c mu_k(lambda) P_k(u) over several random frames.
struct EigenRelationReport {
  Complex expected = 0.0;  // c * mu_k(lambda)
  struct FrameQuotient {
    Complex quotient;
    double stderr_;
    double abs_p;  // |P(u)|
  };
  std::vector<FrameQuotient> frames;
  double dispersion = 0.0;  // max pairwise quotient distance
  bool pass = false;
};

EigenRelationReport eigen_relation_check(const HPolynomial& P,
                                         const MultiIndex& lambda,
                                         int n_frames, const McOptions& opts);

/// Null test: multiplier_mu tagged zero and |T^lambda P_k(u)| <= 3 stderr
/// at several random frames.
struct AnnihilationReport {
  TaggedValue mu;
  std::vector<CaseResult> frames;
  bool pass = false;
};

AnnihilationReport annihilation_check(const HPolynomial& P,
                                      const MultiIndex& lambda,
                                      const McOptions& opts, int n_frames = 5);

/// Mass-normalized comparison of (T^lambda f)(u) on V_{n,m} against the
/// complementary transform on V_{n,n-m}; f must carry a projector form.
CaseResult perp_duality_check(const AngleFunction& f, Complex lambda, int n,
                              int m, const McOptions& opts);

enum class ZetaProposal { Gaussian, PolarMatched };

/// Generalized zeta integral Z(phi, lambda, f) = int r^lambda f(v)
/// conj(phi(x)) dx over R^{n x m} (r = x'x, x = v r^{1/2}).
McEstimate zeta_integral(const GaussianSchwartz& phi, const MultiIndex& lambda,
                         const AngleFunction& f, int n, int m,
                         const McOptions& opts,
                         ZetaProposal proposal = ZetaProposal::Gaussian);

/// Reversed-power variant with kernel r_*^lambda.
McEstimate zeta_star(const GaussianSchwartz& phi, const MultiIndex& lambda,
                     const AngleFunction& f, int n, int m,
                     const McOptions& opts,
                     ZetaProposal proposal = ZetaProposal::Gaussian);

/// Functional-equation residual:
/// (c_lambda / Gamma_O(lambda+m0)) (T^lambda f, F phi)
///   = (2 pi)^{nm} Z^0_*(phi, -lambda_*-n0, f),
/// checked in the common absolute-convergence strip
/// j-m-1 < Re lambda_j < j-m.
struct FunctionalEquationReport {
  CaseResult comparison;      // LHS vs RHS with combined stderr
  McEstimate lhs_raw;         // pairing (T^lambda f, F phi)
  McEstimate rhs_raw;         // zeta_star estimate
  std::optional<Complex> lhs_closed;  // available for f == 1
  std::optional<Complex> rhs_closed;
};

FunctionalEquationReport functional_equation_residual(
    const MultiIndex& lambda, const AngleFunction& f,
    const GaussianSchwartz& phi, int n, int m, const McOptions& opts);

/// Fourier-of-power-function strip identity:
/// Gamma_O(-l_*) int (y'y)^l conj(F phi) dy
///   = 2^{nm+|l|} pi^{nm/2} Gamma_O(l+n0) int (x'x)_*^{-l_*-n0} conj(phi) dx
/// for j-n-1 < Re lambda_j < j-m.
struct PowerFourierReport {
  CaseResult comparison;
  std::optional<Complex> lhs_closed;
  std::optional<Complex> rhs_closed;
};

PowerFourierReport power_fourier_residual(const MultiIndex& lambda, int n,
                                          int m, const GaussianSchwartz& phi,
                                          const McOptions& opts);

/// Hecke identity: int P(x) e^{-pi tr(x'x)} e^{2 pi i tr(y'x)} dx
/// = i^{km} P(y) e^{-pi tr(y'y)}, by Monte Carlo.
CaseResult hecke_identity_residual(const HPolynomial& P, const Matrix& y,
                                   const McOptions& opts);

}  // namespace cct
