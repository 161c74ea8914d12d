#pragma once

#include <complex>
#include <string>

#include "cct/multi_index.hpp"

namespace cct {

/// Result of a meromorphic evaluation: a finite value, a zero of known
/// order, or a pole of known order. Gamma-ratio arithmetic mixes all three.
struct TaggedValue {
  enum class Kind { Finite, Zero, Pole };

  Kind kind = Kind::Finite;
  Complex value = 0.0;  // meaningful when kind == Finite
  int order = 0;        // pole/zero order; 0 for a finite nonzero value

  static TaggedValue finite(Complex v) { return {Kind::Finite, v, 0}; }
  static TaggedValue zero(int order) { return {Kind::Zero, 0.0, order}; }
  static TaggedValue pole(int order) { return {Kind::Pole, 0.0, order}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_zero() const { return kind == Kind::Zero; }
  bool is_pole() const { return kind == Kind::Pole; }
};

/// Principal log-gamma. Lanczos on Re z >= 0.5, reflection otherwise.
/// Throws PoleAtNonPositiveInteger within 1e-14 of {0, -1, -2, ...}.
Complex log_gamma_complex(Complex z);

inline Complex gamma_complex(Complex z) {
  return std::exp(log_gamma_complex(z));
}

/// True if z is within tol of a non-positive integer (a Gamma pole);
/// if so, `q` receives the pole index: z ~ -q, q >= 0.
bool is_gamma_pole(Complex z, int* q, double tol = 1e-12);

/// Gamma function of the cone:
/// Gamma_Omega(lambda) = pi^{m(m-1)/4} prod_j Gamma((lambda_j - j + 1)/2).
/// Poles are tagged with order = number of singular scalar factors.
TaggedValue gamma_cone(const MultiIndex& lambda);

/// Siegel gamma: pi^{m(m-1)/4} prod_{j=0}^{m-1} Gamma(lambda - j/2).
TaggedValue siegel_gamma(Complex lambda, int m);

/// Volume of the Stiefel manifold, sigma_{n,m} = 2^m pi^{nm/2} / Gamma_m(n/2).
double stiefel_volume(int n, int m);

/// Cross-check route: sigma_{n,m} = prod_{i=1}^m |S^{n-i}|,
/// |S^i| = 2 pi^{(i+1)/2} / Gamma((i+1)/2).
double stiefel_volume_sphere_product(int n, int m);

/// Funk-Hecke multiplier
///   mu_k(lambda) = Gamma_O(lambda+m0) Gamma_O(k0-lambda_*)
///               / [Gamma_O(-lambda_*) Gamma_O(lambda+k0+n0)],
/// evaluated in gamma-ratio normal form. Net pole orders are tagged; a
/// removable singularity is cancelled analytically via the residue
/// expansion Gamma(z) ~ (-1)^q / (q! (z+q)), with no epsilon perturbation.
TaggedValue multiplier_mu(const MultiIndex& lambda, int k, int n);

/// Eigenvalue prefactor c = pi^{m(n-m)/2} i^{km} sigma_{m,m}.
Complex funk_hecke_constant(int n, int m, int k);

/// Convergence set of the composite cosine transform:
/// Re lambda_j > j - m - 1 for all j.
bool in_L_set(const MultiIndex& lambda);

/// Convergence set of the zeta integrals: Re lambda_j > j - n - 1 for all j.
bool in_Lambda_set(const MultiIndex& lambda, int n);

/// Candidate polar set: lambda_j = j - n - l for some j and odd l >= 1,
/// tested with exact-integer tolerance 1e-12.
bool in_polar_set(const MultiIndex& lambda, int n, double tol = 1e-12);

/// Injectivity criterion of the multiplier zero set:
/// lambda_j + m - j not in {0, 2, 4, ...} for all j.
bool condition_uhh_holds(const MultiIndex& lambda, double tol = 1e-12);

struct InjectivityVerdict {
  enum class Reason {
    StrictlyInsideL,
    ViolatesUhh,
    RankOneRule,
    RankGtOneRule,
    OutsideConvergence,
  };

  bool applicable = true;  // false when lambda is outside the convergence set
  bool injective = false;
  // False for the one regime the theory leaves open: 2m > n, non-constant
  // lambda, with the zero-set criterion failing.
  bool known = true;
  Reason reason = Reason::OutsideConvergence;
  std::string annihilated_degrees;  // nonempty when non-injective
  std::string note;

  static const char* reason_name(Reason r);
};

/// Classifier for injectivity of T^lambda on right-O(m)-invariant L^1.
InjectivityVerdict injectivity_classify(const MultiIndex& lambda, int n);

}  // namespace cct
