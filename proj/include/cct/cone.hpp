#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cct/errors.hpp"
#include "cct/multi_index.hpp"

namespace cct {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Pivot floor below which a Cholesky factorization is declared degenerate.
inline constexpr double kPivotFloor = 1e-300;

/// Upper-triangular t with positive diagonal such that t't = r.
/// Throws NotPositiveDefinite if a pivot falls at or below `floor`.
Matrix cholesky_upper(const Matrix& r, double floor = kPivotFloor);

/// Element of the cone Omega of positive definite symmetric matrices,
/// carrying its Cholesky factor and principal minors.
class PosDefMatrix {
 public:
  explicit PosDefMatrix(const Matrix& entries);

  /// Build from a known upper-triangular factor t (r = t't) without
  /// re-factorizing; avoids cancellation at extreme conditioning.
  static PosDefMatrix from_cholesky(const Matrix& t);

  const Matrix& entries() const { return entries_; }
  const Matrix& chol() const { return chol_; }  // upper triangular
  const Vector& minors() const { return minors_; }
  int m() const { return static_cast<int>(entries_.rows()); }

  /// Delta_i(r), 1-based; Delta_0 = 1 by convention.
  double minor_at(int i) const {
    return i == 0 ? 1.0 : minors_(i - 1);
  }

 private:
  PosDefMatrix() = default;

  Matrix entries_;
  Matrix chol_;
  Vector minors_;
};

/// Principal minors Delta_i computed from the Cholesky diagonal,
/// Delta_i = prod_{j<=i} t_jj^2.
Vector principal_minors(const PosDefMatrix& r);

/// Independent route: cofactor/block-determinant expansion of the top-left
/// i x i blocks. Used as a cross-check at small m.
Vector principal_minors_direct(const Matrix& r);

/// Composite power r^lambda = prod_i [Delta_i/Delta_{i-1}]^{lambda_i/2},
/// evaluated in log-space through the Cholesky diagonal:
/// r^lambda = prod_j t_jj^{lambda_j}.
Complex composite_power(const PosDefMatrix& r, const MultiIndex& lambda);

/// Cross-check path evaluating the minor-ratio product directly.
Complex composite_power_minor_path(const PosDefMatrix& r,
                                   const MultiIndex& lambda);

/// Composite power from an upper-triangular factor t (r = t't):
/// prod_j t_jj^{lambda_j}. Diagonal must be strictly positive.
Complex composite_power_from_triangular(const Matrix& t,
                                        const MultiIndex& lambda);

/// r_* = omega r omega with omega the anti-diagonal reversal;
/// (r_*)_{ij} = r_{m-i+1, m-j+1}.
Matrix reverse_matrix(const Matrix& r);

/// Component reversal of the multi-index.
inline MultiIndex reverse_index(const MultiIndex& lambda) {
  return lambda.reversed();
}

}  // namespace cct
