#include "cct/cone.hpp"

#include <cmath>

namespace cct {

Matrix cholesky_upper(const Matrix& r, double floor) {
  const auto m = r.rows();
  if (m != r.cols()) throw InvalidDimensions("cholesky_upper: not square");
  // Row-oriented Cholesky producing L with r = L L'; return t = L'.
  Matrix L = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double s = r(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= floor)
          throw NotPositiveDefinite("cholesky_upper: pivot below floor");
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return L.transpose();
}

PosDefMatrix::PosDefMatrix(const Matrix& entries) : entries_(entries) {
  const double scale = entries.cwiseAbs().maxCoeff();
  const double asym = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw InvalidDimensions("PosDefMatrix: input not symmetric");
  entries_ = 0.5 * (entries + entries.transpose());
  chol_ = cholesky_upper(entries_);
  minors_ = Vector(m());
  double prod = 1.0;
  for (int i = 0; i < m(); ++i) {
    prod *= chol_(i, i) * chol_(i, i);
    minors_(i) = prod;
  }
}

PosDefMatrix PosDefMatrix::from_cholesky(const Matrix& t) {
  const int m = static_cast<int>(t.rows());
  if (t.cols() != m) throw InvalidDimensions("from_cholesky: not square");
  for (int i = 0; i < m; ++i) {
    if (!(t(i, i) > kPivotFloor))
      throw NotPositiveDefinite("from_cholesky: non-positive diagonal");
    for (int j = 0; j < i; ++j)
      if (t(i, j) != 0.0)
        throw InvalidDimensions("from_cholesky: not upper triangular");
  }
  PosDefMatrix r;
  r.chol_ = t;
  r.entries_ = t.transpose() * t;
  r.minors_ = Vector(m);
  double prod = 1.0;
  for (int i = 0; i < m; ++i) {
    prod *= t(i, i) * t(i, i);
    r.minors_(i) = prod;
  }
  return r;
}

Vector principal_minors(const PosDefMatrix& r) { return r.minors(); }

Vector principal_minors_direct(const Matrix& r) {
  const int m = static_cast<int>(r.rows());
  Vector out(m);
  for (int i = 1; i <= m; ++i) {
    const double d = r.topLeftCorner(i, i).determinant();
    if (d <= 0.0)
      throw NotPositiveDefinite("principal_minors_direct: minor <= 0");
    out(i - 1) = d;
  }
  return out;
}

Complex composite_power(const PosDefMatrix& r, const MultiIndex& lambda) {
  if (lambda.m() != r.m())
    throw InvalidDimensions("composite_power: index size != matrix size");
  Complex log_sum = 0.0;
  for (int j = 0; j < r.m(); ++j)
    log_sum += lambda[j] * std::log(r.chol()(j, j));
  return std::exp(log_sum);
}

Complex composite_power_minor_path(const PosDefMatrix& r,
                                   const MultiIndex& lambda) {
  if (lambda.m() != r.m())
    throw InvalidDimensions("composite_power: index size != matrix size");
  Complex log_sum = 0.0;
  for (int i = 1; i <= r.m(); ++i) {
    const double ratio = r.minor_at(i) / r.minor_at(i - 1);
    log_sum += 0.5 * lambda[i - 1] * std::log(ratio);
  }
  return std::exp(log_sum);
}

Complex composite_power_from_triangular(const Matrix& t,
                                        const MultiIndex& lambda) {
  if (lambda.m() != t.rows() || t.rows() != t.cols())
    throw InvalidDimensions("composite_power_from_triangular: size mismatch");
  Complex log_sum = 0.0;
  for (int j = 0; j < lambda.m(); ++j) {
    const double d = t(j, j);
    if (d <= kPivotFloor)
      throw NotPositiveDefinite("composite_power_from_triangular: diagonal");
    log_sum += lambda[j] * std::log(d);
  }
  return std::exp(log_sum);
}

Matrix reverse_matrix(const Matrix& r) {
  if (r.rows() != r.cols()) throw InvalidDimensions("reverse_matrix");
  const auto m = r.rows();
  Matrix out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      out(i, j) = r(m - 1 - i, m - 1 - j);
  return out;
}

}  // namespace cct
