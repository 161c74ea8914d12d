#include "cct/radon.hpp"

#include <cmath>
#include <numbers>

namespace cct {

namespace {
constexpr double kPi = std::numbers::pi;
}

MatrixPlane::MatrixPlane(StiefelFrame xi_in, Matrix t_in)
    : xi(std::move(xi_in)), t(std::move(t_in)) {
  if (t.rows() != xi.m())
    throw InvalidDimensions("MatrixPlane: t must have k rows");
  if (!(1 <= m() && m() <= k() && k() < n()))
    throw InvalidDimensions("MatrixPlane: needs 1 <= m <= k < n");
}

Matrix complete_rotation(const StiefelFrame& xi, RngStream& rng) {
  const int n = xi.n();
  const int k = xi.m();
  Matrix basis(n, n);
  basis.leftCols(k) = xi.columns();
  for (int i = 0; i < n; ++i)
    for (int j = k; j < n; ++j) basis(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  // With xi orthonormal, the first k columns of q reproduce xi exactly;
  // move them to the back so that g xi_0 = xi.
  Matrix g(n, n);
  g.leftCols(n - k) = q.rightCols(n - k);
  g.rightCols(k) = q.leftCols(k);
  if (g.determinant() < 0.0) g.col(0) = -g.col(0);
  if ((g.rightCols(k) - xi.columns()).cwiseAbs().maxCoeff() > 1e-10)
    throw RankDeficient("complete_rotation: completion failed");
  return g;
}

double radon_gaussian(const GaussianSchwartz& phi, const MatrixPlane& plane,
                      const Matrix& g) {
  const int n = plane.n();
  const int k = plane.k();
  const int m = plane.m();
  if (g.rows() != n || g.cols() != n)
    throw InvalidDimensions("radon_gaussian: rotation size");
  const double s = phi.scale;
  if (s <= 0.0) throw InvalidDimensions("radon_gaussian: scale <= 0");
  // In the rotated coordinates x = g [omega; t] the quadratic form splits;
  // the omega marginal integrates to the Gaussian normalization and only
  // the t-block of g'x0 survives.
  Matrix center = Matrix::Zero(k, m);
  if (phi.shift) center = g.rightCols(k).transpose() * *phi.shift;
  const double amp = std::pow(2.0 * kPi / s, 0.5 * (n - k) * m);
  return amp * std::exp(-0.5 * s * (plane.t - center).squaredNorm());
}

double radon_gaussian(const GaussianSchwartz& phi, const MatrixPlane& plane) {
  RngStream rng(20240409, 0);
  return radon_gaussian(phi, plane, complete_rotation(plane.xi, rng));
}

McEstimate radon_gaussian_mc(const GaussianSchwartz& phi,
                             const MatrixPlane& plane, const Matrix& g,
                             const McOptions& opts) {
  const int n = plane.n();
  const int k = plane.k();
  const int m = plane.m();
  const int d = n - k;
  const Matrix head = g.leftCols(d);
  const Matrix tail_t = g.rightCols(k) * plane.t;
  const double log_norm = 0.5 * d * m * std::log(2.0 * kPi);
  return mc_mean(
      [&](RngStream& rng) -> Complex {
        const Matrix omega = sample_gaussian_matrix(d, m, rng);
        const Matrix x = head * omega + tail_t;
        const double log_weight = log_norm + 0.5 * omega.squaredNorm();
        return phi.eval(x) * std::exp(log_weight);
      },
      opts);
}

SliceResidual projection_slice_residual(const GaussianMixture& f,
                                        const StiefelFrame& xi,
                                        const Matrix& b, double tolerance) {
  const int n = xi.n();
  const int k = xi.m();
  const int m = static_cast<int>(b.cols());
  if (b.rows() != k)
    throw InvalidDimensions("projection_slice_residual: b must be k x m");
  if (!(1 <= m && m <= k && k < n))
    throw InvalidDimensions("projection_slice_residual: needs 1 <= m <= k < n");

  SliceResidual out;
  const Matrix xb = xi.columns() * b;
  for (const auto& term : f) {
    // Full-space Fourier transform at xi b.
    out.lhs += term.weight * term.component.fourier(xb, n, m);
    // t -> (R_k phi)(xi, t) is again a Gaussian, centered at xi'x0 with
    // the same scale; its k x m Fourier transform closes the slice side.
    const double amp =
        std::pow(2.0 * kPi / term.component.scale, 0.5 * (n - k) * m);
    GaussianSchwartz slice;
    slice.scale = term.component.scale;
    if (term.component.shift)
      slice.shift = Matrix(xi.columns().transpose() * *term.component.shift);
    out.rhs += term.weight * amp * slice.fourier(b, k, m);
  }
  out.residual = std::abs(out.lhs - out.rhs);
  out.tolerance = tolerance * std::max(std::abs(out.lhs), 1.0);
  out.pass = out.residual <= out.tolerance;
  return out;
}

}  // namespace cct
