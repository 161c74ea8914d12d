#pragma once

#include "cct/transforms.hpp"

namespace cct {

/// Matrix (n-k)-plane tau = {x in R^{n x m} : xi'x = t}, carried by a frame
/// xi in V_{n,k} and a k x m offset t.
struct MatrixPlane {
  StiefelFrame xi;
  Matrix t;

  MatrixPlane(StiefelFrame xi_in, Matrix t_in);

  int n() const { return xi.n(); }
  int k() const { return xi.m(); }
  int m() const { return static_cast<int>(t.cols()); }
};

/// A rotation g in SO(n) whose last k columns equal xi (g xi_0 = xi for the
/// canonical frame xi_0 = [0; I_k]). Built by completing xi to an
/// orthonormal basis via QR against Gaussian columns, determinant fixed to
/// +1 by flipping one completion column; gauge independence of the plane
/// integral is tested separately.
Matrix complete_rotation(const StiefelFrame& xi, RngStream& rng);

/// Plane integral (R_k phi)(tau) = int phi(g [omega; t]) d omega of a
/// Gaussian test function; closed form
/// (2 pi / s)^{(n-k)m/2} exp(-s |t - xi'x0|_F^2 / 2) evaluated through the
/// supplied rotation.
double radon_gaussian(const GaussianSchwartz& phi, const MatrixPlane& plane,
                      const Matrix& g);

/// Same, with the rotation completed from a fixed deterministic stream.
double radon_gaussian(const GaussianSchwartz& phi, const MatrixPlane& plane);

/// Monte Carlo cross-check of the plane integral: importance sampling over
/// omega in R^{(n-k) x m} with standard Gaussian proposals.
McEstimate radon_gaussian_mc(const GaussianSchwartz& phi,
                             const MatrixPlane& plane, const Matrix& g,
                             const McOptions& opts);

/// Projection-slice comparison (F f)(xi b) vs the k x m Fourier transform
/// of t -> (R_k f)(xi, t), both in closed form for Gaussian mixtures.
struct SliceResidual {
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

SliceResidual projection_slice_residual(const GaussianMixture& f,
                                        const StiefelFrame& xi,
                                        const Matrix& b,
                                        double tolerance = 1e-8);

}  // namespace cct
