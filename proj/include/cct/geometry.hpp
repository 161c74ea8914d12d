#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "cct/cone.hpp"
#include "cct/rng.hpp"

namespace cct {

/// Orthonormal m-frame in R^n: v'v = I_m.
class StiefelFrame {
 public:
  StiefelFrame(Matrix columns, double tol = 1e-12);

  const Matrix& columns() const { return columns_; }
  int n() const { return static_cast<int>(columns_.rows()); }
  int m() const { return static_cast<int>(columns_.cols()); }

 private:
  Matrix columns_;
};

/// Monte Carlo estimate: complex value, a conservative standard error
/// (max over real/imag component stderrs), and sampling bookkeeping.
struct McEstimate {
  Complex value = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;
  long long skipped = 0;

  double skipped_fraction() const {
    return samples > 0 ? static_cast<double>(skipped) / samples : 0.0;
  }
};

/// Sampling contract shared by the integrators: samples are split across
/// `partitions` deterministic streams (seed, stream_base + p) and reduced
/// in fixed partition order, so results depend only on
/// (seed, samples, partitions).
struct McOptions {
  long long samples = 100000;
  int partitions = 8;
  std::uint64_t seed = 42;
  std::uint64_t stream_base = 0;
  int threads = 0;  // 0 = one thread per partition (capped by hardware)
};

/// Generic partitioned Monte Carlo mean of `sample(rng)`; the callable may
/// throw NotPositiveDefinite or RankDeficient, which drops and counts the
/// sample. Returns the *mean* estimate (no mass factor applied).
McEstimate mc_mean(const std::function<Complex(RngStream&)>& sample,
                   const McOptions& opts);

/// Haar draw on V_{n,m}: Gaussian matrix, thin QR, gauge fixed by forcing
/// the triangular factor's diagonal positive.
StiefelFrame sample_stiefel(int n, int m, RngStream& rng);

/// Standard Gaussian n x m matrix.
Matrix sample_gaussian_matrix(int n, int m, RngStream& rng);

/// Polar coordinates x = v r^{1/2}, r = x'x.
std::pair<StiefelFrame, PosDefMatrix> polar_decompose(const Matrix& x);

/// Triangular (spherical) coordinates x = u t, t upper triangular with
/// positive diagonal.
std::pair<StiefelFrame, Matrix> triangular_decompose(const Matrix& x);

/// Symmetric positive square root of r.
Matrix sqrt_posdef(const PosDefMatrix& r);

/// sigma_{n,m} * (Haar mean of f); mass convention applied here, not in
/// the sampler.
McEstimate integrate_stiefel(
    const std::function<Complex(const StiefelFrame&)>& f, int n, int m,
    const McOptions& opts);

/// Importance-sampling estimate of an integral over R^{n x m} using
/// standard Gaussian proposals and exact density weights.
McEstimate integrate_matrix_gaussian(
    const std::function<Complex(const Matrix&)>& g, int n, int m,
    const McOptions& opts);

/// Power-matched polar proposal for integrals whose integrand carries a
/// composite power of x'x: draws v ~ Haar and rho = t't via a Bartlett
/// construction with per-component shapes nu and Gaussian rate `rate`
/// (density proportional to rho^nu e^{-rate tr rho} w.r.t. d_* rho).
/// Estimates int g(x) dx; finite-variance where the plain Gaussian
/// proposal is square-divergent.
McEstimate integrate_polar_power(
    const std::function<Complex(const Matrix&)>& g, int n, int m,
    const MultiIndex& nu, double rate, const McOptions& opts);

/// Deterministic tensor-product quadrature for int_Omega h(r) d_* r at
/// m <= 2, in Cholesky coordinates r = t't with the exact Jacobian
/// d_* r = 2^m prod_j t_jj^{-j} dt. Diagonal entries are integrated on a
/// log grid. Two refinements must agree to `rel_tol` or
/// QuadratureNotConverged is thrown.
struct ConeQuadratureSpec {
  int points = 120;           // per dimension (refined run uses 3/2 of this)
  double log_lo = -30.0;      // range for u = log t_jj
  double log_hi = 3.6;
  double offdiag_range = 24.0;  // t_12 in [-range, range]
  double rel_tol = 1e-6;
};

Complex integrate_cone(const std::function<Complex(const PosDefMatrix&)>& h,
                       int m, const ConeQuadratureSpec& spec = {});

/// Companion quadrature over the triangular group T_m (m <= 2) with weight
/// prod_j t_jj^{n-j}: int phi(t) prod t_jj^{n-j} dt.
Complex integrate_triangular_weighted(
    const std::function<Complex(const Matrix&)>& phi, int m, int n,
    const ConeQuadratureSpec& spec = {});

}  // namespace cct
