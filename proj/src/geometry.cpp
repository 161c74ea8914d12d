#include "cct/geometry.hpp"

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "cct/special.hpp"

namespace cct {

namespace {
constexpr double kPi = std::numbers::pi;
}

StiefelFrame::StiefelFrame(Matrix columns, double tol)
    : columns_(std::move(columns)) {
  if (columns_.rows() < columns_.cols() || columns_.cols() < 1)
    throw InvalidDimensions("StiefelFrame: need n >= m >= 1");
  const Matrix gram = columns_.transpose() * columns_;
  const double dev =
      (gram - Matrix::Identity(m(), m())).cwiseAbs().maxCoeff();
  if (dev > tol) throw RankDeficient("StiefelFrame: v'v != I");
}

McEstimate mc_mean(const std::function<Complex(RngStream&)>& sample,
                   const McOptions& opts) {
  const int parts = std::max(1, opts.partitions);
  const long long per = opts.samples / parts;
  const long long rem = opts.samples % parts;

  struct Partial {
    Complex sum = 0.0;
    double sum_re2 = 0.0;
    double sum_im2 = 0.0;
    long long skipped = 0;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(parts));

  auto run_partition = [&](int p) {
    RngStream rng(opts.seed, opts.stream_base + static_cast<std::uint64_t>(p));
    const long long count = per + (p < rem ? 1 : 0);
    Partial acc;
    for (long long i = 0; i < count; ++i) {
      try {
        const Complex y = sample(rng);
        acc.sum += y;
        acc.sum_re2 += y.real() * y.real();
        acc.sum_im2 += y.imag() * y.imag();
      } catch (const NotPositiveDefinite&) {
        ++acc.skipped;
      } catch (const RankDeficient&) {
        ++acc.skipped;
      }
    }
    partials[static_cast<std::size_t>(p)] = acc;
  };

  int threads = opts.threads > 0
                    ? opts.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, parts));
  if (threads == 1) {
    for (int p = 0; p < parts; ++p) run_partition(p);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int p = t; p < parts; p += threads) run_partition(p);
      });
    for (auto& th : pool) th.join();
  }

  // Fixed-order tree reduction over partitions.
  Partial total;
  for (const auto& p : partials) {
    total.sum += p.sum;
    total.sum_re2 += p.sum_re2;
    total.sum_im2 += p.sum_im2;
    total.skipped += p.skipped;
  }

  McEstimate est;
  est.samples = opts.samples;
  est.skipped = total.skipped;
  const long long n_eff = opts.samples - total.skipped;
  if (n_eff <= 1) {
    est.value = n_eff == 1 ? total.sum : Complex(0.0);
    est.stderr_ = 0.0;
    return est;
  }
  const double inv = 1.0 / static_cast<double>(n_eff);
  est.value = total.sum * inv;
  const double var_re = std::max(
      0.0, (total.sum_re2 * inv - est.value.real() * est.value.real()) *
               (n_eff / static_cast<double>(n_eff - 1)));
  const double var_im = std::max(
      0.0, (total.sum_im2 * inv - est.value.imag() * est.value.imag()) *
               (n_eff / static_cast<double>(n_eff - 1)));
  est.stderr_ = std::sqrt(std::max(var_re, var_im) * inv);
  return est;
}

Matrix sample_gaussian_matrix(int n, int m, RngStream& rng) {
  Matrix x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) x(i, j) = rng.gaussian();
  return x;
}

namespace {

// Thin QR with the positive-diagonal gauge.
std::pair<Matrix, Matrix> thin_qr_positive(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  const int m = static_cast<int>(x.cols());
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ() * Matrix::Identity(n, m);
  Matrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    if (r(j, j) < 0.0) {
      r.row(j) = -r.row(j);
      q.col(j) = -q.col(j);
    }
  }
  return {q, r};
}

}  // namespace

StiefelFrame sample_stiefel(int n, int m, RngStream& rng) {
  if (m < 1 || m > n) throw InvalidDimensions("sample_stiefel");
  auto [q, r] = thin_qr_positive(sample_gaussian_matrix(n, m, rng));
  (void)r;
  return StiefelFrame(std::move(q));
}

Matrix sqrt_posdef(const PosDefMatrix& r) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(r.entries());
  return es.operatorSqrt();
}

std::pair<StiefelFrame, PosDefMatrix> polar_decompose(const Matrix& x) {
  try {
    PosDefMatrix r(x.transpose() * x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.entries());
    const Matrix inv_sqrt = es.operatorInverseSqrt();
    return {StiefelFrame(x * inv_sqrt), std::move(r)};
  } catch (const NotPositiveDefinite&) {
    throw RankDeficient("polar_decompose: rank(x) < m");
  }
}

std::pair<StiefelFrame, Matrix> triangular_decompose(const Matrix& x) {
  auto [q, r] = thin_qr_positive(x);
  for (int j = 0; j < r.cols(); ++j)
    if (r(j, j) <= kPivotFloor)
      throw RankDeficient("triangular_decompose: rank(x) < m");
  return {StiefelFrame(std::move(q)), std::move(r)};
}

McEstimate integrate_stiefel(
    const std::function<Complex(const StiefelFrame&)>& f, int n, int m,
    const McOptions& opts) {
  const double mass = stiefel_volume(n, m);
  McEstimate est = mc_mean(
      [&](RngStream& rng) { return f(sample_stiefel(n, m, rng)); }, opts);
  est.value *= mass;
  est.stderr_ *= mass;
  return est;
}

McEstimate integrate_matrix_gaussian(
    const std::function<Complex(const Matrix&)>& g, int n, int m,
    const McOptions& opts) {
  const double log_norm = 0.5 * n * m * std::log(2.0 * kPi);
  return mc_mean(
      [&](RngStream& rng) {
        const Matrix x = sample_gaussian_matrix(n, m, rng);
        const double log_density = -log_norm - 0.5 * x.squaredNorm();
        return g(x) * std::exp(-log_density);
      },
      opts);
}

McEstimate integrate_polar_power(
    const std::function<Complex(const Matrix&)>& g, int n, int m,
    const MultiIndex& nu, double rate, const McOptions& opts) {
  if (nu.m() != m || rate <= 0.0)
    throw InvalidDimensions("integrate_polar_power");
  std::vector<double> shapes(static_cast<std::size_t>(m));
  double nu_total = 0.0;
  for (int j = 1; j <= m; ++j) {
    const Complex nj = nu[j - 1];
    if (std::abs(nj.imag()) > 0.0)
      throw InvalidDimensions("integrate_polar_power: nu must be real");
    shapes[j - 1] = 0.5 * (nj.real() - j + 1);
    nu_total += nj.real();
    if (shapes[j - 1] <= 0.0)
      throw InvalidDimensions("integrate_polar_power: shape <= 0");
  }
  const TaggedValue gnu = gamma_cone(nu);
  const double mass = stiefel_volume(n, m);
  // Proposal normalization w.r.t. d_* rho.
  const double log_qnorm =
      0.5 * nu_total * std::log(rate) - std::log(gnu.value.real());
  const double offdiag_sd = std::sqrt(0.5 / rate);
  // Exponent of the reweighting power rho^{n0 - nu}.
  std::vector<Complex> w_exp(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) w_exp[j] = Complex(n, 0.0) - nu[j];
  const MultiIndex weight_index{std::vector<Complex>(w_exp)};

  return mc_mean(
      [&](RngStream& rng) {
        Matrix t = Matrix::Zero(m, m);
        for (int j = 0; j < m; ++j) {
          t(j, j) = std::sqrt(rng.gamma(shapes[j]) / rate);
          for (int l = j + 1; l < m; ++l)
            t(j, l) = offdiag_sd * rng.gaussian();
        }
        const StiefelFrame v = sample_stiefel(n, m, rng);
        const Matrix x = v.columns() * t;
        double trace = t.squaredNorm();
        const Complex reweight =
            composite_power_from_triangular(t, weight_index);
        const double log_w =
            std::log(mass) - m * std::log(2.0) - log_qnorm + rate * trace;
        return g(x) * reweight * std::exp(log_w);
      },
      opts);
}

namespace {

Complex cone_quadrature_pass(
    const std::function<Complex(const PosDefMatrix&)>& h, int m,
    const ConeQuadratureSpec& spec, int points) {
  const double du = (spec.log_hi - spec.log_lo) / points;
  Complex acc = 0.0;
  if (m == 1) {
    // d_* r = 2 du with r = e^{2u}.
    for (int i = 0; i < points; ++i) {
      const double u = spec.log_lo + (i + 0.5) * du;
      Matrix t(1, 1);
      t(0, 0) = std::exp(u);
      acc += h(PosDefMatrix::from_cholesky(t));
    }
    return 2.0 * acc * du;
  }
  // m == 2: d_* r = 4 e^{-u2} du1 du2 dt12.
  const double dt = 2.0 * spec.offdiag_range / points;
  for (int i = 0; i < points; ++i) {
    const double t11 = std::exp(spec.log_lo + (i + 0.5) * du);
    for (int j = 0; j < points; ++j) {
      const double u2 = spec.log_lo + (j + 0.5) * du;
      const double t22 = std::exp(u2);
      const double w2 = std::exp(-u2);
      Complex inner = 0.0;
      for (int l = 0; l < points; ++l) {
        const double t12 = -spec.offdiag_range + (l + 0.5) * dt;
        Matrix t = Matrix::Zero(2, 2);
        t(0, 0) = t11;
        t(0, 1) = t12;
        t(1, 1) = t22;
        inner += h(PosDefMatrix::from_cholesky(t));
      }
      acc += inner * w2;
    }
  }
  return 4.0 * acc * du * du * dt;
}

}  // namespace

Complex integrate_cone(const std::function<Complex(const PosDefMatrix&)>& h,
                       int m, const ConeQuadratureSpec& spec) {
  if (m != 1 && m != 2)
    throw InvalidDimensions("integrate_cone: m must be 1 or 2");
  const Complex coarse = cone_quadrature_pass(h, m, spec, spec.points);
  const Complex fine = cone_quadrature_pass(h, m, spec, (3 * spec.points) / 2);
  const double scale = std::max(std::abs(fine), 1e-300);
  if (std::abs(fine - coarse) > spec.rel_tol * scale)
    throw QuadratureNotConverged("integrate_cone: refinements disagree");
  return fine;
}

Complex integrate_triangular_weighted(
    const std::function<Complex(const Matrix&)>& phi, int m, int n,
    const ConeQuadratureSpec& spec) {
  if (m != 1 && m != 2)
    throw InvalidDimensions("integrate_triangular_weighted: m must be 1 or 2");
  auto pass = [&](int points) {
    const double du = (spec.log_hi - spec.log_lo) / points;
    Complex acc = 0.0;
    if (m == 1) {
      // weight t^{n-1} dt = e^{n u} du.
      for (int i = 0; i < points; ++i) {
        const double u = spec.log_lo + (i + 0.5) * du;
        Matrix t(1, 1);
        t(0, 0) = std::exp(u);
        acc += phi(t) * std::exp(n * u);
      }
      return acc * du;
    }
    const double dt = 2.0 * spec.offdiag_range / points;
    for (int i = 0; i < points; ++i) {
      const double u1 = spec.log_lo + (i + 0.5) * du;
      for (int j = 0; j < points; ++j) {
        const double u2 = spec.log_lo + (j + 0.5) * du;
        const double w = std::exp(n * u1 + (n - 1) * u2);
        Complex inner = 0.0;
        for (int l = 0; l < points; ++l) {
          Matrix t = Matrix::Zero(2, 2);
          t(0, 0) = std::exp(u1);
          t(1, 1) = std::exp(u2);
          t(0, 1) = -spec.offdiag_range + (l + 0.5) * dt;
          inner += phi(t);
        }
        acc += inner * w;
      }
    }
    return acc * du * du * dt;
  };
  const Complex coarse = pass(spec.points);
  const Complex fine = pass((3 * spec.points) / 2);
  const double scale = std::max(std::abs(fine), 1e-300);
  if (std::abs(fine - coarse) > spec.rel_tol * scale)
    throw QuadratureNotConverged(
        "integrate_triangular_weighted: refinements disagree");
  return fine;
}

}  // namespace cct
