#include "cct/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cct {

namespace {
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Complex i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Haar draw on O(m) (gauge-fixed QR of a Gaussian square matrix).
Matrix sample_orthogonal(int m, RngStream& rng, bool special) {
  const StiefelFrame q = sample_stiefel(m, m, rng);
  Matrix g = q.columns();
  if (special && g.determinant() < 0.0) g.col(0) = -g.col(0);
  return g;
}

}  // namespace

HPolynomial::HPolynomial(CMatrix a, int k) : a_(std::move(a)), k_(k) {
  if (k_ < 0) throw InvalidDimensions("HPolynomial: k < 0");
  const CMatrix iso = a_.transpose() * a_;  // plain transpose: a'a = 0
  if (iso.cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidDimensions("HPolynomial: a'a != 0");
}

Complex HPolynomial::eval(const Matrix& x) const {
  if (k_ == 0) return 1.0;
  const CMatrix ax = a_.transpose() * x.cast<Complex>();
  return std::pow(ax.determinant(), k_);
}

HPolynomial make_h_polynomial(int n, int m, int k) {
  if (2 * m > n)
    throw DimensionsTooSmall("make_h_polynomial: needs 2m <= n");
  CMatrix a = CMatrix::Zero(n, m);
  for (int j = 0; j < m; ++j) {
    a(j, j) = 1.0;
    a(m + j, j) = kI;
  }
  return HPolynomial(std::move(a), k);
}

AngleFunction AngleFunction::one() {
  AngleFunction f;
  f.evaluator = [](const StiefelFrame&) { return Complex(1.0); };
  f.invariance = Invariance::RightOm;
  f.projector_form = [](const Matrix&) { return Complex(1.0); };
  return f;
}

AngleFunction AngleFunction::from_projector(
    std::function<Complex(const Matrix&)> g) {
  AngleFunction f;
  f.projector_form = g;
  f.evaluator = [g](const StiefelFrame& v) {
    return g(v.columns() * v.columns().transpose());
  };
  f.invariance = Invariance::RightOm;
  return f;
}

bool AngleFunction::check_invariance(int n, int m, RngStream& rng, int trials,
                                     double tol) const {
  if (invariance == Invariance::None) return true;
  for (int t = 0; t < trials; ++t) {
    const StiefelFrame v = sample_stiefel(n, m, rng);
    const Matrix g =
        sample_orthogonal(m, rng, invariance == Invariance::RightSOm);
    const Complex a = evaluator(v);
    const Complex b = evaluator(StiefelFrame(v.columns() * g));
    if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
  }
  return true;
}

double GaussianSchwartz::eval(const Matrix& x) const {
  if (scale <= 0.0) throw InvalidDimensions("GaussianSchwartz: scale <= 0");
  const double q = shift ? (x - *shift).squaredNorm() : x.squaredNorm();
  return std::exp(-0.5 * scale * q);
}

Complex GaussianSchwartz::fourier(const Matrix& y, int n, int m) const {
  const double amp = std::pow(2.0 * kPi / scale, 0.5 * n * m);
  Complex phase = 1.0;
  if (shift) phase = std::exp(kI * (y.transpose() * *shift).trace());
  return amp * phase * std::exp(-0.5 * y.squaredNorm() / scale);
}

McEstimate cosine_transform(const AngleFunction& f, const MultiIndex& lambda,
                            const StiefelFrame& u, const McOptions& opts,
                            bool force) {
  if (lambda.m() != u.m()) throw InvalidDimensions("cosine_transform");
  if (!in_L_set(lambda) && !force)
    throw ConvergenceDomain("cosine_transform: lambda outside L");
  const Matrix& uc = u.columns();
  return integrate_stiefel(
      [&](const StiefelFrame& v) {
        const Matrix b = uc.transpose() * v.columns();  // u'v, m x m
        const PosDefMatrix gram(b * b.transpose());     // u'v v'u
        return f.evaluator(v) * composite_power(gram, lambda);
      },
      u.n(), u.m(), opts);
}

McEstimate det_cosine_transform(const AngleFunction& f, Complex lambda,
                                const StiefelFrame& u, const McOptions& opts,
                                bool force) {
  if (!(lambda.real() > -1.0) && !force)
    throw ConvergenceDomain("det_cosine_transform: Re lambda <= -1");
  const Matrix& uc = u.columns();
  return integrate_stiefel(
      [&](const StiefelFrame& v) {
        const double d = std::abs((v.columns().transpose() * uc).determinant());
        if (d <= kPivotFloor)
          throw NotPositiveDefinite("det_cosine_transform: singular v'u");
        return f.evaluator(v) * std::exp(lambda * std::log(d));
      },
      u.n(), u.m(), opts);
}

McEstimate radial_extension(const AngleFunction& f, const MultiIndex& lambda,
                            const Matrix& y, const McOptions& opts,
                            bool force) {
  auto [u, t] = triangular_decompose(y);
  const Complex radial = composite_power_from_triangular(t, lambda);
  McEstimate est = cosine_transform(f, lambda, u, opts, force);
  est.value *= radial;
  est.stderr_ *= std::abs(radial);
  return est;
}

TaggedValue average_identity_value(const MultiIndex& lambda, int n) {
  const int m = lambda.m();
  if (n <= m) throw InvalidDimensions("average_identity_value");
  const TaggedValue num = gamma_cone(lambda.shifted(m));
  const TaggedValue den = gamma_cone(lambda.shifted(n));
  const TaggedValue gm = siegel_gamma(0.5 * m, m);
  const double front =
      std::pow(2.0, m) * std::pow(kPi, 0.5 * n * m) / gm.value.real();
  if (num.is_pole() && !den.is_pole()) return TaggedValue::pole(num.order);
  if (den.is_pole() && !num.is_pole()) return TaggedValue::zero(den.order);
  if (num.is_pole() && den.is_pole())
    throw Error("average_identity_value: indeterminate gamma ratio");
  return TaggedValue::finite(front * num.value / den.value);
}

CaseResult make_case(std::string name, Complex lhs, Complex rhs,
                     double stderr_combined, double tolerance,
                     double skipped_fraction) {
  CaseResult c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.stderr_ = stderr_combined;
  c.residual = std::abs(lhs - rhs);
  c.tolerance = tolerance;
  c.pass = c.residual <= tolerance;
  c.skipped_fraction = skipped_fraction;
  return c;
}

EigenRelationReport eigen_relation_check(const HPolynomial& P,
                                         const MultiIndex& lambda,
                                         int n_frames, const McOptions& opts) {
  const int n = P.n();
  const int m = P.m();
  if (lambda.m() != m) throw InvalidDimensions("eigen_relation_check");
  if (!in_L_set(lambda))
    throw ConvergenceDomain("eigen_relation_check: lambda outside L");

  const TaggedValue mu = multiplier_mu(lambda, P.k(), n);
  if (!mu.is_finite())
    throw Error("eigen_relation_check: multiplier not finite here");
  EigenRelationReport report;
  report.expected = funk_hecke_constant(n, m, P.k()) * mu.value;

  AngleFunction fp;
  fp.evaluator = [&P](const StiefelFrame& v) { return P.eval(v); };
  fp.invariance =
      (P.k() % 2 == 0) ? Invariance::RightOm : Invariance::RightSOm;

  // Empirical 90th percentile of |P| over a pilot pool sets the frame
  // acceptance threshold (quotient variance scales as 1/|P(u)|^2).
  RngStream pool_rng(opts.seed, opts.stream_base + 1000003);
  std::vector<StiefelFrame> pool;
  std::vector<double> mags;
  for (int i = 0; i < 64; ++i) {
    pool.push_back(sample_stiefel(n, m, pool_rng));
    mags.push_back(std::abs(P.eval(pool.back())));
  }
  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end());
  const double threshold = 0.05 * sorted[static_cast<std::size_t>(57)];

  McOptions frame_opts = opts;
  bool all_pass = true;
  for (std::size_t i = 0; i < pool.size() && static_cast<int>(report.frames.size()) < n_frames; ++i) {
    if (mags[i] < threshold) continue;
    frame_opts.stream_base = opts.stream_base + 64 + 17 * i;
    const McEstimate est = cosine_transform(fp, lambda, pool[i], frame_opts);
    EigenRelationReport::FrameQuotient fq;
    fq.quotient = est.value / P.eval(pool[i]);
    fq.stderr_ = est.stderr_ / mags[i];
    fq.abs_p = mags[i];
    if (std::abs(fq.quotient - report.expected) > 3.0 * fq.stderr_)
      all_pass = false;
    report.frames.push_back(fq);
  }
  if (report.frames.empty())
    throw ThresholdNotMet("eigen_relation_check: all |P(u)| below threshold");
  for (std::size_t i = 0; i < report.frames.size(); ++i)
    for (std::size_t j = i + 1; j < report.frames.size(); ++j) {
      const auto& a = report.frames[i];
      const auto& b = report.frames[j];
      const double d = std::abs(a.quotient - b.quotient);
      report.dispersion = std::max(report.dispersion, d);
      if (d > 3.0 * (a.stderr_ + b.stderr_)) all_pass = false;
    }
  report.pass = all_pass;
  return report;
}

AnnihilationReport annihilation_check(const HPolynomial& P,
                                      const MultiIndex& lambda,
                                      const McOptions& opts, int n_frames) {
  AnnihilationReport report;
  report.mu = multiplier_mu(lambda, P.k(), P.n());
  AngleFunction fp;
  fp.evaluator = [&P](const StiefelFrame& v) { return P.eval(v); };
  fp.invariance =
      (P.k() % 2 == 0) ? Invariance::RightOm : Invariance::RightSOm;

  RngStream frame_rng(opts.seed, opts.stream_base + 2000003);
  bool all_pass = report.mu.is_zero();
  McOptions frame_opts = opts;
  for (int i = 0; i < n_frames; ++i) {
    const StiefelFrame u = sample_stiefel(P.n(), P.m(), frame_rng);
    frame_opts.stream_base = opts.stream_base + 31 * (i + 1);
    const McEstimate est = cosine_transform(fp, lambda, u, frame_opts);
    CaseResult c = make_case("annihilation frame " + std::to_string(i),
                             est.value, 0.0, est.stderr_, 3.0 * est.stderr_,
                             est.skipped_fraction());
    all_pass = all_pass && c.pass;
    report.frames.push_back(std::move(c));
  }
  report.pass = all_pass;
  return report;
}

CaseResult perp_duality_check(const AngleFunction& f, Complex lambda, int n,
                              int m, const McOptions& opts) {
  if (!f.projector_form)
    throw InvalidDimensions("perp_duality_check: needs a projector form");
  const int mp = n - m;
  RngStream frame_rng(opts.seed, opts.stream_base + 3000017);
  const StiefelFrame u = sample_stiefel(n, m, frame_rng);

  // Complete u to an orthonormal basis; the trailing columns frame u-perp.
  Eigen::HouseholderQR<Matrix> qr(u.columns());
  const Matrix full_q = qr.householderQ() * Matrix::Identity(n, n);
  const StiefelFrame u_perp(full_q.rightCols(mp));

  auto g = f.projector_form;
  AngleFunction f_perp = AngleFunction::from_projector([g, n](const Matrix& p) {
    return g(Matrix::Identity(n, n) - p);
  });

  McOptions opts_a = opts;
  McOptions opts_b = opts;
  opts_b.stream_base = opts.stream_base + 500009;
  const McEstimate side_a = det_cosine_transform(f, lambda, u, opts_a);
  const McEstimate side_b = det_cosine_transform(f_perp, lambda, u_perp, opts_b);
  const double mass_a = stiefel_volume(n, m);
  const double mass_b = stiefel_volume(n, mp);
  const Complex a = side_a.value / mass_a;
  const Complex b = side_b.value / mass_b;
  const double sa = side_a.stderr_ / mass_a;
  const double sb = side_b.stderr_ / mass_b;
  return make_case("perp duality", a, b, sa + sb, 3.0 * (sa + sb),
                   std::max(side_a.skipped_fraction(),
                            side_b.skipped_fraction()));
}

namespace {

McEstimate zeta_common(const GaussianSchwartz& phi, const MultiIndex& lambda,
                       const AngleFunction& f, int n, int m,
                       const McOptions& opts, ZetaProposal proposal,
                       bool reversed) {
  if (lambda.m() != m) throw InvalidDimensions("zeta integral");
  if (!in_Lambda_set(lambda, n))
    throw ConvergenceDomain("zeta integral: lambda outside Lambda");

  // Reversal substitution x = z w (w the column-reversing permutation)
  // turns the r_*^lambda kernel into r^lambda with f and phi precomposed
  // with the reversal; this keeps the power-matched proposal applicable.
  // The kernel and frame come from the QR factorization z = u t, which
  // stays accurate where forming z'z explicitly would lose the small
  // singular values; the QR frame differs from the polar frame by a right
  // SO(m) rotation, irrelevant for the invariant angle components used
  // here.
  Matrix w = Matrix::Zero(m, m);
  for (int j = 0; j < m; ++j) w(j, m - 1 - j) = 1.0;

  auto integrand = [&, w](const Matrix& z) -> Complex {
    auto [u, t] = triangular_decompose(z);
    const Complex kern = composite_power_from_triangular(t, lambda);
    const Matrix x = reversed ? Matrix(z * w) : z;
    const StiefelFrame vx = reversed ? StiefelFrame(u.columns() * w) : u;
    return kern * f.evaluator(vx) * std::conj(Complex(phi.eval(x)));
  };

  if (proposal == ZetaProposal::Gaussian)
    return integrate_matrix_gaussian(integrand, n, m, opts);

  if (phi.shift)
    throw InvalidDimensions("zeta integral: matched proposal needs centered phi");
  std::vector<Complex> nu(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) nu[j] = lambda[j].real() + n;
  // Rate detuned from the exact match (phi.scale / 2) so the importance
  // weights vary and the reported stderr is a live error measure.
  return integrate_polar_power(integrand, n, m, MultiIndex(std::move(nu)),
                               0.45 * phi.scale, opts);
}

}  // namespace

McEstimate zeta_integral(const GaussianSchwartz& phi, const MultiIndex& lambda,
                         const AngleFunction& f, int n, int m,
                         const McOptions& opts, ZetaProposal proposal) {
  return zeta_common(phi, lambda, f, n, m, opts, proposal, false);
}

McEstimate zeta_star(const GaussianSchwartz& phi, const MultiIndex& lambda,
                     const AngleFunction& f, int n, int m,
                     const McOptions& opts, ZetaProposal proposal) {
  return zeta_common(phi, lambda, f, n, m, opts, proposal, true);
}

namespace {

void require_strip(const MultiIndex& lambda, double lo_of_j, double hi_of_j,
                   int n, int m, const char* what) {
  (void)n;
  for (int j = 1; j <= m; ++j) {
    const double re = lambda[j - 1].real();
    const double lo = lo_of_j + j;
    const double hi = hi_of_j + j;
    if (!(re > lo + 1e-12 && re < hi - 1e-12))
      throw ConvergenceDomain(std::string(what) + ": lambda outside strip");
  }
}

}  // namespace

FunctionalEquationReport functional_equation_residual(
    const MultiIndex& lambda, const AngleFunction& f,
    const GaussianSchwartz& phi, int n, int m, const McOptions& opts) {
  if (lambda.m() != m) throw InvalidDimensions("functional_equation_residual");
  require_strip(lambda, -m - 1, -m, n, m, "functional_equation");
  if (f.invariance != Invariance::RightOm)
    throw InvalidDimensions("functional_equation: f must be right-O(m)-invariant");
  if (phi.shift)
    throw InvalidDimensions("functional_equation: phi must be centered");

  const double mass = stiefel_volume(n, m);
  const double log_gauss_norm = 0.5 * n * m * std::log(2.0 * kPi);

  // LHS pairing (T^lambda f, F phi) as a joint Monte Carlo over (x, v):
  // the kernel (x'v v'x)^lambda factorizes the radial extension exactly.
  FunctionalEquationReport report;
  report.lhs_raw = mc_mean(
      [&](RngStream& rng) -> Complex {
        const Matrix x = sample_gaussian_matrix(n, m, rng);
        const StiefelFrame v = sample_stiefel(n, m, rng);
        const Matrix b = x.transpose() * v.columns();  // x'v
        const PosDefMatrix gram(b * b.transpose());
        const Complex kern = composite_power(gram, lambda);
        const double log_weight = log_gauss_norm + 0.5 * x.squaredNorm();
        return f.evaluator(v) * kern *
               std::conj(phi.fourier(x, n, m)) * mass * std::exp(log_weight);
      },
      opts);

  McOptions rhs_opts = opts;
  rhs_opts.stream_base = opts.stream_base + 700001;
  const MultiIndex rhs_index = (-lambda.reversed()).shifted(-double(n));
  report.rhs_raw = zeta_star(phi, rhs_index, f, n, m, rhs_opts,
                             ZetaProposal::PolarMatched);

  const Complex abs_l = lambda.total();
  const Complex c_lambda = std::exp(-abs_l * std::log(2.0)) *
                           std::pow(kPi, 0.5 * m * m) / stiefel_volume(m, m);
  const Complex gamma_m0 = gamma_cone(lambda.shifted(m)).value;
  const Complex gamma_neg = gamma_cone(-lambda.reversed()).value;

  const Complex lhs_scale = c_lambda / gamma_m0;
  const Complex rhs_scale = std::pow(2.0 * kPi, n * m) / gamma_neg;
  const Complex lhs = lhs_scale * report.lhs_raw.value;
  const Complex rhs = rhs_scale * report.rhs_raw.value;
  const double s_l = std::abs(lhs_scale) * report.lhs_raw.stderr_;
  const double s_r = std::abs(rhs_scale) * report.rhs_raw.stderr_;
  report.comparison = make_case(
      "functional equation", lhs, rhs, s_l + s_r, 3.0 * (s_l + s_r),
      std::max(report.lhs_raw.skipped_fraction(),
               report.rhs_raw.skipped_fraction()));

  // Closed forms for the constant angle component.
  if (f.projector_form) {
    // only emit when f == 1; detected via the projector form at identity
    RngStream probe(1, 1);
    const StiefelFrame v0 = sample_stiefel(n, m, probe);
    const bool is_one =
        std::abs(f.evaluator(v0) - Complex(1.0)) < 1e-14 &&
        std::abs(f.evaluator(sample_stiefel(n, m, probe)) - Complex(1.0)) <
            1e-14;
    if (is_one) {
      const double s = phi.scale;
      const Complex avg = average_identity_value(lambda, n).value;
      const Complex radial_factor =
          std::exp((abs_l + Complex(n * m)) * 0.5 * std::log(2.0 * s)) *
          gamma_cone(lambda.shifted(n)).value;
      report.lhs_closed = lhs_scale * avg *
                          std::pow(2.0 * kPi / s, 0.5 * n * m) *
                          std::pow(2.0, -m) * mass * radial_factor;
      report.rhs_closed = std::pow(2.0 * kPi, n * m) * std::pow(2.0, -m) *
                          mass *
                          std::exp(-abs_l * 0.5 * std::log(2.0 / s));
    }
  }
  return report;
}

PowerFourierReport power_fourier_residual(const MultiIndex& lambda, int n,
                                          int m, const GaussianSchwartz& phi,
                                          const McOptions& opts) {
  if (lambda.m() != m) throw InvalidDimensions("power_fourier_residual");
  require_strip(lambda, -n - 1, -m, n, m, "power_fourier");
  if (phi.shift)
    throw InvalidDimensions("power_fourier: phi must be centered");
  const double s = phi.scale;
  const double mass = stiefel_volume(n, m);
  const Complex abs_l = lambda.total();
  const Complex gamma_neg = gamma_cone(-lambda.reversed()).value;
  const Complex gamma_n0 = gamma_cone(lambda.shifted(n)).value;
  const Complex c_lambda =
      std::exp((Complex(n * m) + abs_l) * std::log(2.0)) *
      std::pow(kPi, 0.5 * n * m);

  // LHS integral: (y'y)^lambda against conj(F phi), matched polar proposal
  // with Gaussian rate 1/(2s).
  std::vector<Complex> nu(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) nu[j] = lambda[j].real() + n;
  const McEstimate lhs_int = integrate_polar_power(
      [&](const Matrix& y) -> Complex {
        auto [u, t] = triangular_decompose(y);
        (void)u;
        return composite_power_from_triangular(t, lambda) *
               std::conj(phi.fourier(y, n, m));
      },
      n, m, MultiIndex(std::move(nu)), 0.45 / s, opts);

  McOptions rhs_opts = opts;
  rhs_opts.stream_base = opts.stream_base + 800001;
  const MultiIndex rhs_index = (-lambda.reversed()).shifted(-double(n));
  const McEstimate rhs_int =
      zeta_star(phi, rhs_index, AngleFunction::one(), n, m, rhs_opts,
                ZetaProposal::PolarMatched);

  const Complex lhs = gamma_neg * lhs_int.value;
  const Complex rhs = c_lambda * gamma_n0 * rhs_int.value;
  const double s_l = std::abs(gamma_neg) * lhs_int.stderr_;
  const double s_r = std::abs(c_lambda * gamma_n0) * rhs_int.stderr_;

  PowerFourierReport report;
  // Tiny roundoff floor on top of the statistical tolerance: both sides can
  // be estimated with near-zero variance when the proposal matches exactly.
  const double floor =
      1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
  report.comparison = make_case(
      "power-function Fourier strip", lhs, rhs, s_l + s_r,
      3.0 * (s_l + s_r) + floor,
      std::max(lhs_int.skipped_fraction(), rhs_int.skipped_fraction()));
  report.lhs_closed =
      gamma_neg * std::pow(2.0 * kPi / s, 0.5 * n * m) * std::pow(2.0, -m) *
      mass * std::exp((abs_l + Complex(n * m)) * 0.5 * std::log(2.0 * s)) *
      gamma_n0;
  report.rhs_closed = c_lambda * gamma_n0 * std::pow(2.0, -m) * mass *
                      std::exp(abs_l * 0.5 * std::log(s / 2.0)) * gamma_neg;
  return report;
}

CaseResult hecke_identity_residual(const HPolynomial& P, const Matrix& y,
                                   const McOptions& opts) {
  const int n = P.n();
  const int m = P.m();
  if (y.rows() != n || y.cols() != m)
    throw InvalidDimensions("hecke_identity_residual");
  // Proposal N(0, 1/(2 pi)) per entry has density exactly e^{-pi tr(x'x)}.
  const double sd = 1.0 / std::sqrt(2.0 * kPi);
  const McEstimate est = mc_mean(
      [&](RngStream& rng) -> Complex {
        Matrix x(n, m);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < m; ++j) x(i, j) = sd * rng.gaussian();
        const double phase_arg = 2.0 * kPi * (y.transpose() * x).trace();
        return P.eval(x) * std::exp(kI * phase_arg);
      },
      opts);
  const Complex rhs =
      i_power(P.k() * m) * P.eval(y) * std::exp(-kPi * y.squaredNorm());
  return make_case("hecke identity", est.value, rhs, est.stderr_,
                   3.0 * est.stderr_, est.skipped_fraction());
}

}  // namespace cct
