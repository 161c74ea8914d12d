#include "cct/special.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace cct {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 671/128, 14 + 1 coefficients.
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr double kLanczosCof[14] = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3,
    -0.210264441724104883e-3, 0.217439618115212643e-3,
    -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

Complex log_gamma_lanczos(Complex z) {
  // Valid for Re z >= 0.5.
  Complex tmp = z + kLanczosG;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  Complex ser = kLanczosC0;
  Complex y = z;
  for (double c : kLanczosCof) ser += c / (y += 1.0);
  return tmp + std::log(2.5066282746310005 * ser / z);
}

}  // namespace

bool is_gamma_pole(Complex z, int* q, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  const double rounded = std::round(z.real());
  if (rounded > 0.5 || std::abs(z.real() - rounded) > tol) return false;
  if (q) *q = static_cast<int>(-rounded);
  return true;
}

Complex log_gamma_complex(Complex z) {
  int q = 0;
  if (is_gamma_pole(z, &q, 1e-14))
    throw PoleAtNonPositiveInteger("log_gamma_complex at z = -" +
                                   std::to_string(q));
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  return std::log(kPi) - std::log(std::sin(kPi * z)) -
         log_gamma_lanczos(1.0 - z);
}

TaggedValue gamma_cone(const MultiIndex& lambda) {
  const int m = lambda.m();
  int pole_order = 0;
  Complex log_sum = 0.25 * m * (m - 1) * std::log(kPi);
  for (int j = 1; j <= m; ++j) {
    const Complex arg = 0.5 * (lambda[j - 1] - static_cast<double>(j) + 1.0);
    int q = 0;
    if (is_gamma_pole(arg, &q)) {
      ++pole_order;
    } else {
      log_sum += log_gamma_complex(arg);
    }
  }
  if (pole_order > 0) return TaggedValue::pole(pole_order);
  return TaggedValue::finite(std::exp(log_sum));
}

TaggedValue siegel_gamma(Complex lambda, int m) {
  if (m < 1) throw InvalidDimensions("siegel_gamma: m < 1");
  int pole_order = 0;
  Complex log_sum = 0.25 * m * (m - 1) * std::log(kPi);
  for (int j = 0; j < m; ++j) {
    const Complex arg = lambda - 0.5 * j;
    int q = 0;
    if (is_gamma_pole(arg, &q)) {
      ++pole_order;
    } else {
      log_sum += log_gamma_complex(arg);
    }
  }
  if (pole_order > 0) return TaggedValue::pole(pole_order);
  return TaggedValue::finite(std::exp(log_sum));
}

double stiefel_volume(int n, int m) {
  if (m < 1 || m > n) throw InvalidDimensions("stiefel_volume");
  const TaggedValue gm = siegel_gamma(0.5 * n, m);
  // n >= m keeps every Siegel factor strictly positive.
  return std::pow(2.0, m) * std::pow(kPi, 0.5 * n * m) / gm.value.real();
}

double stiefel_volume_sphere_product(int n, int m) {
  if (m < 1 || m > n) throw InvalidDimensions("stiefel_volume_sphere_product");
  double prod = 1.0;
  for (int i = 1; i <= m; ++i) {
    const int d = n - i;  // |S^d|
    prod *= 2.0 * std::pow(kPi, 0.5 * (d + 1)) /
            std::exp(log_gamma_complex(0.5 * (d + 1)).real());
  }
  return prod;
}

namespace {

// One scalar Gamma factor of a Gamma_Omega ratio: its argument and the
// derivative of that argument with respect to the lambda component it
// depends on (always +-1/2 here).
struct GammaFactor {
  Complex arg;
  double deriv;
};

// Accumulates log of the product of factors; singular factors contribute
// the log of the 1/eps coefficient of the residue expansion
// Gamma(-q + d*eps) ~ (-1)^q / (q! d eps).
struct FactorProduct {
  Complex log_sum = 0.0;
  int poles = 0;

  void mul(const GammaFactor& f) {
    int q = 0;
    if (is_gamma_pole(f.arg, &q)) {
      ++poles;
      double lgq = 0.0;  // log q!
      for (int i = 2; i <= q; ++i) lgq += std::log(static_cast<double>(i));
      const double sign = ((q % 2 == 0) ? 1.0 : -1.0) / f.deriv;
      log_sum += std::log(std::abs(1.0 / f.deriv)) - lgq;
      if (sign < 0.0) log_sum += Complex(0.0, kPi);
    } else {
      log_sum += log_gamma_complex(f.arg);
    }
  }
};

}  // namespace

TaggedValue multiplier_mu(const MultiIndex& lambda, int k, int n) {
  const int m = lambda.m();
  if (k < 0 || n <= m) throw InvalidDimensions("multiplier_mu");
  // The pi^{m(m-1)/4} prefactors of the four cone gammas cancel.
  FactorProduct num, den;
  for (int j = 1; j <= m; ++j) {
    const Complex lj = lambda[j - 1];
    const double dj = static_cast<double>(j);
    const double md = static_cast<double>(m);
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    num.mul({0.5 * (lj + md - dj + 1.0), +0.5});       // Gamma_O(lambda + m0)
    num.mul({0.5 * (kd + dj - md - lj), -0.5});        // Gamma_O(k0 - lambda_*)
    den.mul({0.5 * (dj - md - lj), -0.5});             // Gamma_O(-lambda_*)
    den.mul({0.5 * (lj + kd + nd - dj + 1.0), +0.5});  // Gamma_O(l + k0 + n0)
  }
  const int net = num.poles - den.poles;
  if (net > 0) return TaggedValue::pole(net);
  if (net < 0) return TaggedValue::zero(-net);
  return TaggedValue::finite(std::exp(num.log_sum - den.log_sum));
}

Complex funk_hecke_constant(int n, int m, int k) {
  if (m < 1 || n <= m || k < 0) throw InvalidDimensions("funk_hecke_constant");
  static const Complex i_unit(0.0, 1.0);
  Complex phase = 1.0;
  for (int p = 0; p < (k * m) % 4; ++p) phase *= i_unit;
  return std::pow(kPi, 0.5 * m * (n - m)) * phase * stiefel_volume(m, m);
}

bool in_L_set(const MultiIndex& lambda) {
  const int m = lambda.m();
  for (int j = 1; j <= m; ++j)
    if (!(lambda[j - 1].real() > static_cast<double>(j - m - 1))) return false;
  return true;
}

bool in_Lambda_set(const MultiIndex& lambda, int n) {
  const int m = lambda.m();
  if (n < m) throw InvalidDimensions("in_Lambda_set: n < m");
  for (int j = 1; j <= m; ++j)
    if (!(lambda[j - 1].real() > static_cast<double>(j - n - 1))) return false;
  return true;
}

bool in_polar_set(const MultiIndex& lambda, int n, double tol) {
  const int m = lambda.m();
  if (n < m) throw InvalidDimensions("in_polar_set: n < m");
  for (int j = 1; j <= m; ++j) {
    const Complex lj = lambda[j - 1];
    if (std::abs(lj.imag()) > tol) continue;
    const double l = static_cast<double>(j - n) - lj.real();
    const double rounded = std::round(l);
    if (std::abs(l - rounded) > tol) continue;
    const auto li = static_cast<long>(rounded);
    if (li >= 1 && li % 2 == 1) return true;
  }
  return false;
}

bool condition_uhh_holds(const MultiIndex& lambda, double tol) {
  const int m = lambda.m();
  for (int j = 1; j <= m; ++j) {
    const Complex v = lambda[j - 1] + static_cast<double>(m - j);
    if (std::abs(v.imag()) > tol) continue;
    const double rounded = std::round(v.real());
    if (std::abs(v.real() - rounded) > tol) continue;
    const auto vi = static_cast<long>(rounded);
    if (vi >= 0 && vi % 2 == 0) return false;
  }
  return true;
}

const char* InjectivityVerdict::reason_name(Reason r) {
  switch (r) {
    case Reason::StrictlyInsideL: return "strictly_inside_L";
    case Reason::ViolatesUhh: return "violates_uhh";
    case Reason::RankOneRule: return "rank_one_rule";
    case Reason::RankGtOneRule: return "rank_gt_one_rule";
    case Reason::OutsideConvergence: return "outside_convergence";
  }
  return "unknown";
}

namespace {

std::string annihilated_description(double max_shifted) {
  std::ostringstream os;
  os << "{k : k > " << max_shifted << "}";
  return os.str();
}

// Real non-negative integer within tolerance; step = 1 or 2.
bool is_nonneg_integer_multiple(Complex lam, int step, double tol = 1e-12) {
  if (std::abs(lam.imag()) > tol) return false;
  const double rounded = std::round(lam.real());
  if (std::abs(lam.real() - rounded) > tol) return false;
  const auto li = static_cast<long>(rounded);
  return li >= 0 && li % step == 0;
}

}  // namespace

InjectivityVerdict injectivity_classify(const MultiIndex& lambda, int n) {
  const int m = lambda.m();
  if (n <= m) throw InvalidDimensions("injectivity_classify: need n > m");
  InjectivityVerdict v;
  if (!in_L_set(lambda)) {
    v.applicable = false;
    v.injective = false;
    v.reason = InjectivityVerdict::Reason::OutsideConvergence;
    v.note = "T^lambda is not an absolutely convergent operator here";
    return v;
  }
  double max_shifted = lambda[0].real() + m - 1;
  for (int j = 2; j <= m; ++j)
    max_shifted = std::max(max_shifted, lambda[j - 1].real() + m - j);

  if (lambda.is_constant(1e-12)) {
    const Complex lam = lambda[0];
    const int rank = std::min(m, n - m);
    const int step = (rank == 1) ? 2 : 1;
    v.reason = (rank == 1) ? InjectivityVerdict::Reason::RankOneRule
                           : InjectivityVerdict::Reason::RankGtOneRule;
    v.injective = !is_nonneg_integer_multiple(lam, step);
    if (!v.injective) v.annihilated_degrees = annihilated_description(max_shifted);
    return v;
  }
  if (condition_uhh_holds(lambda)) {
    v.injective = true;
    v.reason = InjectivityVerdict::Reason::StrictlyInsideL;
    return v;
  }
  v.reason = InjectivityVerdict::Reason::ViolatesUhh;
  if (2 * m <= n) {
    v.injective = false;
    v.annihilated_degrees = annihilated_description(max_shifted);
    v.note = "annihilation witness requires 2m <= n";
  } else {
    v.injective = false;
    v.known = false;
    v.note = "necessity of the zero-set criterion is open for 2m > n";
  }
  return v;
}

}  // namespace cct
