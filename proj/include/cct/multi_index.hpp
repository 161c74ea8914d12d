#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <vector>

#include "cct/errors.hpp"

namespace cct {

using Complex = std::complex<double>;

/// A vector lambda in C^m parameterizing composite powers, cone gammas and
/// the transforms built on them.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<Complex> components)
      : components_(std::move(components)) {
    if (components_.empty()) throw InvalidDimensions("MultiIndex: empty");
  }
  MultiIndex(std::initializer_list<Complex> init)
      : MultiIndex(std::vector<Complex>(init)) {}

  /// Constant index lambda_0 = (lam, ..., lam).
  static MultiIndex constant(Complex lam, int m) {
    return MultiIndex(std::vector<Complex>(static_cast<std::size_t>(m), lam));
  }

  int m() const { return static_cast<int>(components_.size()); }
  const Complex& operator[](int j) const {
    return components_[static_cast<std::size_t>(j)];
  }
  const std::vector<Complex>& components() const { return components_; }

  /// (lambda_*)_j = lambda_{m-j+1}; an involution.
  MultiIndex reversed() const {
    std::vector<Complex> rev(components_.rbegin(), components_.rend());
    return MultiIndex(std::move(rev));
  }

  /// |lambda| = sum of the components.
  Complex total() const {
    Complex s = 0.0;
    for (const auto& c : components_) s += c;
    return s;
  }

  MultiIndex operator+(const MultiIndex& other) const {
    if (other.m() != m()) throw InvalidDimensions("MultiIndex: size mismatch");
    std::vector<Complex> out(components_);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.components_[j];
    return MultiIndex(std::move(out));
  }

  MultiIndex operator-() const {
    std::vector<Complex> out(components_);
    for (auto& c : out) c = -c;
    return MultiIndex(std::move(out));
  }

  MultiIndex operator-(const MultiIndex& other) const {
    return *this + (-other);
  }

  /// Shift by the constant index alpha_0.
  MultiIndex shifted(Complex alpha) const {
    return *this + constant(alpha, m());
  }

  bool is_constant(double tol = 0.0) const {
    for (const auto& c : components_)
      if (std::abs(c - components_[0]) > tol) return false;
    return true;
  }

  bool operator==(const MultiIndex& other) const {
    return components_ == other.components_;
  }

 private:
  std::vector<Complex> components_;
};

}  // namespace cct
