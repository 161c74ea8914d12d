#pragma once

#include <stdexcept>
#include <string>

namespace cct {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A Cholesky pivot fell at or below the positivity floor.
struct NotPositiveDefinite : Error {
  using Error::Error;
};

// Input matrix does not have full column rank.
struct RankDeficient : Error {
  using Error::Error;
};

struct InvalidDimensions : Error {
  using Error::Error;
};

// log-gamma requested at a non-positive integer.
struct PoleAtNonPositiveInteger : Error {
  using Error::Error;
};

// Transform or zeta integral requested outside its absolute-convergence set.
struct ConvergenceDomain : Error {
  using Error::Error;
};

// Two cone-quadrature refinements disagree beyond tolerance.
struct QuadratureNotConverged : Error {
  using Error::Error;
};

// H-polynomial construction needs 2m <= n.
struct DimensionsTooSmall : Error {
  using Error::Error;
};

// Rayleigh-quotient check found no frame with |P(u)| above threshold.
struct ThresholdNotMet : Error {
  using Error::Error;
};

}  // namespace cct
