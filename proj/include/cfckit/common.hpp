#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace cfckit {

using Scalar = std::complex<double>;

/// Floor for relative residuals so that the zero element never divides by zero.
inline constexpr double kEpsFloor = 1e-300;

/// Library default for predicate and restriction tolerances (absolute for
/// scalars, relative for matrices).
inline constexpr double kDefaultTol = 1e-9;

/// Default cluster tolerance, relative to the operator norm of the element.
inline constexpr double kDefaultClusterRel = 1e-8;

struct Tolerances {
  double tol = kDefaultTol;
  /// Absolute cluster tolerance. Unset means kDefaultClusterRel * ||a||.
  std::optional<double> cluster_tol;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

class NotSelfadjoint : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class NotInSubalgebra : public Error {
 public:
  using Error::Error;
};

class NotASubalgebra : public Error {
 public:
  using Error::Error;
};

class PredicateFailure : public Error {
 public:
  using Error::Error;
};

class DuplicatePoints : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue or scalar that does not lie in the requested subring.
class RestrictionFailure : public Error {
 public:
  RestrictionFailure(Scalar value, double residual, const std::string& what)
      : Error(what), value_(value), residual_(residual) {}

  Scalar value() const noexcept { return value_; }
  double residual() const noexcept { return residual_; }

 private:
  Scalar value_;
  double residual_;
};

}  // namespace cfckit
