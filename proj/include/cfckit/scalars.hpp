#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace cfckit {

/// Scalar rings the calculus is indexed by. Each selects a predicate on
/// elements: Complex -> normal, Real -> selfadjoint, NNReal -> nonnegative.
enum class Ring { Complex, Real, NNReal };

inline std::string_view to_string(Ring r) {
  switch (r) {
    case Ring::Complex:
      return "complex";
    case Ring::Real:
      return "real";
    case Ring::NNReal:
      return "nnreal";
  }
  return "complex";
}

inline std::optional<Ring> ring_from_string(std::string_view s) {
  if (s == "complex") return Ring::Complex;
  if (s == "real") return Ring::Real;
  if (s == "nnreal") return Ring::NNReal;
  return std::nullopt;
}

/// True when `sub` is contained in `super` (NNReal <= Real <= Complex).
inline bool ring_contains(Ring super, Ring sub) {
  return static_cast<int>(super) <= static_cast<int>(sub);
}

inline Scalar star(Scalar z) { return std::conj(z); }

/// Canonical inclusion of a real (or nonnegative real) into `target`.
inline Scalar embed(double x, [[maybe_unused]] Ring target = Ring::Complex) {
  return {x, 0.0};
}

/// Restricts `z` to the subring `target`. For NNReal, values in [-tol, 0)
/// are clamped to 0. Complex is the identity on the real part only if the
/// imaginary part vanishes, so it is rejected as a restriction target.
inline double restrict_scalar(Scalar z, Ring target, double tol = kDefaultTol) {
  if (target == Ring::Complex) {
    throw Error("restrict_scalar: Complex is not a proper subring target");
  }
  const double im_residual = std::abs(z.imag());
  if (!(im_residual <= tol)) {
    throw RestrictionFailure(z, im_residual,
                             "restrict_scalar: imaginary part " +
                                 std::to_string(z.imag()) + " exceeds tolerance");
  }
  if (target == Ring::NNReal) {
    if (!(z.real() >= -tol)) {
      throw RestrictionFailure(z, -z.real(),
                               "restrict_scalar: negative value " +
                                   std::to_string(z.real()) + " is not in nnreal");
    }
    return std::max(z.real(), 0.0);
  }
  return z.real();
}

/// Subtraction on the nonnegative reals: x - y := 0 when x <= y.
inline double truncated_sub(double x, double y) { return std::max(x - y, 0.0); }

struct RestrictionCheck {
  bool ok = true;
  std::vector<double> restricted_values;
  double max_residual = 0.0;
};

/// Batch restriction that reports instead of throwing.
inline RestrictionCheck check_restriction(std::span<const Scalar> values, Ring target,
                                          double tol = kDefaultTol) {
  RestrictionCheck out;
  out.restricted_values.reserve(values.size());
  for (Scalar z : values) {
    double residual = std::abs(z.imag());
    if (target == Ring::NNReal) residual = std::max(residual, -z.real());
    out.max_residual = std::max(out.max_residual, residual);
    try {
      out.restricted_values.push_back(restrict_scalar(z, target, tol));
    } catch (const RestrictionFailure&) {
      out.ok = false;
      out.restricted_values.push_back(target == Ring::NNReal ? std::max(z.real(), 0.0)
                                                             : z.real());
    }
  }
  return out;
}

}  // namespace cfckit
