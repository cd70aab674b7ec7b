#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>

#include "hermitian_kernel.hpp"
#include "matrix.hpp"
#include "scalars.hpp"

namespace cfckit {

/// Largest singular value: sqrt of the top eigenvalue of a* a.
inline double operator_norm(const ComplexMatrix& a) {
  if (a.dim() == 0) return 0.0;
  if (max_abs_entry(a) == 0.0) return 0.0;
  const auto eig = detail::jacobi_hermitian(adjoint(a) * a);
  if (!eig.converged) throw NoConvergence("operator_norm: Jacobi sweep limit exceeded");
  return std::sqrt(std::max(eig.values.back(), 0.0));
}

inline double operator_norm(const RealMatrix& a) { return operator_norm(to_complex(a)); }

enum class PredicateKind { Normal, Selfadjoint, Nonneg };

inline std::string_view to_string(PredicateKind p) {
  switch (p) {
    case PredicateKind::Normal:
      return "normal";
    case PredicateKind::Selfadjoint:
      return "selfadjoint";
    case PredicateKind::Nonneg:
      return "nonneg";
  }
  return "normal";
}

struct PredicateReport {
  PredicateKind predicate = PredicateKind::Normal;
  bool holds = false;
  double residual = 0.0;
  double tol_used = 0.0;
};

inline PredicateReport make_report(PredicateKind kind, double residual, double tol) {
  return {kind, residual <= tol, residual, tol};
}

/// Residual ||a*a - aa*|| / max(||a||^2, floor).
inline PredicateReport is_star_normal(const ComplexMatrix& a, double tol = kDefaultTol) {
  const ComplexMatrix as = adjoint(a);
  const double na = operator_norm(a);
  const double residual = operator_norm(as * a - a * as) / std::max(na * na, kEpsFloor);
  return make_report(PredicateKind::Normal, residual, tol);
}

/// Residual ||a - a*|| / max(||a||, floor).
inline PredicateReport is_selfadjoint(const ComplexMatrix& a, double tol = kDefaultTol) {
  const double na = operator_norm(a);
  const double residual = operator_norm(a - adjoint(a)) / std::max(na, kEpsFloor);
  return make_report(PredicateKind::Selfadjoint, residual, tol);
}

/// Selfadjoint with every eigenvalue >= -tol * ||a||. The residual is the
/// larger of the selfadjoint residual and the relative negative excursion.
inline PredicateReport is_nonneg(const ComplexMatrix& a, double tol = kDefaultTol) {
  const auto sa = is_selfadjoint(a, tol);
  if (!sa.holds) return make_report(PredicateKind::Nonneg, sa.residual, tol);
  const double na = operator_norm(a);
  if (na == 0.0) return make_report(PredicateKind::Nonneg, 0.0, tol);
  const auto eig = detail::jacobi_hermitian(a);
  if (!eig.converged) throw NoConvergence("is_nonneg: Jacobi sweep limit exceeded");
  const double neg = std::max(0.0, -eig.values.front()) / na;
  return make_report(PredicateKind::Nonneg, std::max(sa.residual, neg), tol);
}

inline PredicateKind predicate_for(Ring ring) {
  switch (ring) {
    case Ring::Complex:
      return PredicateKind::Normal;
    case Ring::Real:
      return PredicateKind::Selfadjoint;
    case Ring::NNReal:
      return PredicateKind::Nonneg;
  }
  return PredicateKind::Normal;
}

inline PredicateReport ring_predicate(const ComplexMatrix& a, Ring ring, double tol = kDefaultTol) {
  switch (ring) {
    case Ring::Complex:
      return is_star_normal(a, tol);
    case Ring::Real:
      return is_selfadjoint(a, tol);
    case Ring::NNReal:
      return is_nonneg(a, tol);
  }
  return is_star_normal(a, tol);
}

/// Loewner order: x <= y when y - x is nonnegative.
inline bool loewner_le(const ComplexMatrix& x, const ComplexMatrix& y, double tol = kDefaultTol) {
  return is_nonneg(y - x, tol).holds;
}

}  // namespace cfckit
