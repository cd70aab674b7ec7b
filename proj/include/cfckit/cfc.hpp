#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "function.hpp"
#include "spectrum.hpp"
#include "subalgebra.hpp"

namespace cfckit {

enum class JunkReason { PredicateFailed, EvalFailed, ZeroConditionFailed };

inline std::string_view to_string(JunkReason r) {
  switch (r) {
    case JunkReason::PredicateFailed:
      return "predicate_failed";
    case JunkReason::EvalFailed:
      return "eval_failed";
    case JunkReason::ZeroConditionFailed:
      return "zero_condition_failed";
  }
  return "predicate_failed";
}

/// Result of the calculus. A junk outcome always carries the exact zero
/// matrix.
struct CfcOutcome {
  ComplexMatrix value;
  bool junk = false;
  std::optional<JunkReason> reason;
  /// Set by cfc_n when a subalgebra is supplied: projection residual of
  /// the value against it.
  std::optional<Containment> range;

  static CfcOutcome junk_of(std::size_t n, JunkReason why) { return {ComplexMatrix(n), true, why, {}}; }
};

namespace detail {

// Moves an output value into the ring, within a band of tol * max(1, |w|).
inline std::optional<Scalar> settle_output(Scalar w, Ring ring, double tol) {
  if (ring == Ring::Complex) return w;
  const double band = tol * std::max(1.0, std::abs(w));
  if (std::abs(w.imag()) > band) return std::nullopt;
  if (ring == Ring::NNReal) {
    if (w.real() < -band) return std::nullopt;
    return Scalar(std::max(w.real(), 0.0), 0.0);
  }
  return Scalar(w.real(), 0.0);
}

// f evaluated once per cluster representative, nullopt on any failure.
inline std::optional<std::vector<Scalar>> eval_on_spectrum(const ScalarFunction& f,
                                                           const PreparedElement& p,
                                                           std::optional<Scalar> at_zero = {}) {
  std::vector<Scalar> values;
  values.reserve(p.spectrum.size());
  for (Scalar point : p.spectrum.points) {
    std::optional<Scalar> w = (at_zero && point == Scalar{}) ? at_zero : f(point);
    if (!w) return std::nullopt;
    w = settle_output(*w, p.ring, p.tol);
    if (!w) return std::nullopt;
    values.push_back(*w);
  }
  return values;
}

inline ComplexMatrix assemble(const PreparedElement& p, std::span<const Scalar> cluster_values) {
  std::vector<Scalar> diag(p.decomposition.lambda.size());
  for (std::size_t j = 0; j < diag.size(); ++j) diag[j] = cluster_values[p.spectrum.labels[j]];
  ComplexMatrix value = p.decomposition.apply(diag);
  if (p.ring != Ring::Complex) value = 0.5 * (value + adjoint(value));
  return value;
}

}  // namespace detail

/// cfc on an already prepared element; never throws on evaluation problems.
inline CfcOutcome cfc(const ScalarFunction& f, const PreparedElement& p) {
  const std::size_t n = p.a.dim();
  const auto values = detail::eval_on_spectrum(f, p);
  if (!values) return CfcOutcome::junk_of(n, JunkReason::EvalFailed);
  ComplexMatrix value = detail::assemble(p, *values);
  if (!value.is_finite()) return CfcOutcome::junk_of(n, JunkReason::EvalFailed);
  return {std::move(value), false, std::nullopt, std::nullopt};
}

/**
 * The unital calculus: u diag(f(lambda)) u* when the ring predicate holds and
 * f is defined at every spectral point, and the zero matrix otherwise.
 */
inline CfcOutcome cfc(const ScalarFunction& f, const ComplexMatrix& a, Ring ring,
                      const Tolerances& tols = {}) {
  const std::size_t n = a.dim();
  if (n == 0 || !a.is_finite()) return CfcOutcome::junk_of(n, JunkReason::PredicateFailed);
  std::optional<PreparedElement> p;
  try {
    p = prepare(a, ring, tols);
  } catch (const Error&) {
    // Predicate failures, restriction failures and non-convergence all mean
    // the element is outside the calculus' domain.
    return CfcOutcome::junk_of(n, JunkReason::PredicateFailed);
  }
  return cfc(f, *p);
}

/**
 * The non-unital calculus. Requires f(0) = 0 (within tol); the cluster at 0,
 * if any, is mapped to exactly 0 so the value lies in the non-unital
 * algebra generated by a. With a subalgebra B, a must lie in B (else
 * NotInSubalgebra) and the containment of the value in B is reported.
 */
inline CfcOutcome cfc_n(const ScalarFunction& f, const ComplexMatrix& a,
                        const StarSubalgebra* within, Ring ring, const Tolerances& tols = {}) {
  const std::size_t n = a.dim();
  if (within != nullptr && !subalgebra_contains(*within, a, tols.tol).contained)
    throw NotInSubalgebra("cfc_n: element is not in the subalgebra");
  if (n == 0 || !a.is_finite()) return CfcOutcome::junk_of(n, JunkReason::PredicateFailed);
  std::optional<PreparedElement> p;
  try {
    p = prepare(a, ring, tols);
  } catch (const Error&) {
    return CfcOutcome::junk_of(n, JunkReason::PredicateFailed);
  }
  const auto f0 = f(Scalar{});
  if (!f0 || !(std::abs(*f0) <= tols.tol)) return CfcOutcome::junk_of(n, JunkReason::ZeroConditionFailed);

  const auto values = detail::eval_on_spectrum(f, *p, Scalar{});
  if (!values) return CfcOutcome::junk_of(n, JunkReason::EvalFailed);
  CfcOutcome out{detail::assemble(*p, *values), false, std::nullopt, std::nullopt};
  if (!out.value.is_finite()) return CfcOutcome::junk_of(n, JunkReason::EvalFailed);
  if (within != nullptr) out.range = subalgebra_contains(*within, out.value, tols.tol);
  return out;
}

inline CfcOutcome cfc_n(const ScalarFunction& f, const ComplexMatrix& a, Ring ring,
                        const Tolerances& tols = {}) {
  return cfc_n(f, a, nullptr, ring, tols);
}

/// a+ = cfc_n(max(x, 0), a) over the reals.
inline CfcOutcome pos_part(const ComplexMatrix& a, const Tolerances& tols = {}) {
  return cfc_n(ScalarFunction::real("pos", [](double x) { return std::max(x, 0.0); }), a,
               Ring::Real, tols);
}

/// a- = cfc_n(max(-x, 0), a) over the reals.
inline CfcOutcome neg_part(const ComplexMatrix& a, const Tolerances& tols = {}) {
  return cfc_n(ScalarFunction::real("neg", [](double x) { return std::max(-x, 0.0); }), a,
               Ring::Real, tols);
}

inline CfcOutcome cfc_builtin(Builtin kind, const ComplexMatrix& a, Ring ring,
                              const Tolerances& tols = {}, double param = 0.0) {
  return cfc(builtin(kind, ring, param), a, ring, tols);
}

struct RealCfcOutcome {
  RealMatrix value;
  bool junk = false;
  std::optional<JunkReason> reason;
};

/**
 * The real calculus on real symmetric matrices: callers hand in a
 * Matrix<double> and a double -> double function and get a Matrix<double>
 * back.
 */
inline RealCfcOutcome cfc(const std::function<double(double)>& f, const RealMatrix& a,
                          const Tolerances& tols = {}) {
  const auto out = cfc(ScalarFunction::real("f", f), to_complex(a), Ring::Real, tols);
  return {real_part(out.value), out.junk, out.reason};
}

}  // namespace cfckit
