#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfc.hpp"
#include "function.hpp"
#include "matrix.hpp"
#include "predicates.hpp"
#include "spectrum.hpp"

namespace cfckit {

struct StarTerm {
  unsigned k = 0;  // power of z
  unsigned m = 0;  // power of conj(z)
  Scalar c{};
};

/// Sum of c * z^k * conj(z)^m with distinct (k, m).
class StarPolynomial {
 public:
  StarPolynomial() = default;

  /// Ascending coefficients of a polynomial in z alone.
  static StarPolynomial in_z(std::span<const Scalar> coefficients) {
    StarPolynomial p;
    for (std::size_t k = 0; k < coefficients.size(); ++k)
      p.add_term(static_cast<unsigned>(k), 0, coefficients[k]);
    return p;
  }

  /// Adds to the coefficient of z^k conj(z)^m, merging repeated exponents.
  void add_term(unsigned k, unsigned m, Scalar c) { terms_[{k, m}] += c; }

  std::vector<StarTerm> terms() const {
    std::vector<StarTerm> out;
    for (const auto& [km, c] : terms_) out.push_back({km.first, km.second, c});
    return out;
  }

  bool pure_z() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.second == 0; });
  }

  /// Coefficient of z^k conj(z)^m (0 when absent).
  Scalar coefficient(unsigned k, unsigned m = 0) const {
    auto it = terms_.find({k, m});
    return it == terms_.end() ? Scalar{} : it->second;
  }

  Scalar operator()(Scalar z) const {
    Scalar s{};
    for (const auto& [km, c] : terms_)
      s += c * std::pow(z, static_cast<int>(km.first)) * std::pow(std::conj(z), static_cast<int>(km.second));
    return s;
  }

  ScalarFunction as_function(Ring ring = Ring::Complex, std::string name = "poly") const {
    StarPolynomial copy = *this;
    return {ring, [copy](Scalar z) -> std::optional<Scalar> { return ScalarFunction::finite_or_none(copy(z)); },
            std::move(name)};
  }

 private:
  std::map<std::pair<unsigned, unsigned>, Scalar> terms_;
};

/**
 * sum c a^k (a*)^m by plain matrix arithmetic, with Horner in a for each
 * power of a*. Requires a to be normal so the substitution is unambiguous.
 */
inline ComplexMatrix poly_eval(const StarPolynomial& p, const ComplexMatrix& a,
                               double tol = kDefaultTol) {
  if (!is_star_normal(a, tol).holds) throw NotNormal("poly_eval: element is not normal");
  const std::size_t n = a.dim();
  std::map<unsigned, std::vector<Scalar>> by_m;
  for (const auto& t : p.terms()) {
    auto& coeffs = by_m[t.m];
    if (coeffs.size() <= t.k) coeffs.resize(t.k + 1, Scalar{});
    coeffs[t.k] += t.c;
  }
  const ComplexMatrix as = adjoint(a);
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  ComplexMatrix out(n);
  for (const auto& [m, coeffs] : by_m) {
    ComplexMatrix acc(n);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * a + coeffs[k] * eye;
    out += acc * matrix_power(as, m);
  }
  return out;
}

struct Interpolant {
  StarPolynomial poly;
  /// max |p(x_j) - v_j| / max(1, max |v_j|)
  double max_residual = 0.0;
};

/// The unique polynomial in z of degree < k through (points_j, values_j).
inline Interpolant lagrange_interpolant(std::span<const Scalar> points,
                                        std::span<const Scalar> values) {
  const std::size_t k = points.size();
  if (values.size() != k) throw DimensionMismatch("lagrange_interpolant: size mismatch");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (points[i] == points[j]) throw DuplicatePoints("lagrange_interpolant: repeated node");

  std::vector<Scalar> coeffs(k, Scalar{});
  for (std::size_t j = 0; j < k; ++j) {
    // Expand prod_{i != j} (z - x_i) in ascending coefficients.
    std::vector<Scalar> basis{Scalar{1.0}};
    Scalar denom{1.0};
    for (std::size_t i = 0; i < k; ++i) {
      if (i == j) continue;
      std::vector<Scalar> next(basis.size() + 1, Scalar{});
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= points[i] * basis[d];
      }
      basis = std::move(next);
      denom *= points[j] - points[i];
    }
    const Scalar w = values[j] / denom;
    for (std::size_t d = 0; d < basis.size(); ++d) coeffs[d] += w * basis[d];
  }

  Interpolant out;
  out.poly = StarPolynomial::in_z(coeffs);
  double vmax = 1.0;
  for (Scalar v : values) vmax = std::max(vmax, std::abs(v));
  for (std::size_t j = 0; j < k; ++j) {
    // Horner on the ascending coefficients.
    Scalar s{};
    for (std::size_t d = k; d-- > 0;) s = s * points[j] + coeffs[d];
    out.max_residual = std::max(out.max_residual, std::abs(s - values[j]) / vmax);
  }
  return out;
}

struct OracleResult {
  std::optional<ComplexMatrix> value;
  bool skipped = false;
  std::string skip_reason;
  double interpolation_residual = 0.0;
  double min_gap = 0.0;
  double diameter = 0.0;
};

/// Minimum spectral gap below which interpolation is not attempted,
/// relative to the spectral diameter.
inline constexpr double kOracleGapRel = 1e-6;

/**
 * f(a) through polynomials instead of the diagonalization: interpolate f on
 * the clustered spectrum and evaluate the interpolant on a with poly_eval.
 */
inline OracleResult cfc_oracle(const ScalarFunction& f, const ComplexMatrix& a, Ring ring,
                               const Tolerances& tols = {}) {
  OracleResult out;
  std::optional<PreparedElement> p;
  try {
    p = prepare(a, ring, tols);
  } catch (const Error& e) {
    out.skipped = true;
    out.skip_reason = std::string("not in the calculus domain: ") + e.what();
    return out;
  }
  const auto& pts = p->spectrum.points;
  out.diameter = diameter(pts);
  out.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      out.min_gap = std::min(out.min_gap, std::abs(pts[i] - pts[j]));
  if (pts.size() > 1 && out.min_gap < kOracleGapRel * out.diameter) {
    out.skipped = true;
    out.skip_reason = "ill-conditioned nodes";
    return out;
  }
  const auto values = detail::eval_on_spectrum(f, *p);
  if (!values) {
    out.skipped = true;
    out.skip_reason = "function undefined on the spectrum";
    return out;
  }
  const auto interp = lagrange_interpolant(pts, *values);
  out.interpolation_residual = interp.max_residual;
  out.value = poly_eval(interp.poly, a, tols.tol);
  return out;
}

}  // namespace cfckit
