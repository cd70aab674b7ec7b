#pragma once

#include <algorithm>
#include <cmath>

#include "matrix.hpp"
#include "predicates.hpp"

namespace cfckit {

/// Element (z, a) of the minimal unitization C x A.
struct UnitizationElement {
  Scalar z{};
  ComplexMatrix a;

  static UnitizationElement unit(std::size_t n) { return {1.0, ComplexMatrix(n)}; }
  static UnitizationElement inclusion(ComplexMatrix a) { return {0.0, std::move(a)}; }
};

/// (z, a)(w, b) = (zw, zb + wa + ab)
inline UnitizationElement uni_mul(const UnitizationElement& x, const UnitizationElement& y) {
  if (x.a.dim() != y.a.dim()) throw DimensionMismatch("uni_mul: dimension mismatch");
  return {x.z * y.z, x.z * y.a + y.z * x.a + x.a * y.a};
}

inline UnitizationElement uni_add(const UnitizationElement& x, const UnitizationElement& y) {
  if (x.a.dim() != y.a.dim()) throw DimensionMismatch("uni_add: dimension mismatch");
  return {x.z + y.z, x.a + y.a};
}

inline UnitizationElement uni_star(const UnitizationElement& x) {
  return {std::conj(x.z), adjoint(x.a)};
}

/// max(|z|, ||z I + a||). In M_n the left-multiplication map m -> zm + am
/// has the same norm as the matrix z I + a.
inline double uni_norm(const UnitizationElement& x) {
  return std::max(std::abs(x.z), operator_norm(add_identity(x.a, x.z)));
}

/**
 * The same norm evaluated from its definition: the left-multiplication map
 * m -> z m + a m is materialized as an n^2 x n^2 matrix acting on vec(m)
 * and its operator norm is taken directly.
 */
inline double uni_norm_map(const UnitizationElement& x) {
  const std::size_t n = x.a.dim();
  const ComplexMatrix left = add_identity(x.a, x.z);
  // vec index of m(i, j) is i * n + j; (left * m)(i, j) = sum_k left(i, k) m(k, j).
  ComplexMatrix map(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) map(i * n + j, k * n + j) = left(i, k);
  return std::max(std::abs(x.z), operator_norm(map));
}

/// Faithful representation (z, a) -> z I (+) (z I + a) on C^{2n}.
inline ComplexMatrix uni_represent(const UnitizationElement& x) {
  const std::size_t n = x.a.dim();
  return direct_sum(add_identity(ComplexMatrix(n), x.z), add_identity(x.a, x.z));
}

}  // namespace cfckit
