#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eigen.hpp"
#include "predicates.hpp"
#include "scalars.hpp"
#include "subalgebra.hpp"
#include "unitization.hpp"

namespace cfckit {

enum class SpectrumSource { Eigen, IntrinsicQuasi, UnitizationQuasi };

inline std::string_view to_string(SpectrumSource s) {
  switch (s) {
    case SpectrumSource::Eigen:
      return "eigen";
    case SpectrumSource::IntrinsicQuasi:
      return "intrinsic_quasi";
    case SpectrumSource::UnitizationQuasi:
      return "unitization_quasi";
  }
  return "eigen";
}

struct SpectrumResult {
  Ring ring = Ring::Complex;
  /// Points already restricted to `ring` (imaginary part exactly 0 for
  /// Real and NNReal).
  ClusteredSpectrum points;
  SpectrumSource source = SpectrumSource::Eigen;
};

/**
 * An element that passed its ring predicate, together with its spectral
 * decomposition and ring-restricted clustered spectrum. This is the shared
 * front half of spectrum queries and of the calculus.
 */
struct PreparedElement {
  ComplexMatrix a;
  Ring ring = Ring::Complex;
  double norm = 0.0;
  double tol = kDefaultTol;
  double cluster_tol = 0.0;
  SpectralDecomposition decomposition;
  ClusteredSpectrum spectrum;
};

/// Throws PredicateFailure, RestrictionFailure or NoConvergence.
inline PreparedElement prepare(const ComplexMatrix& a, Ring ring, const Tolerances& tols = {}) {
  if (a.dim() == 0) throw DimensionMismatch("prepare: empty matrix");
  const auto report = ring_predicate(a, ring, tols.tol);
  if (!report.holds) {
    throw PredicateFailure("element is not " + std::string(to_string(report.predicate)) +
                           " (residual " + std::to_string(report.residual) + ")");
  }
  PreparedElement p;
  p.a = a;
  p.ring = ring;
  p.norm = operator_norm(a);
  p.tol = tols.tol;
  p.cluster_tol = tols.cluster_tol.value_or(kDefaultClusterRel * p.norm);
  p.decomposition = normal_spectral_decomposition(a, {tols.tol, p.cluster_tol});
  p.spectrum = cluster_eigenvalues(p.decomposition.lambda, p.cluster_tol, /*snap_zero=*/true);
  if (ring != Ring::Complex) {
    const double band = tols.tol * std::max(p.norm, kEpsFloor);
    for (auto& z : p.spectrum.points) z = restrict_scalar(z, ring, band);
  }
  return p;
}

/// sigma_R(a): predicate check, eigenvalues, clustering, ring restriction.
inline SpectrumResult spectrum(const ComplexMatrix& a, Ring ring, const Tolerances& tols = {}) {
  auto p = prepare(a, ring, tols);
  return {ring, std::move(p.spectrum), SpectrumSource::Eigen};
}

/// Hausdorff distance between two finite sets of scalars.
inline double hausdorff_distance(std::span<const Scalar> x, std::span<const Scalar> y) {
  if (x.empty() && y.empty()) return 0.0;
  if (x.empty() || y.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](std::span<const Scalar> from, std::span<const Scalar> to) {
    double worst = 0.0;
    for (Scalar p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (Scalar q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(x, y), directed(y, x));
}

inline double diameter(std::span<const Scalar> x) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) d = std::max(d, std::abs(x[i] - x[j]));
  return d;
}

/// y with x + y + xy = 0 = y + x + yx.
struct QuasiregularWitness {
  ComplexMatrix x;
  ComplexMatrix y;
  double residual = 0.0;
};

struct QuasiregularResult {
  bool quasiregular = false;
  std::optional<QuasiregularWitness> witness;
  /// Independent verdict: I + x invertible in M_n and (I + x)^{-1} - I in B.
  bool ambient_verdict = false;
  /// max of the two relative residuals of the best candidate y found in B.
  double residual = 0.0;
};

namespace detail {

// Solves the Hermitian positive semidefinite system g c = rhs by Gaussian
// elimination with complete pivoting. Pivots below rel_tol * max|diag| are
// treated as zero and their unknowns set to 0.
inline std::vector<Scalar> solve_pivoted(ComplexMatrix g, std::vector<Scalar> rhs,
                                         double rel_tol = 1e-14) {
  const std::size_t k = g.dim();
  std::vector<std::size_t> col_perm(k);
  std::iota(col_perm.begin(), col_perm.end(), std::size_t{0});
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(g(i, i)));
  std::size_t rank = 0;
  for (; rank < k; ++rank) {
    std::size_t pr = rank;
    std::size_t pc = rank;
    double best = 0.0;
    for (std::size_t i = rank; i < k; ++i)
      for (std::size_t j = rank; j < k; ++j)
        if (std::abs(g(i, j)) > best) {
          best = std::abs(g(i, j));
          pr = i;
          pc = j;
        }
    if (best <= rel_tol * scale || best == 0.0) break;
    for (std::size_t j = 0; j < k; ++j) std::swap(g(rank, j), g(pr, j));
    std::swap(rhs[rank], rhs[pr]);
    for (std::size_t i = 0; i < k; ++i) std::swap(g(i, rank), g(i, pc));
    std::swap(col_perm[rank], col_perm[pc]);
    for (std::size_t i = rank + 1; i < k; ++i) {
      const Scalar f = g(i, rank) / g(rank, rank);
      if (f == Scalar{}) continue;
      for (std::size_t j = rank; j < k; ++j) g(i, j) -= f * g(rank, j);
      rhs[i] -= f * rhs[rank];
    }
  }
  std::vector<Scalar> permuted(k, Scalar{});
  for (std::size_t ii = rank; ii-- > 0;) {
    Scalar s = rhs[ii];
    for (std::size_t j = ii + 1; j < rank; ++j) s -= g(ii, j) * permuted[j];
    permuted[ii] = s / g(ii, ii);
  }
  std::vector<Scalar> c(k, Scalar{});
  for (std::size_t j = 0; j < k; ++j) c[col_perm[j]] = permuted[j];
  return c;
}

inline double quasi_residual(const ComplexMatrix& x, const ComplexMatrix& y) {
  const double scale = std::max(1.0, frobenius_norm(x) * frobenius_norm(x));
  const double left = frobenius_norm(x + y + x * y);
  const double right = frobenius_norm(y + x + y * x);
  return std::max(left, right) / scale;
}

}  // namespace detail

/**
 * Quasiregularity of x inside B. The primary verdict solves (I + x) y = -x
 * for y in span(B) by least squares in basis coordinates and accepts when
 * both quasiregularity residuals are <= tol (relative to max(1, ||x||^2)).
 */
inline QuasiregularResult is_quasiregular(const StarSubalgebra& b, const ComplexMatrix& x,
                                          double tol = kDefaultTol) {
  if (x.dim() != b.ambient_dim()) throw DimensionMismatch("is_quasiregular: dimension mismatch");
  if (!subalgebra_contains(b, x, tol).contained)
    throw NotInSubalgebra("is_quasiregular: x is not in the subalgebra");

  const std::size_t n = x.dim();
  const std::size_t k = b.dim();
  const ComplexMatrix one_plus_x = add_identity(x, Scalar{1.0});

  QuasiregularResult out;
  // Columns of the n^2 x k system are (I + x) b_j.
  std::vector<ComplexMatrix> cols;
  cols.reserve(k);
  for (const auto& q : b.basis()) cols.push_back(one_plus_x * q);
  ComplexMatrix gram(k);
  std::vector<Scalar> rhs(k);
  const ComplexMatrix minus_x = -x;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = frobenius_inner(cols[i], cols[j]);
    rhs[i] = frobenius_inner(cols[i], minus_x);
  }
  const auto coords = detail::solve_pivoted(gram, rhs);
  const ComplexMatrix y = k > 0 ? b.combine(coords) : ComplexMatrix(n);
  out.residual = detail::quasi_residual(x, y);
  out.quasiregular = out.residual <= tol;
  if (out.quasiregular) out.witness = QuasiregularWitness{x, y, out.residual};

  if (const auto inv = inverse(one_plus_x)) {
    const ComplexMatrix y_ambient = add_identity(*inv, Scalar{-1.0});
    out.ambient_verdict = subalgebra_contains(b, y_ambient, tol).contained;
  }
  return out;
}

namespace detail {

inline void restrict_points(ClusteredSpectrum& s, Ring ring, double band) {
  if (ring == Ring::Complex) return;
  for (auto& z : s.points) z = restrict_scalar(z, ring, band);
}

}  // namespace detail

/**
 * Quasispectrum of a inside B from quasiregularity alone: 0, together with
 * every nonzero ambient eigenvalue r for which -a/r is not quasiregular in
 * B. Multiplicities are ambient ones; 0 additionally counts the adjoined
 * unit direction.
 */
inline SpectrumResult quasispectrum_intrinsic(const StarSubalgebra& b, const ComplexMatrix& a,
                                              Ring ring, const Tolerances& tols = {}) {
  if (a.dim() != b.ambient_dim())
    throw DimensionMismatch("quasispectrum_intrinsic: dimension mismatch");
  if (!subalgebra_contains(b, a, tols.tol).contained)
    throw NotInSubalgebra("quasispectrum_intrinsic: element is not in the subalgebra");
  const auto p = prepare(a, ring, tols);

  SpectrumResult out;
  out.ring = ring;
  out.source = SpectrumSource::IntrinsicQuasi;
  out.points.cluster_tol = p.cluster_tol;
  out.points.points.push_back(0.0);
  out.points.multiplicities.push_back(1);
  for (std::size_t i = 0; i < p.spectrum.size(); ++i) {
    const Scalar r = p.spectrum.points[i];
    if (r == Scalar{}) {
      out.points.multiplicities[0] += p.spectrum.multiplicities[i];
      continue;
    }
    const ComplexMatrix x = (-1.0 / r) * a;
    if (!is_quasiregular(b, x, tols.tol).quasiregular) {
      out.points.points.push_back(r);
      out.points.multiplicities.push_back(p.spectrum.multiplicities[i]);
    }
  }
  // Re-sort with 0 in its lexicographic place.
  std::vector<std::size_t> order(out.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return detail::lex_less(out.points.points[x], out.points.points[y]);
  });
  ClusteredSpectrum sorted;
  sorted.cluster_tol = out.points.cluster_tol;
  for (std::size_t i : order) {
    sorted.points.push_back(out.points.points[i]);
    sorted.multiplicities.push_back(out.points.multiplicities[i]);
  }
  out.points = std::move(sorted);
  return out;
}

/**
 * Quasispectrum as the spectrum of (0, a) in the unitization, computed on
 * the block representation 0_n (+) a. The n-fold zero block is reported as a
 * single unit direction so multiplicities match the intrinsic route.
 */
inline SpectrumResult quasispectrum_via_unitization(const ComplexMatrix& a, Ring ring,
                                                    const Tolerances& tols = {}) {
  const auto report = ring_predicate(a, ring, tols.tol);
  if (!report.holds) {
    throw PredicateFailure("element is not " + std::string(to_string(report.predicate)));
  }
  const std::size_t n = a.dim();
  const ComplexMatrix rep = uni_represent(UnitizationElement::inclusion(a));
  Tolerances t = tols;
  if (!t.cluster_tol) t.cluster_tol = kDefaultClusterRel * operator_norm(a);
  auto result = spectrum(rep, ring, t);
  result.source = SpectrumSource::UnitizationQuasi;
  for (std::size_t i = 0; i < result.points.size(); ++i)
    if (result.points.points[i] == Scalar{}) result.points.multiplicities[i] -= n - 1;
  result.points.labels.clear();
  return result;
}

}  // namespace cfckit
