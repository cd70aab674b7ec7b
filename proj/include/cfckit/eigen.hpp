#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hermitian_kernel.hpp"
#include "matrix.hpp"
#include "predicates.hpp"

namespace cfckit {

/// a = u diag(lambda) u*, with u unitary.
struct SpectralDecomposition {
  ComplexMatrix u;
  std::vector<Scalar> lambda;
  /// ||a - u diag(lambda) u*||_F / max(||a||_F, floor) for the source matrix.
  double residual = 0.0;

  ComplexMatrix reconstruct() const { return apply(lambda); }

  /// u diag(values) u*.
  ComplexMatrix apply(std::span<const Scalar> values) const {
    const std::size_t n = u.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Scalar s{};
        for (std::size_t k = 0; k < n; ++k) s += u(i, k) * values[k] * std::conj(u(j, k));
        out(i, j) = s;
      }
    }
    return out;
  }
};

/// The finite set sigma(a) as distinct representatives with multiplicities.
struct ClusteredSpectrum {
  std::vector<Scalar> points;
  std::vector<std::size_t> multiplicities;
  double cluster_tol = 0.0;
  /// labels[j] is the index in `points` of the cluster holding input value j.
  std::vector<std::size_t> labels;

  std::size_t size() const noexcept { return points.size(); }
};

namespace detail {

inline bool lex_less(Scalar a, Scalar b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

inline double relative_residual(const ComplexMatrix& a, const SpectralDecomposition& d) {
  return frobenius_norm(a - d.reconstruct()) / std::max(frobenius_norm(a), kEpsFloor);
}

inline void sort_decomposition(SpectralDecomposition& d) {
  const std::size_t n = d.lambda.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return lex_less(d.lambda[x], d.lambda[y]); });
  SpectralDecomposition sorted;
  sorted.u = ComplexMatrix(n);
  sorted.lambda.resize(n);
  for (std::size_t col = 0; col < n; ++col) {
    sorted.lambda[col] = d.lambda[order[col]];
    for (std::size_t k = 0; k < n; ++k) sorted.u(k, col) = d.u(k, order[col]);
  }
  sorted.residual = d.residual;
  d = std::move(sorted);
}

}  // namespace detail

/**
 * Single-linkage clustering in the complex plane. Representatives are the
 * mean of their members; clusters whose representatives end up within
 * `cluster_tol` are merged again so that the distinctness invariant holds.
 * With `snap_zero`, a representative within `cluster_tol` of 0 becomes 0.
 */
inline ClusteredSpectrum cluster_eigenvalues(std::span<const Scalar> lambda, double cluster_tol,
                                             bool snap_zero = false) {
  const std::size_t n = lambda.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(lambda[i] - lambda[j]) <= cluster_tol) unite(i, j);

  auto representatives = [&] {
    std::vector<Scalar> sum(n, Scalar{});
    std::vector<std::size_t> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[find(i)] += lambda[i];
      ++count[find(i)];
    }
    std::vector<Scalar> rep(n, Scalar{});
    for (std::size_t i = 0; i < n; ++i)
      if (count[i] > 0) rep[i] = sum[i] / static_cast<double>(count[i]);
    if (snap_zero) {
      for (std::size_t i = 0; i < n; ++i)
        if (count[i] > 0 && std::abs(rep[i]) <= cluster_tol) rep[i] = 0.0;
    }
    return std::pair{rep, count};
  };

  for (bool merged = true; merged;) {
    merged = false;
    auto [rep, count] = representatives();
    for (std::size_t i = 0; i < n && !merged; ++i) {
      if (count[i] == 0) continue;
      for (std::size_t j = i + 1; j < n && !merged; ++j) {
        if (count[j] == 0) continue;
        if (std::abs(rep[i] - rep[j]) <= cluster_tol) {
          unite(i, j);
          merged = true;
        }
      }
    }
  }

  auto [rep, count] = representatives();
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] > 0) roots.push_back(i);
  std::stable_sort(roots.begin(), roots.end(),
                   [&](std::size_t x, std::size_t y) { return detail::lex_less(rep[x], rep[y]); });

  ClusteredSpectrum out;
  out.cluster_tol = cluster_tol;
  std::vector<std::size_t> index_of_root(n, 0);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    index_of_root[roots[k]] = k;
    out.points.push_back(rep[roots[k]]);
    out.multiplicities.push_back(count[roots[k]]);
  }
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = index_of_root[find(i)];
  return out;
}

/// Eigenvalues sorted ascending; eigenvectors are the columns of u.
inline SpectralDecomposition hermitian_eigen(const ComplexMatrix& h, double tol = kDefaultTol) {
  if (!is_selfadjoint(h, tol).holds) throw NotSelfadjoint("hermitian_eigen: input is not selfadjoint");
  const auto raw = detail::jacobi_hermitian(h);
  if (!raw.converged) throw NoConvergence("hermitian_eigen: Jacobi sweep limit exceeded");
  SpectralDecomposition d;
  d.u = raw.vectors;
  d.lambda.assign(raw.values.begin(), raw.values.end());
  d.residual = detail::relative_residual(h, d);
  return d;
}

/**
 * Diagonalizes a normal matrix through its commuting Hermitian parts
 * h = (a + a*)/2 and k = (a - a*)/(2i): first h, then the compression of k
 * to each eigenvalue cluster of h. Eigenvalues are the Rayleigh quotients
 * u_j* a u_j, sorted by (re, im).
 */
inline SpectralDecomposition normal_spectral_decomposition(const ComplexMatrix& a,
                                                           const Tolerances& tols = {}) {
  const std::size_t n = a.dim();
  if (n == 0) throw DimensionMismatch("normal_spectral_decomposition: empty matrix");
  if (!is_star_normal(a, tols.tol).holds)
    throw NotNormal("normal_spectral_decomposition: input is not normal");
  if (n == 1) {
    return SpectralDecomposition{ComplexMatrix::identity(1), {a(0, 0)}, 0.0};
  }

  const ComplexMatrix as = adjoint(a);
  const ComplexMatrix h = 0.5 * (a + as);
  const ComplexMatrix k = Scalar(0.0, -0.5) * (a - as);
  const double cluster_tol = tols.cluster_tol.value_or(kDefaultClusterRel * operator_norm(a));

  const auto hraw = detail::jacobi_hermitian(h);
  if (!hraw.converged) throw NoConvergence("normal_spectral_decomposition: Jacobi on real part");

  ComplexMatrix u = hraw.vectors;
  // h eigenvalues are sorted, so single-linkage clusters are contiguous runs.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && hraw.values[end] - hraw.values[end - 1] <= cluster_tol) ++end;
    const std::size_t m = end - start;
    if (m > 1) {
      ComplexMatrix block(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          Scalar s{};
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
              s += std::conj(u(r, start + i)) * k(r, c) * u(c, start + j);
          block(i, j) = s;
        }
      }
      const auto kraw = detail::jacobi_hermitian(block);
      if (!kraw.converged) throw NoConvergence("normal_spectral_decomposition: Jacobi on block");
      ComplexMatrix rotated(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < m; ++j) {
          Scalar s{};
          for (std::size_t i = 0; i < m; ++i) s += u(r, start + i) * kraw.vectors(i, j);
          rotated(r, j) = s;
        }
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < m; ++j) u(r, start + j) = rotated(r, j);
    }
    start = end;
  }

  SpectralDecomposition d;
  d.u = u;
  d.lambda.resize(n);
  const ComplexMatrix au = a * u;
  for (std::size_t j = 0; j < n; ++j) {
    Scalar s{};
    for (std::size_t r = 0; r < n; ++r) s += std::conj(u(r, j)) * au(r, j);
    d.lambda[j] = s;
  }
  detail::sort_decomposition(d);
  d.residual = detail::relative_residual(a, d);
  return d;
}

}  // namespace cfckit
