#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "matrix.hpp"

namespace cfckit::detail {

struct HermitianEigenRaw {
  ComplexMatrix vectors;       // columns are eigenvectors
  std::vector<double> values;  // ascending
  int sweeps = 0;
  double off_norm = 0.0;
  bool converged = false;
};

/**
 * Cyclic Jacobi with complex rotations. The input is symmetrized first, so
 * callers are responsible for checking it was Hermitian to begin with.
 *
 * Each rotation first removes the phase of h_pq with diag(1, e^{-i phi}),
 * then applies the real Rutishauser rotation to the resulting symmetric
 * 2x2 block. On exit h = V diag(values) V*.
 */
inline HermitianEigenRaw jacobi_hermitian(const ComplexMatrix& h_in, int max_sweeps = 60,
                                          double rel_tol = 1e-14) {
  const std::size_t n = h_in.dim();
  ComplexMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frobenius_norm(h);

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
  };

  HermitianEigenRaw out;
  out.off_norm = off_diagonal();
  while (out.off_norm > rel_tol * scale && out.sweeps < max_sweeps) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Scalar c = h(p, q);
        const double r = std::abs(c);
        if (r == 0.0) continue;
        const Scalar phase = c / r;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;
        // J restricted to (p, q) = diag(1, conj(phase)) * [[cs, sn], [-sn, cs]]
        const Scalar j00 = cs;
        const Scalar j01 = sn;
        const Scalar j10 = -sn * std::conj(phase);
        const Scalar j11 = cs * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Scalar hkp = h(k, p);
          const Scalar hkq = h(k, q);
          h(k, p) = hkp * j00 + hkq * j10;
          h(k, q) = hkp * j01 + hkq * j11;
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = vkp * j00 + vkq * j10;
          v(k, q) = vkp * j01 + vkq * j11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar hpk = h(p, k);
          const Scalar hqk = h(q, k);
          h(p, k) = std::conj(j00) * hpk + std::conj(j10) * hqk;
          h(q, k) = std::conj(j01) * hpk + std::conj(j11) * hqk;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
    out.off_norm = off_diagonal();
  }
  out.converged = out.off_norm <= rel_tol * scale;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = h(order[col], order[col]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
  }
  return out;
}

}  // namespace cfckit::detail
