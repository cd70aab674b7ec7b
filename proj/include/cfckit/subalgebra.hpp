#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <span>
#include <vector>

#include "matrix.hpp"
#include "predicates.hpp"

namespace cfckit {

struct Containment {
  bool contained = false;
  double residual = 0.0;
};

/**
 * A star-closed, multiplication-closed subspace of M_n, stored as a
 * Frobenius-orthonormal basis.
 */
class StarSubalgebra {
 public:
  StarSubalgebra() = default;

  /// Orthonormalizes `spanning` and verifies both closure properties within
  /// 10 * tol. Throws NotASubalgebra otherwise.
  static StarSubalgebra spanned_by(std::size_t n, std::span<const ComplexMatrix> spanning,
                                   bool unital = false, double tol = kDefaultTol) {
    StarSubalgebra b(n, unital);
    if (unital) b.try_add(ComplexMatrix::identity(n), tol);
    for (const auto& x : spanning) {
      if (x.dim() != n) throw DimensionMismatch("StarSubalgebra: spanning element dimension");
      b.try_add(x, tol);
    }
    const auto [star_res, mul_res] = b.closure_residuals();
    if (star_res > 10 * tol || mul_res > 10 * tol)
      throw NotASubalgebra("StarSubalgebra: span is not closed under star and multiplication");
    return b;
  }

  /// The star-subalgebra generated by `generators` (plus I when unital):
  /// closes the span under left multiplication by each generator and its
  /// adjoint, which covers every word.
  static StarSubalgebra generated_by(std::size_t n, std::span<const ComplexMatrix> generators,
                                     bool unital, double tol = kDefaultTol) {
    StarSubalgebra b(n, unital);
    std::vector<ComplexMatrix> letters;
    for (const auto& g : generators) {
      if (g.dim() != n) throw DimensionMismatch("StarSubalgebra: generator dimension");
      letters.push_back(g);
      letters.push_back(adjoint(g));
    }
    std::deque<ComplexMatrix> pending;
    if (unital) pending.push_back(ComplexMatrix::identity(n));
    for (const auto& l : letters) pending.push_back(l);

    const std::size_t cap = n * n;
    while (!pending.empty() && b.basis_.size() < cap) {
      const ComplexMatrix c = std::move(pending.front());
      pending.pop_front();
      if (b.try_add(c, tol)) {
        const ComplexMatrix& q = b.basis_.back();
        for (const auto& l : letters) pending.push_back(l * q);
      }
    }
    return b;
  }

  static StarSubalgebra full(std::size_t n) {
    StarSubalgebra b(n, true);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b.basis_.push_back(ComplexMatrix::unit(n, i, j));
    return b;
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool unital() const noexcept { return unital_; }
  const std::vector<ComplexMatrix>& basis() const noexcept { return basis_; }

  std::vector<Scalar> coordinates(const ComplexMatrix& x) const {
    std::vector<Scalar> c;
    c.reserve(basis_.size());
    for (const auto& q : basis_) c.push_back(frobenius_inner(q, x));
    return c;
  }

  ComplexMatrix combine(std::span<const Scalar> coords) const {
    ComplexMatrix out(n_);
    for (std::size_t k = 0; k < basis_.size(); ++k) out += coords[k] * basis_[k];
    return out;
  }

  ComplexMatrix project(const ComplexMatrix& x) const {
    if (x.dim() != n_) throw DimensionMismatch("StarSubalgebra::project: dimension mismatch");
    return combine(coordinates(x));
  }

  /// Largest projection residual of b* and of b c over basis pairs. Basis
  /// elements have unit norm, so the residuals are absolute; a product of
  /// orthogonal projections is 0 up to rounding and has no direction.
  std::pair<double, double> closure_residuals() const {
    double star_res = 0.0;
    double mul_res = 0.0;
    auto off = [this](const ComplexMatrix& x) { return frobenius_norm(x - project(x)); };
    for (const auto& q : basis_) {
      star_res = std::max(star_res, off(adjoint(q)));
      for (const auto& r : basis_) mul_res = std::max(mul_res, off(q * r));
    }
    return {star_res, mul_res};
  }

  double relative_residual(const ComplexMatrix& x) const {
    const double nx = frobenius_norm(x);
    return frobenius_norm(x - project(x)) / std::max(nx, kEpsFloor);
  }

 private:
  StarSubalgebra(std::size_t n, bool unital) : n_(n), unital_(unital) {}

  // Modified Gram-Schmidt with one reorthogonalization pass. Accepts the
  // candidate when the orthogonal remainder exceeds tol * ||c||_F.
  bool try_add(const ComplexMatrix& c, double tol) {
    const double nc = frobenius_norm(c);
    if (nc == 0.0) return false;
    ComplexMatrix r = c;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis_) r -= frobenius_inner(q, r) * q;
    const double nr = frobenius_norm(r);
    if (nr <= tol * nc) return false;
    r *= Scalar(1.0 / nr);
    basis_.push_back(std::move(r));
    return true;
  }

  std::size_t n_ = 0;
  bool unital_ = false;
  std::vector<ComplexMatrix> basis_;
};

/// Star-subalgebra generated by a normal element. Throws NotNormal.
inline StarSubalgebra elemental_subalgebra(const ComplexMatrix& a, bool unital,
                                           double tol = kDefaultTol) {
  if (!is_star_normal(a, tol).holds) throw NotNormal("elemental_subalgebra: element is not normal");
  const ComplexMatrix gens[] = {a};
  return StarSubalgebra::generated_by(a.dim(), gens, unital, tol);
}

/// Membership by Frobenius projection: ||x - Px|| <= tol * max(||x||, floor).
inline Containment subalgebra_contains(const StarSubalgebra& b, const ComplexMatrix& x,
                                       double tol = kDefaultTol) {
  if (x.dim() != b.ambient_dim())
    throw DimensionMismatch("subalgebra_contains: dimension mismatch");
  const double residual = b.relative_residual(x);
  return {residual <= tol, residual};
}

}  // namespace cfckit
