#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "common.hpp"

namespace cfckit {

template <typename T>
struct is_complex : std::false_type {};

template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename T>
concept MatrixScalar = std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>;

template <MatrixScalar T>
constexpr T conj_of(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::conj(x);
  } else {
    return x;
  }
}

/**
 * Dense square matrix, row-major. Matrix<Scalar> is the concrete C*-algebra
 * element; Matrix<double> carries the real-symmetric entry point.
 */
template <MatrixScalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  explicit Matrix(std::size_t n) : n_(n), data_(n * n, T{}) {}

  Matrix(std::size_t n, std::vector<T> entries) : n_(n), data_(std::move(entries)) {
    if (data_.size() != n_ * n_) {
      throw DimensionMismatch("Matrix: expected " + std::to_string(n_ * n_) + " entries, got " +
                              std::to_string(data_.size()));
    }
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw DimensionMismatch("Matrix: rows must form a square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static Matrix zero(std::size_t n) { return Matrix(n); }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Matrix diagonal(std::initializer_list<T> d) {
    return diagonal(std::span<const T>(d.begin(), d.size()));
  }

  /// Matrix unit e_{ij}.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n);
    m(i, j) = T{1};
    return m;
  }

  std::size_t dim() const noexcept { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const T> entries() const noexcept { return data_; }
  std::span<T> entries() noexcept { return data_; }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) {
      if constexpr (is_complex_v<T>) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
      } else {
        return std::isfinite(x);
      }
    });
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check_same(b);
    const std::size_t n = a.n_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const T aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  void check_same(const Matrix& o) const {
    if (o.n_ != n_) {
      throw DimensionMismatch("Matrix: dimension " + std::to_string(n_) + " vs " +
                              std::to_string(o.n_));
    }
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<Scalar>;
using RealMatrix = Matrix<double>;

/// Conjugate transpose.
template <MatrixScalar T>
Matrix<T> adjoint(const Matrix<T>& a) {
  const std::size_t n = a.dim();
  Matrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = conj_of(a(i, j));
  return out;
}

template <MatrixScalar T>
Matrix<T> add_identity(Matrix<T> a, const T& s) {
  for (std::size_t i = 0; i < a.dim(); ++i) a(i, i) += s;
  return a;
}

/// Frobenius inner product <x, y> = trace(x* y).
inline Scalar frobenius_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("frobenius_inner: dimension mismatch");
  Scalar s{};
  const auto xe = x.entries();
  const auto ye = y.entries();
  for (std::size_t k = 0; k < xe.size(); ++k) s += std::conj(xe[k]) * ye[k];
  return s;
}

template <MatrixScalar T>
double frobenius_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

template <MatrixScalar T>
double max_abs_entry(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.entries()) m = std::max(m, std::abs(x));
  return m;
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
  std::vector<Scalar> e(a.entries().begin(), a.entries().end());
  return ComplexMatrix(a.dim(), std::move(e));
}

inline RealMatrix real_part(const ComplexMatrix& a) {
  std::vector<double> e;
  e.reserve(a.entries().size());
  for (const auto& z : a.entries()) e.push_back(z.real());
  return RealMatrix(a.dim(), std::move(e));
}

inline ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned k) {
  ComplexMatrix result = ComplexMatrix::identity(a.dim());
  ComplexMatrix base = a;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

/// Ambient inverse by Gaussian elimination with partial pivoting. Returns
/// nullopt when a pivot falls below `rel_pivot_tol * max|entry|`.
inline std::optional<ComplexMatrix> inverse(const ComplexMatrix& a, double rel_pivot_tol = 1e-13) {
  const std::size_t n = a.dim();
  const double scale = max_abs_entry(a);
  if (n == 0 || scale == 0.0) return std::nullopt;
  ComplexMatrix lu = a;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(piv, col))) piv = r;
    if (std::abs(lu(piv, col)) <= rel_pivot_tol * scale) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(piv, j), lu(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const Scalar p = lu(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      lu(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar f = lu(r, col);
      if (f == Scalar{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        lu(r, j) -= f * lu(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Block-diagonal direct sum x (+) y.
inline ComplexMatrix direct_sum(const ComplexMatrix& x, const ComplexMatrix& y) {
  const std::size_t n = x.dim();
  const std::size_t m = y.dim();
  ComplexMatrix out(n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = x(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = y(i, j);
  return out;
}

}  // namespace cfckit
