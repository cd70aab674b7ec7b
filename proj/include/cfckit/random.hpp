#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "function.hpp"
#include "matrix.hpp"
#include "oracle.hpp"

namespace cfckit {

/// Seeded generator for matrices, spectra and scalar functions used by
/// the law checks. Output is deterministic for a fixed seed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

  double gaussian() { return normal_(engine_); }

  Scalar complex_gaussian() { return {gaussian(), gaussian()}; }

  /// Uniform integer in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }

  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

  ComplexMatrix gaussian_matrix(std::size_t n) {
    ComplexMatrix m(n);
    for (auto& x : m.entries()) x = complex_gaussian();
    return m;
  }

  RealMatrix gaussian_real_matrix(std::size_t n) {
    RealMatrix m(n);
    for (auto& x : m.entries()) x = gaussian();
    return m;
  }

  /// Q from a modified Gram-Schmidt QR of a Gaussian matrix, with the
  /// phases of R's diagonal absorbed so Q is Haar distributed.
  ComplexMatrix haar_unitary(std::size_t n) {
    ComplexMatrix g = gaussian_matrix(n);
    ComplexMatrix q(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Scalar> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = g(i, j);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          Scalar dot{};
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, k);
        }
      }
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
    }
    return q;
  }

  ComplexMatrix with_spectrum(std::span<const Scalar> lambda) {
    const ComplexMatrix u = haar_unitary(lambda.size());
    return u * ComplexMatrix::diagonal(lambda) * adjoint(u);
  }

  /// One eigenvalue drawn from the ring's natural region (disk of radius 2,
  /// [-2, 2], or [0, 2]).
  Scalar ring_point(Ring ring) {
    switch (ring) {
      case Ring::Complex: {
        const double r = 2.0 * std::sqrt(uniform(0.0, 1.0));
        const double t = uniform(0.0, 2.0 * std::numbers::pi);
        return std::polar(r, t);
      }
      case Ring::Real:
        return uniform(-2.0, 2.0);
      case Ring::NNReal:
        return uniform(0.0, 2.0);
    }
    return 0.0;
  }

  /// Random spectrum that sometimes repeats values and sometimes contains 0.
  std::vector<Scalar> spectrum(std::size_t n, Ring ring) {
    std::vector<Scalar> lambda;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && coin(0.15)) {
        lambda.push_back(lambda[index(0, i - 1)]);
      } else if (coin(0.1)) {
        lambda.push_back(0.0);
      } else {
        lambda.push_back(ring_point(ring));
      }
    }
    return lambda;
  }

  /// n distinct points with pairwise distance >= min_gap.
  std::vector<Scalar> separated_spectrum(std::size_t n, Ring ring, double min_gap) {
    if (ring != Ring::Complex) {
      const double lo = ring == Ring::Real ? -2.0 : 0.0;
      const double width = 2.0 + 0.5 * static_cast<double>(n) * min_gap;
      const double slack = width - static_cast<double>(n - 1) * min_gap;
      std::vector<double> u(n);
      for (auto& x : u) x = uniform(0.0, slack);
      std::sort(u.begin(), u.end());
      std::vector<Scalar> out;
      for (std::size_t i = 0; i < n; ++i) out.emplace_back(lo + u[i] + static_cast<double>(i) * min_gap, 0.0);
      return out;
    }
    std::vector<Scalar> out;
    double radius = 2.0;
    while (out.size() < n) {
      for (int attempt = 0; attempt < 200 && out.size() < n; ++attempt) {
        const Scalar z = std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
        if (std::all_of(out.begin(), out.end(), [&](Scalar w) { return std::abs(z - w) >= min_gap; }))
          out.push_back(z);
      }
      radius *= 1.25;
    }
    return out;
  }

  /// Random element satisfying the ring predicate.
  ComplexMatrix element(std::size_t n, Ring ring) {
    const auto lambda = spectrum(n, ring);
    return with_spectrum(lambda);
  }

  /// A matrix that is almost surely not normal: strictly upper triangular
  /// part plus a random diagonal.
  ComplexMatrix nonnormal(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = complex_gaussian();
    if (n >= 2 && std::abs(m(0, 1)) < 0.1) m(0, 1) = 1.0;
    const ComplexMatrix u = haar_unitary(n);
    return u * m * adjoint(u);
  }

  /// A function defined everywhere on the ring, with moderate derivatives
  /// on the regions used by ring_point and on its own outputs.
  ScalarFunction function(Ring ring) {
    switch (ring) {
      case Ring::Complex: {
        switch (index(0, 4)) {
          case 0: {
            StarPolynomial p;
            const unsigned terms = static_cast<unsigned>(index(1, 4));
            for (unsigned t = 0; t < terms; ++t)
              p.add_term(static_cast<unsigned>(index(0, 3)), static_cast<unsigned>(index(0, 1)),
                         0.5 * complex_gaussian());
            return p.as_function(Ring::Complex, "starpoly");
          }
          case 1: {
            const Scalar c = 0.4 * complex_gaussian();
            return ScalarFunction::complex("exp(cz)", [c](Scalar z) { return std::exp(c * z); });
          }
          case 2: {
            const Scalar w = std::polar(6.0, uniform(0.0, 2.0 * std::numbers::pi));
            return ScalarFunction::complex("resolvent", [w](Scalar z) { return 4.0 / (z - w); });
          }
          case 3:
            return ScalarFunction::complex("sin/2", [](Scalar z) { return 0.5 * std::sin(z); });
          default: {
            const Scalar c = complex_gaussian();
            return ScalarFunction::complex("z*conj(z)+c", [c](Scalar z) { return 0.25 * z * std::conj(z) + c; });
          }
        }
      }
      case Ring::Real: {
        switch (index(0, 5)) {
          case 0: {
            const double c0 = gaussian(), c1 = gaussian(), c2 = 0.5 * gaussian(), c3 = 0.2 * gaussian();
            return ScalarFunction::real("cubic", [=](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); });
          }
          case 1: {
            const double c = 0.5 * gaussian();
            return ScalarFunction::real("exp(cx)", [c](double x) { return std::exp(c * x); });
          }
          case 2:
            return ScalarFunction::real("sin", [](double x) { return std::sin(x); });
          case 3:
            return ScalarFunction::real("atan", [](double x) { return std::atan(x); });
          case 4:
            return ScalarFunction::real("lorentz", [](double x) { return 1.0 / (1.0 + x * x); });
          default:
            return ScalarFunction::real("cos", [](double x) { return std::cos(x); });
        }
      }
      case Ring::NNReal: {
        switch (index(0, 5)) {
          case 0:
            return builtin(Builtin::Sqrt, Ring::NNReal);
          case 1:
            return ScalarFunction::nnreal("x^2/2", [](double x) { return 0.5 * x * x; });
          case 2:
            return ScalarFunction::nnreal("exp(-x)", [](double x) { return std::exp(-x); });
          case 3:
            return ScalarFunction::nnreal("log1p", [](double x) { return std::log1p(x); });
          case 4:
            return ScalarFunction::nnreal("x/(1+x)", [](double x) { return x / (1.0 + x); });
          default: {
            const double c0 = uniform(0.0, 1.0), c1 = uniform(0.0, 1.0), c2 = uniform(0.0, 0.3);
            return ScalarFunction::nnreal("poly+", [=](double x) { return c0 + x * (c1 + x * c2); });
          }
        }
      }
    }
    return fn::identity(ring);
  }

  /// A smooth function of the ring (no sqrt-type kinks), for laws whose
  /// numerical sensitivity scales with derivatives at spectral points.
  ScalarFunction smooth_function(Ring ring) {
    for (;;) {
      auto f = function(ring);
      if (f.name() != "sqrt") return f;
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cfckit
