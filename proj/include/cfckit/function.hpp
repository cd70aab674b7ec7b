#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "scalars.hpp"

namespace cfckit {

/**
 * A partial scalar function f : R -> R, carried as a map on complex scalars.
 * Evaluation returns nullopt where f is undefined (log at 0, sqrt of a
 * negative real). For the Real and NNReal rings the input is always the
 * ring-restricted value.
 */
class ScalarFunction {
 public:
  using Eval = std::function<std::optional<Scalar>(Scalar)>;

  ScalarFunction(Ring ring, Eval eval, std::string name = {})
      : ring_(ring), eval_(std::make_shared<Eval>(std::move(eval))), name_(std::move(name)) {}

  static ScalarFunction complex(std::string name, std::function<Scalar(Scalar)> f) {
    return {Ring::Complex,
            [f = std::move(f)](Scalar z) -> std::optional<Scalar> { return finite_or_none(f(z)); },
            std::move(name)};
  }

  /// A real function; NaN or infinite results mean "undefined here".
  static ScalarFunction real(std::string name, std::function<double(double)> f) {
    return {Ring::Real, wrap_real(std::move(f)), std::move(name)};
  }

  static ScalarFunction nnreal(std::string name, std::function<double(double)> f) {
    return {Ring::NNReal, wrap_real(std::move(f)), std::move(name)};
  }

  std::optional<Scalar> operator()(Scalar z) const { return (*eval_)(z); }

  Ring ring() const noexcept { return ring_; }
  const std::string& name() const noexcept { return name_; }

  static std::optional<Scalar> finite_or_none(Scalar z) {
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) return z;
    return std::nullopt;
  }

 private:
  static Eval wrap_real(std::function<double(double)> f) {
    return [f = std::move(f)](Scalar z) -> std::optional<Scalar> {
      return finite_or_none(Scalar(f(z.real()), 0.0));
    };
  }

  Ring ring_;
  std::shared_ptr<const Eval> eval_;
  std::string name_;
};

namespace fn {

inline ScalarFunction identity(Ring ring = Ring::Complex) {
  return {ring, [](Scalar z) -> std::optional<Scalar> { return z; }, "id"};
}

inline ScalarFunction constant(Scalar c, Ring ring = Ring::Complex) {
  return {ring, [c](Scalar) -> std::optional<Scalar> { return c; }, "const"};
}

inline ScalarFunction sum(const ScalarFunction& f, const ScalarFunction& g) {
  return {f.ring(),
          [f, g](Scalar z) -> std::optional<Scalar> {
            auto a = f(z);
            auto b = g(z);
            if (!a || !b) return std::nullopt;
            return *a + *b;
          },
          "(" + f.name() + "+" + g.name() + ")"};
}

inline ScalarFunction product(const ScalarFunction& f, const ScalarFunction& g) {
  return {f.ring(),
          [f, g](Scalar z) -> std::optional<Scalar> {
            auto a = f(z);
            auto b = g(z);
            if (!a || !b) return std::nullopt;
            return *a * *b;
          },
          "(" + f.name() + "*" + g.name() + ")"};
}

inline ScalarFunction scaled(Scalar c, const ScalarFunction& f) {
  return {f.ring(),
          [c, f](Scalar z) -> std::optional<Scalar> {
            auto a = f(z);
            if (!a) return std::nullopt;
            return c * *a;
          },
          "(c*" + f.name() + ")"};
}

/// x -> g(f(x))
inline ScalarFunction compose(const ScalarFunction& g, const ScalarFunction& f) {
  return {f.ring(),
          [f, g](Scalar z) -> std::optional<Scalar> {
            auto a = f(z);
            if (!a) return std::nullopt;
            return g(*a);
          },
          "(" + g.name() + "." + f.name() + ")"};
}

/// x -> conj(f(x))
inline ScalarFunction conjugate(const ScalarFunction& f) {
  return {f.ring(),
          [f](Scalar z) -> std::optional<Scalar> {
            auto a = f(z);
            if (!a) return std::nullopt;
            return std::conj(*a);
          },
          "conj(" + f.name() + ")"};
}

/// x -> f(conj x)
inline ScalarFunction conj_argument(const ScalarFunction& f) {
  return {f.ring(), [f](Scalar z) { return f(std::conj(z)); }, f.name() + "(conj)"};
}

/// x -> f(-x)
inline ScalarFunction negate_argument(const ScalarFunction& f) {
  return {f.ring(), [f](Scalar z) { return f(-z); }, f.name() + "(-x)"};
}

/// x -> f(1/x), undefined at 0.
inline ScalarFunction invert_argument(const ScalarFunction& f) {
  return {f.ring(),
          [f](Scalar z) -> std::optional<Scalar> {
            if (z == Scalar{}) return std::nullopt;
            return f(1.0 / z);
          },
          f.name() + "(1/x)"};
}

}  // namespace fn

enum class Builtin { Sqrt, Abs, Exp, Log, Inv, Pow, Rpow };

inline std::optional<Builtin> builtin_from_string(std::string_view s) {
  if (s == "sqrt") return Builtin::Sqrt;
  if (s == "abs") return Builtin::Abs;
  if (s == "exp") return Builtin::Exp;
  if (s == "log") return Builtin::Log;
  if (s == "inv") return Builtin::Inv;
  if (s == "pow") return Builtin::Pow;
  if (s == "rpow") return Builtin::Rpow;
  return std::nullopt;
}

/**
 * Named scalar functions. Over Complex they use principal branches; over
 * Real and NNReal they are undefined off their real domain (sqrt and rpow
 * of negatives, log of nonpositives). `param` is k for pow, t for rpow.
 */
inline ScalarFunction builtin(Builtin kind, Ring ring, double param = 0.0) {
  const bool complex = ring == Ring::Complex;
  using R = std::optional<Scalar>;
  switch (kind) {
    case Builtin::Sqrt:
      return {ring,
              [complex](Scalar z) -> R {
                if (complex) return std::sqrt(z);
                if (z.real() < 0.0) return std::nullopt;
                return Scalar(std::sqrt(z.real()), 0.0);
              },
              "sqrt"};
    case Builtin::Abs:
      return {ring, [](Scalar z) -> R { return Scalar(std::abs(z), 0.0); }, "abs"};
    case Builtin::Exp:
      return {ring,
              [complex](Scalar z) -> R {
                if (complex) return ScalarFunction::finite_or_none(std::exp(z));
                return ScalarFunction::finite_or_none(Scalar(std::exp(z.real()), 0.0));
              },
              "exp"};
    case Builtin::Log:
      return {ring,
              [complex](Scalar z) -> R {
                if (z == Scalar{}) return std::nullopt;
                if (complex) return std::log(z);
                if (z.real() <= 0.0) return std::nullopt;
                return Scalar(std::log(z.real()), 0.0);
              },
              "log"};
    case Builtin::Inv:
      return {ring,
              [](Scalar z) -> R {
                if (z == Scalar{}) return std::nullopt;
                return 1.0 / z;
              },
              "inv"};
    case Builtin::Pow: {
      const int k = static_cast<int>(param);
      return {ring,
              [k](Scalar z) -> R {
                if (k < 0 && z == Scalar{}) return std::nullopt;
                Scalar acc = 1.0;
                const Scalar base = k < 0 ? 1.0 / z : z;
                for (int i = 0; i < std::abs(k); ++i) acc *= base;
                return ScalarFunction::finite_or_none(acc);
              },
              "pow" + std::to_string(k)};
    }
    case Builtin::Rpow:
      return {ring,
              [complex, t = param](Scalar z) -> R {
                if (z == Scalar{}) {
                  if (t > 0.0) return Scalar{};
                  if (t == 0.0) return Scalar{1.0};
                  return std::nullopt;
                }
                if (complex) return ScalarFunction::finite_or_none(std::pow(z, t));
                if (z.real() < 0.0) return std::nullopt;
                return Scalar(std::pow(z.real(), t), 0.0);
              },
              "rpow"};
  }
  return fn::identity(ring);
}

}  // namespace cfckit
