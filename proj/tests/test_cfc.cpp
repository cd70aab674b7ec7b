#include <numbers>

#include "test_support.hpp"

using namespace cfckit;
using cfckit::testing::kI;
using cfckit::testing::MatrixNear;

namespace {

const ComplexMatrix kSym{{2, 1}, {1, 2}};

ScalarFunction square(Ring ring) { return builtin(Builtin::Pow, ring, 2.0); }

}  // namespace

TEST(Cfc, SqrtOfDiagonal) {
  const auto o = cfc(builtin(Builtin::Sqrt, Ring::NNReal), ComplexMatrix::diagonal({1.0, 4.0}), Ring::NNReal);
  ASSERT_FALSE(o.junk);
  EXPECT_FALSE(o.reason.has_value());
  EXPECT_TRUE(MatrixNear(o.value, ComplexMatrix::diagonal({1.0, 2.0}), 1e-15));
}

TEST(Cfc, SquareMatchesMatrixProduct) {
  const auto o = cfc(square(Ring::Real), kSym, Ring::Real);
  EXPECT_TRUE(MatrixNear(o.value, ComplexMatrix{{5, 4}, {4, 5}}, 1e-14));
}

TEST(Cfc, SqrtOfSymmetric) {
  // Eigenpairs (1, (1,-1)/sqrt2) and (3, (1,1)/sqrt2).
  const double r3 = std::sqrt(3.0);
  const ComplexMatrix expected = 0.5 * ComplexMatrix{{1 + r3, r3 - 1}, {r3 - 1, 1 + r3}};
  const auto o = cfc_builtin(Builtin::Sqrt, kSym, Ring::NNReal);
  EXPECT_TRUE(MatrixNear(o.value, expected, 1e-14));
  EXPECT_TRUE(MatrixNear(o.value * o.value, kSym, 1e-14));
}

TEST(Cfc, ExpAndInverse) {
  EXPECT_TRUE(MatrixNear(cfc_builtin(Builtin::Exp, ComplexMatrix::diagonal({0.0, std::log(2.0)}), Ring::Real).value,
                         ComplexMatrix::diagonal({1.0, 2.0}), 1e-15));
  EXPECT_TRUE(MatrixNear(cfc_builtin(Builtin::Inv, ComplexMatrix::diagonal({2.0, 4.0}), Ring::Complex).value,
                         ComplexMatrix::diagonal({0.5, 0.25}), 1e-15));
}

TEST(Cfc, ComplexExpOfRotationGenerator) {
  // exp(t [[0,-1],[1,0]]) is the rotation by t.
  const double t = 0.7;
  const ComplexMatrix a = t * ComplexMatrix{{0, -1}, {1, 0}};
  const ComplexMatrix rot{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}};
  EXPECT_TRUE(MatrixNear(cfc_builtin(Builtin::Exp, a, Ring::Complex).value, rot, 1e-14));
}

TEST(Cfc, NonNormalIsJunk) {
  const auto o = cfc(builtin(Builtin::Exp, Ring::Complex), ComplexMatrix{{0, 1}, {0, 0}}, Ring::Complex);
  EXPECT_TRUE(o.junk);
  EXPECT_EQ(o.reason, JunkReason::PredicateFailed);
  EXPECT_EQ(o.value, ComplexMatrix(2));
}

TEST(Cfc, RingViolationsAreJunk) {
  const ComplexMatrix rot{{0, -1}, {1, 0}};
  EXPECT_EQ(cfc(fn::identity(Ring::Real), rot, Ring::Real).reason, JunkReason::PredicateFailed);
  EXPECT_EQ(cfc(fn::identity(Ring::NNReal), ComplexMatrix::diagonal({-1.0, 1.0}), Ring::NNReal).reason,
            JunkReason::PredicateFailed);
}

TEST(Cfc, UndefinedFunctionIsJunk) {
  const auto o = cfc_builtin(Builtin::Log, ComplexMatrix::diagonal({0.0, 1.0}), Ring::Real);
  EXPECT_TRUE(o.junk);
  EXPECT_EQ(o.reason, JunkReason::EvalFailed);
  EXPECT_EQ(o.value, ComplexMatrix(2));
  // A real-valued ring rejects an imaginary output.
  const auto c = cfc(ScalarFunction(Ring::Real, [](Scalar) -> std::optional<Scalar> { return kI; }, "i"),
                     ComplexMatrix::diagonal({1.0, 2.0}), Ring::Real);
  EXPECT_EQ(c.reason, JunkReason::EvalFailed);
}

TEST(Cfc, FunctionsAreOnlySampledOnTheSpectrum) {
  // f agrees with the identity at 1 and 2 only.
  const ScalarFunction f = ScalarFunction::real("wild", [](double x) { return x + std::sin(std::numbers::pi * x) * 10.0; });
  EXPECT_TRUE(MatrixNear(cfc(f, ComplexMatrix::diagonal({1.0, 2.0}), Ring::Real).value,
                         ComplexMatrix::diagonal({1.0, 2.0}), 1e-13));
}

TEST(CfcN, ZeroPreservingFunction) {
  const auto o = cfc_n(square(Ring::Real), ComplexMatrix::diagonal({0.0, 3.0}), Ring::Real);
  ASSERT_FALSE(o.junk);
  EXPECT_TRUE(MatrixNear(o.value, ComplexMatrix::diagonal({0.0, 9.0}), 1e-14));
}

TEST(CfcN, NonzeroAtZeroIsJunk) {
  const auto o = cfc_n(fn::sum(fn::identity(Ring::Real), fn::constant(1.0, Ring::Real)),
                       ComplexMatrix::diagonal({0.0, 3.0}), Ring::Real);
  EXPECT_TRUE(o.junk);
  EXPECT_EQ(o.reason, JunkReason::ZeroConditionFailed);
  EXPECT_EQ(o.value, ComplexMatrix(2));
}

TEST(CfcN, ZeroClusterMapsToExactZero) {
  // f(0) is within tol of 0 but not exactly 0; the zero eigenvalue still maps to 0.
  const ScalarFunction f = ScalarFunction::real("almost", [](double x) { return x + 1e-12; });
  const auto o = cfc_n(f, ComplexMatrix::diagonal({0.0, 2.0}), Ring::Real);
  ASSERT_FALSE(o.junk);
  EXPECT_EQ(o.value(0, 0), Scalar{});
}

TEST(CfcN, WithinNonUnitalSubalgebra) {
  const auto e11 = ComplexMatrix::unit(2, 0, 0);
  const std::vector<ComplexMatrix> span{e11};
  const auto b = StarSubalgebra::spanned_by(2, span, false);
  const auto o = cfc_n(square(Ring::Complex), 2.0 * e11, &b, Ring::Complex);
  ASSERT_FALSE(o.junk);
  EXPECT_TRUE(MatrixNear(o.value, 4.0 * e11, 1e-15));
  ASSERT_TRUE(o.range.has_value());
  EXPECT_TRUE(o.range->contained);
  EXPECT_THROW(cfc_n(square(Ring::Complex), ComplexMatrix::unit(2, 1, 1), &b, Ring::Complex), NotInSubalgebra);
}

TEST(CfcN, AgreesWithUnitalCalculusWhenZeroPreserving) {
  RandomSource rs(51);
  for (int t = 0; t < 100; ++t) {
    const Ring ring = static_cast<Ring>(t % 3);
    const auto a = rs.element(rs.index(1, 6), ring);
    const ScalarFunction g = rs.function(ring);
    const Scalar g0 = *g(0.0);
    ScalarFunction f{ring, [g, g0](Scalar z) -> std::optional<Scalar> { return *g(z) - g0; }, "g-g0"};
    const auto u = cfc(f, a, ring);
    const auto n = cfc_n(f, a, ring);
    if (u.junk) {
      // Only possible over NNReal when f dips below 0.
      EXPECT_EQ(ring, Ring::NNReal);
      continue;
    }
    EXPECT_FALSE(n.junk);
    EXPECT_TRUE(MatrixNear(u.value, n.value, 1e-12 * std::max(1.0, operator_norm(u.value))));
  }
}

TEST(PosNegParts, Diagonal) {
  const auto a = ComplexMatrix::diagonal({3.0, -2.0});
  EXPECT_TRUE(MatrixNear(pos_part(a).value, ComplexMatrix::diagonal({3.0, 0.0}), 0.0));
  EXPECT_TRUE(MatrixNear(neg_part(a).value, ComplexMatrix::diagonal({0.0, 2.0}), 0.0));
}

TEST(PosNegParts, Properties) {
  RandomSource rs(52);
  for (int t = 0; t < 100; ++t) {
    const auto a = rs.element(rs.index(1, 8), Ring::Real);
    const auto p = pos_part(a).value;
    const auto m = neg_part(a).value;
    const double na = operator_norm(a);
    EXPECT_TRUE(is_nonneg(p).holds);
    EXPECT_TRUE(is_nonneg(m).holds);
    EXPECT_LE(operator_norm(a - (p - m)), 1e-10 * std::max(na, 1e-300));
    EXPECT_LE(operator_norm(p * m), 1e-10 * std::max(na * na, 1e-300));
  }
}

TEST(Builtins, RpowAndAbs) {
  const auto a = ComplexMatrix::diagonal({4.0, 9.0});
  EXPECT_TRUE(MatrixNear(cfc_builtin(Builtin::Rpow, a, Ring::NNReal, {}, 0.5).value,
                         ComplexMatrix::diagonal({2.0, 3.0}), 1e-14));
  EXPECT_TRUE(MatrixNear(cfc_builtin(Builtin::Abs, ComplexMatrix::diagonal({-4.0, kI}), Ring::Complex).value,
                         ComplexMatrix::identity(2) + ComplexMatrix::diagonal({3.0, 0.0}), 1e-15));
  EXPECT_TRUE(MatrixNear(cfc_builtin(Builtin::Pow, a, Ring::Real, {}, -1.0).value,
                         ComplexMatrix::diagonal({0.25, 1.0 / 9.0}), 1e-15));
}

TEST(RealPath, SymmetricRealMatrices) {
  const RealMatrix a{{2.0, 1.0}, {1.0, 2.0}};
  const auto o = cfc([](double x) { return x * x; }, a);
  ASSERT_FALSE(o.junk);
  EXPECT_NEAR(o.value(0, 0), 5.0, 1e-14);
  EXPECT_NEAR(o.value(0, 1), 4.0, 1e-14);
  const RealMatrix b{{0.0, 1.0}, {0.0, 0.0}};
  const auto j = cfc([](double x) { return x; }, b);
  EXPECT_TRUE(j.junk);
  EXPECT_EQ(j.value, RealMatrix(2));
}

TEST(CfcProperties, LawsHoldForRandomElements) {
  RandomSource rs(53);
  for (int t = 0; t < 150; ++t) {
    const Ring ring = static_cast<Ring>(t % 3);
    const auto a = rs.element(rs.index(1, 6), ring);
    const auto f = rs.smooth_function(ring);
    const auto g = rs.smooth_function(ring);
    const auto report = check_laws(a, f, g, ring);
    for (const auto& e : report.entries)
      EXPECT_NE(e.status, LawStatus::Fail)
          << "trial " << t << " law " << e.name << " residual " << e.residual << " f=" << f.name()
          << " g=" << g.name();
  }
}

TEST(CfcProperties, InverseTransport) {
  RandomSource rs(54);
  for (int t = 0; t < 100; ++t) {
    const Ring ring = static_cast<Ring>(t % 2);
    auto lambda = rs.separated_spectrum(rs.index(1, 6), ring, 0.2);
    for (auto& l : lambda)
      if (std::abs(l) < 0.3) l += 0.5;
    const auto a = rs.with_spectrum(lambda);
    const auto ainv = *inverse(a);
    const auto f = rs.smooth_function(ring);
    const auto lhs = cfc(f, ainv, ring);
    const auto rhs = cfc(fn::invert_argument(f), a, ring);
    ASSERT_FALSE(lhs.junk);
    ASSERT_FALSE(rhs.junk);
    EXPECT_LE(operator_norm(lhs.value - rhs.value), 1e-8 * std::max(1.0, operator_norm(lhs.value)));
  }
}

TEST(CfcProperties, SquareRootOfGramMatrix) {
  RandomSource rs(55);
  for (int t = 0; t < 100; ++t) {
    const auto n = rs.index(1, 8);
    const auto b = rs.gaussian_matrix(n);
    const auto a = adjoint(b) * b;
    const auto s = cfc_builtin(Builtin::Sqrt, a, Ring::NNReal);
    const auto r = cfc_builtin(Builtin::Sqrt, a, Ring::Real);
    ASSERT_FALSE(s.junk);
    ASSERT_FALSE(r.junk);
    const double na = operator_norm(a);
    EXPECT_LE(operator_norm(s.value * s.value - a), 1e-9 * na);
    EXPECT_LE(operator_norm(s.value - r.value), 1e-9 * std::sqrt(na));
    EXPECT_TRUE(is_nonneg(s.value).holds);
  }
}

TEST(CfcProperties, RealRingMatchesComplexExtension) {
  RandomSource rs(56);
  for (int t = 0; t < 100; ++t) {
    const auto a = rs.element(rs.index(1, 8), Ring::Real);
    const auto f = rs.function(Ring::Real);
    // The same function seen by the complex calculus through the real part.
    const ScalarFunction fc = ScalarFunction::complex("f(re)", [f](Scalar z) { return *f(Scalar(z.real(), 0.0)); });
    const auto r = cfc(f, a, Ring::Real);
    const auto c = cfc(fc, a, Ring::Complex);
    ASSERT_FALSE(r.junk);
    EXPECT_TRUE(MatrixNear(r.value, c.value, 1e-12 * std::max(1.0, operator_norm(c.value))));
  }
}

TEST(CfcProperties, InverseBuiltinInvertsTheElement) {
  RandomSource rs(57);
  for (int t = 0; t < 100; ++t) {
    auto lambda = rs.separated_spectrum(rs.index(1, 8), Ring::Complex, 0.2);
    for (auto& l : lambda) l += 3.0;
    const auto a = rs.with_spectrum(lambda);
    const auto o = cfc_builtin(Builtin::Inv, a, Ring::Complex);
    ASSERT_FALSE(o.junk);
    EXPECT_TRUE(MatrixNear(o.value * a, ComplexMatrix::identity(a.dim()), 1e-12));
  }
}

TEST(CfcProperties, SquareRootMatchesInterpolationOracle) {
  RandomSource rs(58);
  for (int t = 0; t < 100; ++t) {
    const auto a = rs.with_spectrum(rs.separated_spectrum(rs.index(1, 6), Ring::NNReal, 0.25));
    const auto f = builtin(Builtin::Sqrt, Ring::NNReal);
    const auto o = cfc_oracle(f, a, Ring::NNReal);
    ASSERT_FALSE(o.skipped);
    EXPECT_TRUE(MatrixNear(*o.value, cfc(f, a, Ring::NNReal).value, 1e-9));
  }
}

TEST(PosNegParts, UniqueAmongOrthogonalNonnegativeSplits) {
  // Any p, q >= 0 with p q = 0 and p - q = a equal the positive and negative
  // parts. Candidates are rebuilt from a different eigenbasis of a, rotated
  // inside each repeated eigenspace.
  RandomSource rs(59);
  for (int t = 0; t < 100; ++t) {
    const auto n = rs.index(2, 8);
    std::vector<Scalar> lambda;
    while (lambda.size() < n) {
      const Scalar x = rs.uniform(-2.0, 2.0);
      const auto copies = std::min<std::size_t>(rs.index(1, 3), n - lambda.size());
      for (std::size_t c = 0; c < copies; ++c) lambda.push_back(x);
    }
    const auto v = rs.haar_unitary(n);
    const auto a = v * ComplexMatrix::diagonal(lambda) * adjoint(v);
    ComplexMatrix w = v;
    for (std::size_t start = 0; start < n;) {
      std::size_t end = start;
      while (end < n && lambda[end] == lambda[start]) ++end;
      const auto r = rs.haar_unitary(end - start);
      ComplexMatrix block(n);
      for (std::size_t i = 0; i < n; ++i) block(i, i) = 1.0;
      for (std::size_t i = start; i < end; ++i)
        for (std::size_t j = start; j < end; ++j) block(i, j) = r(i - start, j - start);
      w = w * block;
      start = end;
    }
    std::vector<Scalar> plus, minus;
    for (Scalar l : lambda) {
      plus.emplace_back(std::max(l.real(), 0.0));
      minus.emplace_back(std::max(-l.real(), 0.0));
    }
    const auto p = w * ComplexMatrix::diagonal(plus) * adjoint(w);
    const auto q = w * ComplexMatrix::diagonal(minus) * adjoint(w);
    const double na = operator_norm(a);
    ASSERT_TRUE(is_nonneg(p).holds && is_nonneg(q).holds);
    ASSERT_LE(operator_norm(p * q), 1e-10 * na * na);
    ASSERT_LE(operator_norm(a - (p - q)), 1e-10 * na);
    EXPECT_LE(operator_norm(p - pos_part(a).value), 1e-10 * na);
    EXPECT_LE(operator_norm(q - neg_part(a).value), 1e-10 * na);
  }
}

TEST(LoewnerOrder, PointwiseOrderGivesOperatorOrder) {
  RandomSource rs(60);
  for (int t = 0; t < 100; ++t) {
    const auto a = rs.element(rs.index(1, 8), Ring::Real);
    const auto f = rs.function(Ring::Real);
    // g = f + (x^2 + 1/2) >= f everywhere.
    const auto g = fn::sum(f, ScalarFunction::real("bump", [](double x) { return x * x + 0.5; }));
    const auto cf = cfc(f, a, Ring::Real).value;
    const auto cg = cfc(g, a, Ring::Real).value;
    EXPECT_TRUE(loewner_le(cf, cg));
    EXPECT_TRUE(is_nonneg(cfc(fn::sum(g, fn::scaled(-1.0, f)), a, Ring::Real).value).holds);
  }
}

TEST(LoewnerOrder, TruncatedSubtractionOverNonnegativeReals) {
  RandomSource rs(61);
  for (int t = 0; t < 100; ++t) {
    const auto a = rs.element(rs.index(1, 8), Ring::NNReal);
    const auto f = ScalarFunction::nnreal("x/(1+x)", [](double x) { return x / (1.0 + x); });
    const auto g = ScalarFunction::nnreal("x+1", [](double x) { return x + 1.0; });
    const auto diff = ScalarFunction::nnreal(
        "g-f", [f, g](double x) { return truncated_sub((*g(x)).real(), (*f(x)).real()); });
    const auto cf = cfc(f, a, Ring::NNReal).value;
    const auto cg = cfc(g, a, Ring::NNReal).value;
    EXPECT_TRUE(loewner_le(cf, cg));
    EXPECT_TRUE(MatrixNear(cfc(diff, a, Ring::NNReal).value, cg - cf, 1e-12));
  }
}

TEST(LoewnerOrder, Examples) {
  EXPECT_TRUE(loewner_le(ComplexMatrix::diagonal({1.0, 2.0}), ComplexMatrix::diagonal({1.0, 3.0})));
  EXPECT_FALSE(loewner_le(ComplexMatrix::diagonal({1.0, 2.0}), ComplexMatrix::diagonal({3.0, 1.0})));
}
