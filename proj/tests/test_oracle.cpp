#include "test_support.hpp"

using namespace cfckit;
using cfckit::testing::kI;
using cfckit::testing::MatrixNear;

TEST(PolyEval, AffinePolynomial) {
  const std::vector<Scalar> c{1.0, 2.0};
  EXPECT_TRUE(MatrixNear(poly_eval(StarPolynomial::in_z(c), ComplexMatrix::diagonal({1.0, 2.0})),
                         ComplexMatrix::diagonal({3.0, 5.0}), 0.0));
}

TEST(PolyEval, StarTermsOnUnitary) {
  // z conj(z) = |z|^2 = 1 on a unitary.
  StarPolynomial p;
  p.add_term(1, 1, 1.0);
  EXPECT_TRUE(MatrixNear(poly_eval(p, ComplexMatrix{{0, -1}, {1, 0}}), ComplexMatrix::identity(2), 1e-15));
  EXPECT_THROW(poly_eval(p, ComplexMatrix{{0, 1}, {0, 0}}), NotNormal);
}

TEST(StarPolynomialTest, TermsMerge) {
  StarPolynomial p;
  p.add_term(2, 1, 1.0);
  p.add_term(2, 1, kI);
  EXPECT_EQ(p.coefficient(2, 1), Scalar(1.0, 1.0));
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_FALSE(p.pure_z());
  EXPECT_EQ(p(kI), Scalar(1.0, 1.0) * kI * kI * (-kI));
}

TEST(Lagrange, LineThroughTwoPoints) {
  // Through (1, 1) and (4, 2): 2/3 + x/3.
  const std::vector<Scalar> x{1.0, 4.0};
  const std::vector<Scalar> v{1.0, 2.0};
  const auto p = lagrange_interpolant(x, v);
  EXPECT_NEAR(std::abs(p.poly.coefficient(0) - 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.poly.coefficient(1) - 1.0 / 3.0), 0.0, 1e-15);
  EXPECT_LE(p.max_residual, 1e-15);
}

TEST(Lagrange, Errors) {
  const std::vector<Scalar> x{1.0, 1.0};
  const std::vector<Scalar> v{1.0, 2.0};
  EXPECT_THROW(lagrange_interpolant(x, v), DuplicatePoints);
  const std::vector<Scalar> w{1.0};
  EXPECT_THROW(lagrange_interpolant(std::vector<Scalar>{1.0, 2.0}, w), DimensionMismatch);
}

TEST(Lagrange, ExactAtNodes) {
  RandomSource rs(61);
  for (int t = 0; t < 100; ++t) {
    const auto x = rs.separated_spectrum(rs.index(1, 8), Ring::Complex, 0.25);
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < x.size(); ++i) v.push_back(rs.complex_gaussian());
    const auto p = lagrange_interpolant(x, v);
    EXPECT_LE(p.max_residual, 1e-10);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_LE(std::abs(p.poly(x[i]) - v[i]), 1e-9 * (1 + std::abs(v[i])));
  }
}

TEST(Oracle, SqrtOfDiagonal) {
  const auto o = cfc_oracle(builtin(Builtin::Sqrt, Ring::NNReal), ComplexMatrix::diagonal({1.0, 4.0}), Ring::NNReal);
  ASSERT_FALSE(o.skipped);
  EXPECT_TRUE(MatrixNear(*o.value, ComplexMatrix::diagonal({1.0, 2.0}), 1e-14));
  EXPECT_DOUBLE_EQ(o.min_gap, 3.0);
}

TEST(Oracle, SkipsOutsideDomain) {
  EXPECT_TRUE(cfc_oracle(fn::identity(), ComplexMatrix{{0, 1}, {0, 0}}, Ring::Complex).skipped);
  EXPECT_TRUE(cfc_oracle(builtin(Builtin::Log, Ring::Real), ComplexMatrix::diagonal({0.0, 1.0}), Ring::Real).skipped);
}

TEST(Oracle, AgreesWithDiagonalization) {
  RandomSource rs(62);
  for (int t = 0; t < 100; ++t) {
    const Ring ring = static_cast<Ring>(t % 3);
    const auto a = rs.with_spectrum(rs.separated_spectrum(rs.index(1, 6), ring, 0.25));
    const auto f = rs.function(ring);
    const auto o = cfc_oracle(f, a, ring);
    const auto c = cfc(f, a, ring);
    ASSERT_FALSE(o.skipped) << o.skip_reason;
    ASSERT_FALSE(c.junk);
    EXPECT_LE(operator_norm(*o.value - c.value), 1e-8 * (1.0 + operator_norm(c.value))) << f.name();
  }
}

TEST(PolyEvalProperties, MatchesCalculusForStarPolynomials) {
  RandomSource rs(63);
  for (int t = 0; t < 100; ++t) {
    const auto a = rs.element(rs.index(1, 6), Ring::Complex);
    StarPolynomial p;
    const auto terms = rs.index(1, 5);
    for (std::size_t i = 0; i < terms; ++i) {
      const auto k = static_cast<unsigned>(rs.index(0, 4));
      const auto m = static_cast<unsigned>(rs.index(0, 4 - k));
      p.add_term(k, m, rs.complex_gaussian());
    }
    const auto direct = poly_eval(p, a);
    const auto via = cfc(p.as_function(), a, Ring::Complex);
    ASSERT_FALSE(via.junk);
    EXPECT_TRUE(MatrixNear(direct, via.value, 1e-10 * std::max(1.0, operator_norm(direct))));
  }
}

TEST(CheckLaws, SymmetricMatrixPasses) {
  const ComplexMatrix a{{2, 1}, {1, 2}};
  const auto r = check_laws(a, builtin(Builtin::Pow, Ring::Real, 2.0),
                            fn::sum(fn::identity(Ring::Real), fn::constant(1.0, Ring::Real)), Ring::Real);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.entries.size(), law_names().size());
  for (std::size_t i = 0; i < r.entries.size(); ++i) EXPECT_EQ(r.entries[i].name, law_names()[i]);
  EXPECT_EQ(r.find("add")->status, LawStatus::Pass);
  EXPECT_EQ(r.find("oracle")->status, LawStatus::Pass);
}

TEST(CheckLaws, NonNormalSkipsAllButTotality) {
  const auto r = check_laws(ComplexMatrix{{0, 1}, {0, 0}}, fn::identity(), fn::identity(), Ring::Complex);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.find("junk_totality")->status, LawStatus::Pass);
  EXPECT_EQ(r.find("add")->status, LawStatus::Skipped);
  EXPECT_EQ(r.find(""), nullptr);
}
