#include "affcone/error.hpp"
#include "affcone/linalg.hpp"
#include "affcone/rational.hpp"

#include <gtest/gtest.h>

using affcone::MatrixQ;
using affcone::Rational;
using affcone::VectorQ;

TEST(Rational, LowestTerms) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(Rational(0, 7)), "0");
}

TEST(Rational, Arithmetic) {
  Rational a(1, 2), b(1, 3);
  EXPECT_EQ(a + b, Rational(5, 6));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 6));
  EXPECT_EQ(a / b, Rational(3, 2));
  EXPECT_LT(b, a);
  EXPECT_EQ(abs(Rational(-7, 3)), Rational(7, 3));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(Rational, HalfNeverPrintsAsDecimal) { EXPECT_EQ(to_string(Rational(1, 2)), "1/2"); }

TEST(Rational, Parse) {
  EXPECT_EQ(affcone::parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(affcone::parse_rational(" -5 "), Rational(-5));
  EXPECT_EQ(affcone::parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_THROW(affcone::parse_rational("1/0"), affcone::InputError);
  EXPECT_THROW(affcone::parse_rational("0.5"), affcone::InputError);
  EXPECT_THROW(affcone::parse_rational(""), affcone::InputError);
}

TEST(Rational, BigValuesStayExact) {
  Rational x(1);
  for (int i = 0; i < 40; ++i) x *= Rational(1000003, 7);
  for (int i = 0; i < 40; ++i) x /= Rational(1000003, 7);
  EXPECT_EQ(x, Rational(1));
}

TEST(Linalg, EigenExpressionsWork) {
  VectorQ v(3);
  v << Rational(1, 2), Rational(2), Rational(-1, 3);
  MatrixQ m = MatrixQ::Identity(3, 3) * Rational(2);
  VectorQ w = m * v;
  EXPECT_EQ(w(0), Rational(1));
  EXPECT_EQ(v.dot(w), Rational(1, 2) + Rational(8) + Rational(2, 9));
}

TEST(Linalg, DeterminantAndRank) {
  MatrixQ m(3, 3);
  m << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  EXPECT_EQ(affcone::determinant(m), Rational(4));
  EXPECT_EQ(affcone::rank(m), 3);
  MatrixQ s(2, 3);
  s << 1, 2, 3, 2, 4, 6;
  EXPECT_EQ(affcone::rank(s), 1);
}

TEST(Linalg, NegativeDefiniteChain) {
  MatrixQ a3(3, 3);
  a3 << -2, 1, 0, 1, -2, 1, 0, 1, -2;
  EXPECT_TRUE(affcone::is_negative_definite(a3));
  MatrixQ zero(1, 1);
  zero << 0;
  EXPECT_FALSE(affcone::is_negative_definite(zero));
}

TEST(Linalg, SolveStatuses) {
  MatrixQ a(2, 2);
  a << -2, 1, 1, -2;
  VectorQ b(2);
  b << 1, 0;
  auto sol = affcone::solve_exact(a, b);
  ASSERT_EQ(sol.status, affcone::SolveStatus::unique);
  EXPECT_EQ(sol.x(0), Rational(-2, 3));
  EXPECT_EQ(sol.x(1), Rational(-1, 3));

  MatrixQ over(2, 1);
  over << 1, 1;
  VectorQ rhs(2);
  rhs << 1, 2;
  EXPECT_EQ(affcone::solve_exact(over, rhs).status, affcone::SolveStatus::inconsistent);

  MatrixQ under(1, 2);
  under << 1, 1;
  VectorQ one(1);
  one << 1;
  EXPECT_EQ(affcone::solve_exact(under, one).status, affcone::SolveStatus::underdetermined);
}
