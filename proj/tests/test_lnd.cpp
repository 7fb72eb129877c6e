#include "affcone/lnd.hpp"

#include <gtest/gtest.h>

using namespace affcone;
using namespace affcone::lnd;

namespace {

struct Quadric : ::testing::Test {
  Ring ring{{"x", "y", "z", "u"}};
  Polynomial p(const char* s) const { return parse_polynomial(ring, s); }
  Derivation d1 = parse_derivation(ring, {{"x", "u"}, {"z", "y"}});
  Derivation d2 = parse_derivation(ring, {{"y", "u"}, {"z", "x"}});
};

}  // namespace

TEST(Parser, Grammar) {
  Ring r({"x", "y", "z"});
  EXPECT_EQ(parse_polynomial(r, "xy"), parse_polynomial(r, "x*y"));
  EXPECT_EQ(parse_polynomial(r, "2x^2 - 3/4 y"), parse_polynomial(r, "2*x*x + (-3)*y/4"));
  EXPECT_EQ(parse_polynomial(r, "(x+y)^2"), parse_polynomial(r, "x^2 + 2xy + y^2"));
  EXPECT_EQ(parse_polynomial(r, "-(x - y)"), parse_polynomial(r, "y - x"));
  EXPECT_TRUE(parse_polynomial(r, "x - x").is_zero());
  EXPECT_THROW(parse_polynomial(r, "x / y"), InputError);
  EXPECT_THROW(parse_polynomial(r, "w"), InputError);
  EXPECT_THROW(parse_polynomial(r, "x +"), InputError);
  EXPECT_THROW(parse_polynomial(r, "(x"), InputError);
  EXPECT_THROW(parse_polynomial(r, "x / 0"), InputError);
}

TEST(Parser, LongestMatch) {
  Ring r({"x", "xx", "y"});
  EXPECT_EQ(parse_polynomial(r, "xxy"), parse_polynomial(r, "xx*y"));
  EXPECT_EQ(parse_polynomial(r, "xxx"), parse_polynomial(r, "xx*x"));
}

TEST(Parser, RoundTripThroughText) {
  Ring r({"x", "y", "z"});
  auto q = parse_polynomial(r, "3/2*x^3*y - z + 7 - x*y*z^2");
  EXPECT_EQ(parse_polynomial(r, to_string(r, q)), q);
  EXPECT_EQ(to_string(r, parse_polynomial(r, "y - x")), "-x + y");
}

TEST(RingTest, Validation) {
  EXPECT_THROW(Ring({"x", "x"}), InputError);
  EXPECT_THROW(Ring({"x"}, {0}), InputError);
  EXPECT_THROW(Ring({"1x"}), InputError);
}

TEST_F(Quadric, DerivationsKillTheEquation) {
  auto f = p("xy - zu");
  EXPECT_TRUE(apply(d1, f).is_zero());
  EXPECT_TRUE(apply(d2, f).is_zero());
  EXPECT_TRUE(apply(d1, p("17")).is_zero());
}

TEST_F(Quadric, OrdersAndNilpotency) {
  auto orders = generator_orders(d1);
  ASSERT_TRUE(orders.locally_nilpotent());
  EXPECT_EQ(*orders.orders[0].order, 2);
  EXPECT_EQ(*orders.orders[1].order, 1);
  EXPECT_EQ(*orders.orders[2].order, 2);
  EXPECT_EQ(*orders.orders[3].order, 1);
  EXPECT_TRUE(is_locally_nilpotent_on_generators(d2));

  Derivation euler = parse_derivation(ring, {{"x", "x"}});
  auto n = nilpotency_order(euler, p("x"), 10);
  EXPECT_FALSE(n.certified());
  EXPECT_EQ(n.bound, 10);
  EXPECT_FALSE(is_locally_nilpotent_on_generators(euler));
  EXPECT_EQ(*nilpotency_order(d1, Polynomial(4)).order, 0);
  EXPECT_THROW(nilpotency_order(d1, p("x"), 0), InputError);
}

TEST_F(Quadric, Commutator) {
  EXPECT_TRUE(commutator(d1, d2).is_zero());
  EXPECT_TRUE(commutator(d1, d1).is_zero());
  Derivation dx = parse_derivation(ring, {{"x", "1"}});
  Derivation xdy = parse_derivation(ring, {{"y", "x"}});
  EXPECT_EQ(commutator(dx, xdy), parse_derivation(ring, {{"y", "1"}}));
}

TEST_F(Quadric, IdealPreservation) {
  Ideal cone(ring, {p("xy - zu")});
  EXPECT_TRUE(preserves_ideal(d1, cone));
  EXPECT_TRUE(preserves_ideal(d2, cone));
  Derivation dx = parse_derivation(ring, {{"x", "1"}});
  EXPECT_FALSE(preserves_ideal(dx, cone));
  EXPECT_EQ(cone.normal_form(apply(dx, p("xy - zu"))), p("y"));
  Ideal zero(ring, {Polynomial(4)});
  EXPECT_TRUE(preserves_ideal(dx, zero));
  EXPECT_TRUE(zero.basis().empty());
}

TEST(Groebner, Trivial) {
  Ring r({"x", "y", "z", "u"});
  auto b = groebner_basis({parse_polynomial(r, "xy - zu")}, MonomialOrder::degrevlex);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], parse_polynomial(r, "xy - zu"));
  auto xy = groebner_basis({parse_polynomial(r, "y"), parse_polynomial(r, "x")}, MonomialOrder::lex);
  EXPECT_EQ(xy, (std::vector<Polynomial>{parse_polynomial(r, "x"), parse_polynomial(r, "y")}));
}

TEST(Groebner, TwistedCubicLex) {
  // Elimination by hand: x^2 - y, x^3 - z, lex x > y > z.
  //   S(x^3 - z, x^2 - y) reduces to xy - z;
  //   S(x^2 - y, xy - z) = y*(x^2 - y) - x*(xy - z) = xz - y^2;
  //   S(xy - z, xz - y^2) = z*(xy - z) - y*(xz - y^2) = y^3 - z^2.
  Ring r({"x", "y", "z"});
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  auto b = groebner_basis({P("x^2 - y"), P("x^3 - z")}, MonomialOrder::lex);
  std::vector<Polynomial> expected = {P("x^2 - y"), P("xy - z"), P("xz - y^2"), P("y^3 - z^2")};
  EXPECT_EQ(b, expected);
}

TEST(Groebner, Budget) {
  Ring r({"x", "y", "z"});
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  EXPECT_THROW(groebner_basis({P("x^2 - y"), P("x^3 - z")}, MonomialOrder::lex, 1), BudgetExceeded);
}

TEST(Groebner, NormalFormIdempotent) {
  Ring r({"x", "y", "z"});
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  Ideal I(r, {P("x^2 - y"), P("x^3 - z")});
  auto q = P("x^5 + 3xyz - z^2 + 1");
  auto nf = I.normal_form(q);
  EXPECT_EQ(I.normal_form(nf), nf);
  for (const auto& g : I.generators()) EXPECT_TRUE(I.contains(g));
  EXPECT_TRUE(I.contains(P("y^3 - z^2")));
}

TEST(Graded, HomogeneousParts) {
  Ring r({"x", "y", "z", "u"});
  Derivation d = parse_derivation(r, {{"x", "u + x^2"}});
  auto parts = homogeneous_parts(d);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts.at(0), parse_derivation(r, {{"x", "u"}}));
  EXPECT_EQ(parts.at(1), parse_derivation(r, {{"x", "x^2"}}));
  Derivation d1 = parse_derivation(r, {{"x", "u"}, {"z", "y"}});
  auto single = homogeneous_parts(d1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.begin()->first, 0);
  EXPECT_EQ(single.begin()->second, d1);
}

TEST(Graded, WeightsShiftDegrees) {
  Ring r({"x", "y"}, {1, 3});
  Derivation d = parse_derivation(r, {{"y", "x^3"}});
  EXPECT_EQ(homogeneous_parts(d).begin()->first, 0);
}

TEST(Graded, PrincipalPart) {
  Ring r({"x", "y", "z"});
  auto pp = principal_part(parse_derivation(r, {{"x", "z + z^2"}}));
  EXPECT_EQ(pp.part, parse_derivation(r, {{"x", "z^2"}}));
  EXPECT_EQ(pp.degree, 1);
  auto shift = principal_part(parse_derivation(r, {{"x", "1"}, {"y", "x"}}));
  EXPECT_EQ(shift.part, parse_derivation(r, {{"y", "x"}}));
  EXPECT_THROW(principal_part(parse_derivation(r, {{"x", "x"}})), InputError);
  EXPECT_THROW(principal_part(Derivation(r)), InputError);
}

TEST_F(Quadric, SlicePair) {
  std::vector<Polynomial> vars;
  for (std::size_t i = 0; i < 4; ++i) vars.push_back(Polynomial::variable(4, i));
  auto pair = find_slice_pair(d1, vars);
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->first, p("x"));
  EXPECT_EQ(pair->second, p("u"));
  EXPECT_FALSE(find_slice_pair(Derivation(ring), vars));
  Ring one({"x"});
  auto dx = find_slice_pair(parse_derivation(one, {{"x", "1"}}), {Polynomial::variable(1, 0)});
  ASSERT_TRUE(dx);
  EXPECT_EQ(dx->second, Polynomial::constant(1, 1));
}

TEST_F(Quadric, KernelMultiples) {
  for (const char* k : {"u", "y", "u^2 y - 3"}) {
    auto rep = kernel_multiple_is_lnd(d1, p(k));
    EXPECT_TRUE(rep.locally_nilpotent) << k;
  }
  auto rep = kernel_multiple_is_lnd(d1, p("u"));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(rep.original.orders[i].order, rep.multiplied.orders[i].order);
  EXPECT_THROW(kernel_multiple_is_lnd(d1, p("x")), InputError);
}

TEST(Localization, ClearDenominators) {
  Ring r({"x", "y", "z"});
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  auto y = P("y");
  auto one = clear_denominators(r, {{P("1"), 1}, {P("0"), 0}, {P("0"), 0}}, y);
  EXPECT_EQ(one.exponent, 1);
  EXPECT_EQ(one.derivation, parse_derivation(r, {{"x", "1"}}));
  auto two = clear_denominators(r, {{P("1"), 2}, {P("0"), 0}, {P("1"), 1}}, y);
  EXPECT_EQ(two.exponent, 2);
  EXPECT_EQ(two.derivation, parse_derivation(r, {{"x", "1"}, {"z", "y"}}));
  auto poly = clear_denominators(r, {{P("z"), 0}, {P("x"), 0}, {P("0"), 0}}, y);
  EXPECT_EQ(poly.exponent, 0);
  // A numerator divisible by f lowers the exponent.
  auto cancel = clear_denominators(r, {{P("y^2 x"), 3}, {P("0"), 0}, {P("0"), 0}}, y);
  EXPECT_EQ(cancel.exponent, 1);
  EXPECT_EQ(cancel.derivation.image(0), P("x"));
  EXPECT_THROW(clear_denominators(r, {{P("1"), -1}, {P("0"), 0}, {P("0"), 0}}, y), InputError);
  EXPECT_THROW(clear_denominators(r, {{P("1"), 1}}, y), InputError);
}

TEST(Localization, Divisibility) {
  Ring r({"x", "y"});
  auto P = [&](const char* s) { return parse_polynomial(r, s); };
  EXPECT_EQ(divisibility_order(P("(x + y)^3 (x - y)"), P("x + y")), 3);
  EXPECT_EQ(exact_divide(P("x^2 - y^2"), P("x - y")), P("x + y"));
  EXPECT_THROW(exact_divide(P("x^2 + y"), P("x")), InputError);
}
