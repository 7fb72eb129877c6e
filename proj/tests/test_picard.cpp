#include "affcone/picard.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace affcone;
using namespace affcone::picard;

namespace {

// Independent count: plain box search over a in [-3, 8], b_i in [-3, 4],
// unrelated to the shell search used by the library.
std::size_t box_count_minus_one(int n) {
  std::size_t count = 0;
  std::vector<int> b(static_cast<std::size_t>(n), -3);
  for (int a = -3; a <= 8; ++a) {
    std::fill(b.begin(), b.end(), -3);
    while (true) {
      long long s = 0, q = 0;
      for (int v : b) {
        s += v;
        q += v * v;
      }
      if (q == static_cast<long long>(a) * a + 1 && s == 3LL * a - 1) ++count;
      std::size_t i = 0;
      while (i < b.size() && b[i] == 4) b[i++] = -3;
      if (i == b.size()) break;
      ++b[i];
    }
  }
  return count;
}

}  // namespace

TEST(Lattice, CanonicalSquare) {
  for (int n = 0; n <= 8; ++n) {
    PicardLattice lat(n);
    EXPECT_EQ(self_intersection(lat, lat.canonical()), Rational(9 - n));
  }
  EXPECT_THROW(PicardLattice(-1), InputError);
}

TEST(Lattice, BasicPairings) {
  PicardLattice lat(5);
  EXPECT_EQ(intersect(lat, lat.line(), lat.line()), Rational(1));
  EXPECT_EQ(intersect(lat, lat.exceptional(1), lat.exceptional(1)), Rational(-1));
  EXPECT_EQ(intersect(lat, lat.exceptional(1), lat.exceptional(2)), Rational(0));
  LatticeClass conic = 2 * lat.line() - lat.exceptional_sum();
  EXPECT_EQ(anticanonical_degree(lat, conic), Rational(1));
  EXPECT_THROW(intersect(lat, conic, PicardLattice(4).line()), InputError);
}

TEST(Lattice, AdjunctionGenus) {
  PicardLattice six(6);
  EXPECT_EQ(adjunction_genus(six, six.exceptional(1)), Rational(0));
  EXPECT_EQ(adjunction_genus(six, six.anticanonical()), Rational(1));
  PicardLattice zero(0);
  EXPECT_EQ(adjunction_genus(zero, zero.make({5})), Rational(6));
  EXPECT_THROW(adjunction_genus(zero, zero.make({Rational(1, 2)})), InputError);
}

TEST(Enumeration, MinusOneCounts) {
  const std::size_t expected[] = {0, 1, 3, 6, 10, 16, 27, 56, 240};
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(enumerate_minus_one_classes(PicardLattice(n)).size(), expected[n]) << "n=" << n;
  EXPECT_THROW(enumerate_minus_one_classes(PicardLattice(9)), InputError);
}

TEST(Enumeration, AgreesWithWideBox) {
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(enumerate_minus_one_classes(PicardLattice(n)).size(), box_count_minus_one(n)) << n;
}

TEST(Enumeration, MinusOneClassesAreSmoothRational) {
  PicardLattice lat(7);
  for (const auto& c : enumerate_minus_one_classes(lat)) {
    EXPECT_EQ(self_intersection(lat, c), Rational(-1));
    EXPECT_EQ(intersect(lat, c, lat.canonical()), Rational(-1));
    EXPECT_EQ(adjunction_genus(lat, c), Rational(0));
  }
}

TEST(Enumeration, SortedAndDistinct) {
  auto lines = enumerate_minus_one_classes(PicardLattice(6));
  std::set<std::vector<std::string>> seen;
  for (const auto& c : lines) {
    std::vector<std::string> key;
    for (const auto& x : c) key.push_back(to_string(x));
    seen.insert(key);
  }
  EXPECT_EQ(seen.size(), lines.size());
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  }));
}

TEST(Enumeration, Conics) {
  EXPECT_TRUE(enumerate_conic_classes(PicardLattice(0)).empty());
  PicardLattice one(1);
  auto c1 = enumerate_conic_classes(one);
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_EQ(c1[0], one.line() - one.exceptional(1));
  PicardLattice six(6);
  auto conics = enumerate_conic_classes(six);
  EXPECT_EQ(conics.size(), 27u);
  // Each conic has a residual line: -K - F is a (-1)-class.
  auto lines = enumerate_minus_one_classes(six);
  for (const auto& f : conics) {
    LatticeClass residual = six.anticanonical() - f;
    EXPECT_NE(std::find(lines.begin(), lines.end(), residual), lines.end());
  }
}

TEST(Enumeration, RootCounts) {
  EXPECT_EQ(enumerate_roots(PicardLattice(6)).size(), 72u);
  EXPECT_EQ(enumerate_roots(PicardLattice(7)).size(), 126u);
  EXPECT_EQ(enumerate_roots(PicardLattice(8)).size(), 240u);
  EXPECT_EQ(enumerate_roots(PicardLattice(3)).size(), 8u);  // A2 x A1
}

TEST(Weyl, ReflectTransposesExceptionals) {
  PicardLattice lat(2);
  LatticeClass r = lat.exceptional(1) - lat.exceptional(2);
  EXPECT_EQ(reflect(lat, r, lat.exceptional(1)), lat.exceptional(2));
  EXPECT_EQ(reflect(lat, r, lat.canonical()), lat.canonical());
  EXPECT_THROW(reflect(lat, lat.line(), lat.line()), InputError);
}

TEST(Weyl, SimpleRootsAreRoots) {
  PicardLattice lat(6);
  auto simple = simple_roots(lat);
  EXPECT_EQ(simple.size(), 6u);
  for (const auto& r : simple) EXPECT_TRUE(is_root(lat, r));
}

TEST(Weyl, ReflectionsPermuteLines) {
  PicardLattice lat(6);
  auto lines = enumerate_minus_one_classes(lat);
  for (const auto& r : simple_roots(lat))
    for (const auto& c : lines)
      EXPECT_NE(std::find(lines.begin(), lines.end(), reflect(lat, r, c)), lines.end());
}

TEST(Nef, CubicExamples) {
  PicardLattice lat(6);
  EXPECT_TRUE(is_ample(lat, lat.anticanonical()));
  EXPECT_TRUE(is_nef(lat, lat.line()));
  EXPECT_FALSE(is_ample(lat, lat.line()));
  EXPECT_FALSE(is_nef(lat, lat.exceptional(1)));
  EXPECT_THROW(is_nef(PicardLattice(9), PicardLattice(9).line()), InputError);
}

TEST(Nef, PlaneSpecialCase) {
  PicardLattice lat(0);
  EXPECT_TRUE(is_nef(lat, lat.make({2})));
  EXPECT_FALSE(is_nef(lat, lat.make({-1})));
  EXPECT_EQ(inverse_nef_value(lat, lat.make({3})), Rational(1));
}

TEST(Nef, InverseNefValue) {
  PicardLattice lat(6);
  EXPECT_EQ(inverse_nef_value(lat, lat.anticanonical()), Rational(1));
  EXPECT_EQ(inverse_nef_value(lat, lat.line()), Rational(0));
  LatticeClass f = lat.line() - lat.exceptional(1);
  LatticeClass h = 2 * lat.anticanonical() + 3 * f;
  EXPECT_EQ(inverse_nef_value(lat, h), Rational(2));
  EXPECT_THROW(inverse_nef_value(lat, lat.exceptional(1)), InputError);
}

TEST(Nef, AdjointType) {
  PicardLattice six(6);
  EXPECT_EQ(adjoint_kodaira_type(six, six.anticanonical()), AdjointType::zero);
  EXPECT_EQ(adjoint_kodaira_type(six, 2 * six.anticanonical() + six.line()), AdjointType::big);
  PicardLattice one(1);
  EXPECT_EQ(adjoint_kodaira_type(one, one.anticanonical() + one.line() - one.exceptional(1)),
            AdjointType::fiber);
}

TEST(Transform, TotalAndProper) {
  PicardLattice p2(0);
  LatticeClass conic = proper_transform(p2, p2.make({2}), 1);
  PicardLattice f1 = blown_up(p2);
  EXPECT_EQ(conic, f1.make({2, -1}));
  EXPECT_EQ(self_intersection(f1, conic), Rational(3));
  EXPECT_EQ(intersect(f1, conic, f1.exceptional(1)), Rational(1));
}

TEST(Transform, CubicThroughPointsIdentity) {
  // C = dL - sum E_j through m points; C' its proper transform (no further
  // points) satisfies 3C' + (3-d) sum E_j = -dK on the blown-up lattice.
  for (int d = 1; d <= 6; ++d)
    for (int m = 1; m <= 8; ++m) {
      PicardLattice lat(m);
      LatticeClass c = d * lat.line() - lat.exceptional_sum();
      EXPECT_EQ(3 * c + (3 - d) * lat.exceptional_sum(), d * lat.anticanonical());
    }
}

TEST(Crepant, SingleBlowup) {
  PicardLattice p2(0);
  PicardLattice w = blown_up(p2);
  for (int m = 1; m <= 4; ++m) {
    // D a curve of degree m with an ordinary m-fold point; only the
    // local multiplicity matters for the crepant coefficient.
    ResolutionData res{w, {w.exceptional(1)}, proper_transform(p2, p2.make({m}), m),
                       total_transform(p2, p2.make({m}))};
    auto pull = crepant_pullback(res);
    ASSERT_EQ(pull.coefficients.size(), 1u);
    EXPECT_EQ(pull.coefficients[0], Rational(m - 1));
    EXPECT_EQ(pull.discrepancies()[0], Rational(1 - m));
    EXPECT_EQ(is_log_canonical(pull.coefficients, {1}), m <= 2);
  }
}

TEST(Crepant, PencilOfLinesBoundary) {
  // D = (3/2)(l1 + l2), two lines through P; W = F_1 with section E.
  PicardLattice w(1);
  LatticeClass strict = Rational(3) * (w.line() - w.exceptional(1));
  auto pull = crepant_pullback({w, {w.exceptional(1)}, strict, 3 * w.line()});
  EXPECT_EQ(pull.coefficients[0], Rational(2));
  LatticeClass fiber = w.line() - w.exceptional(1);
  EXPECT_EQ(intersect(w, pull.boundary, fiber), anticanonical_degree(w, fiber));
}

TEST(Crepant, RejectsBadGram) {
  PicardLattice w(1);
  EXPECT_THROW(crepant_pullback({w, {w.line()}, w.zero(), w.zero()}), InputError);
  EXPECT_THROW(crepant_pullback({w, {}, w.zero(), w.zero()}), InputError);
}

TEST(Crepant, ResidualIsZero) {
  PicardLattice w(3);
  std::vector<LatticeClass> ex = {w.exceptional(1) - w.exceptional(2), w.exceptional(2) - w.exceptional(3),
                                  w.exceptional(3)};
  LatticeClass strict = w.make({3, Rational(-1, 2), Rational(-1, 2), Rational(-3, 2)});
  auto pull = crepant_pullback({w, ex, strict, w.make({3, 0, 0, 0})});
  for (const auto& e : ex) EXPECT_TRUE(intersect(w, w.canonical() + pull.boundary, e).is_zero());
}
