#pragma once

// Intersection theory on the Picard lattice Z^{1,n} of the plane blown up at
// n points, basis (L, E_1, ..., E_n) with form diag(+1, -1, ..., -1).

#include "affcone/error.hpp"
#include "affcone/linalg.hpp"
#include "affcone/rational.hpp"

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

namespace affcone::picard {

/// Coefficients of L first, then E_1..E_n.
using LatticeClass = VectorQ;

class PicardLattice {
 public:
  explicit PicardLattice(int points);

  int points() const { return n_; }
  Eigen::Index rank() const { return n_ + 1; }
  /// K^2 = 9 - n.
  int degree() const { return 9 - n_; }

  LatticeClass zero() const { return LatticeClass::Zero(rank()); }
  LatticeClass line() const;
  /// E_i, 1-based.
  LatticeClass exceptional(int i) const;
  /// K = -3L + E_1 + ... + E_n.
  LatticeClass canonical() const;
  LatticeClass anticanonical() const { return -canonical(); }
  /// Sum of all E_i.
  LatticeClass exceptional_sum() const;
  /// Builds a class from explicit coefficients; the count must equal rank().
  LatticeClass make(std::initializer_list<Rational> coeffs) const;
  LatticeClass make(const std::vector<Rational>& coeffs) const;

  /// diag(+1, -1, ..., -1).
  MatrixQ form() const;

  template <typename Derived>
  void check(const Eigen::MatrixBase<Derived>& c) const {
    if (c.size() != rank())
      throw InputError("class has " + std::to_string(c.size()) + " coefficients, lattice rank is " +
                       std::to_string(rank()));
  }

  friend bool operator==(const PicardLattice&, const PicardLattice&) = default;

 private:
  int n_;
};

inline PicardLattice make_lattice(int n) { return PicardLattice(n); }

/// a . b under the diagonal form.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar intersect(const PicardLattice& lat, const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  lat.check(a);
  lat.check(b);
  const Eigen::Index n = lat.points();
  return a(0) * b(0) - a.tail(n).dot(b.tail(n));
}

template <typename Derived>
typename Derived::Scalar self_intersection(const PicardLattice& lat,
                                           const Eigen::MatrixBase<Derived>& a) {
  return intersect(lat, a, a);
}

/// Anticanonical degree (-K) . c.
template <typename Derived>
Rational anticanonical_degree(const PicardLattice& lat, const Eigen::MatrixBase<Derived>& c) {
  return intersect(lat, lat.anticanonical(), c);
}

bool is_integral(const LatticeClass& c);

/// Arithmetic genus (c.c + c.K)/2 + 1 of an integral class.
Rational adjunction_genus(const PicardLattice& lat, const LatticeClass& c);

/// All integral c with c.c = -1 and c.K = -1, sorted lexicographically.
/// Requires 0 <= n <= 8.
std::vector<LatticeClass> enumerate_minus_one_classes(const PicardLattice& lat);

/// All integral c with c.c = 0, c.K = -2 and c.L >= 0, sorted.
std::vector<LatticeClass> enumerate_conic_classes(const PicardLattice& lat);

/// All integral r with r.r = -2 and r.K = 0, sorted.
std::vector<LatticeClass> enumerate_roots(const PicardLattice& lat);

/// E_i - E_{i+1} for 1 <= i < n, then L - E_1 - E_2 - E_3 when n >= 3.
std::vector<LatticeClass> simple_roots(const PicardLattice& lat);

bool is_root(const PicardLattice& lat, const LatticeClass& r);

/// Weyl reflection x + (x.r) r in the root r.
LatticeClass reflect(const PicardLattice& lat, const LatticeClass& r, const LatticeClass& x);

/// Generators of the Mori cone used by the nef tests: the (-1)-classes, plus
/// the ruling L - E_1 when n = 1. Requires 1 <= n <= 8.
std::vector<LatticeClass> mori_generators(const PicardLattice& lat);

bool is_nef(const PicardLattice& lat, const LatticeClass& h);
bool is_ample(const PicardLattice& lat, const LatticeClass& h);

/// Largest t with h + tK nef. Requires h nef.
Rational inverse_nef_value(const PicardLattice& lat, const LatticeClass& h);

enum class AdjointType { zero, fiber, big };

std::string to_string(AdjointType t);

/// Classifies M = h + t0 K by its square.
AdjointType adjoint_kodaira_type(const PicardLattice& lat, const LatticeClass& h);

/// The lattice of one further blowup.
inline PicardLattice blown_up(const PicardLattice& lat) { return PicardLattice(lat.points() + 1); }

/// Pullback to the blowup at one more point: coefficient 0 on the new E.
LatticeClass total_transform(const PicardLattice& from, const LatticeClass& c);

/// total_transform(c) - m E_new.
LatticeClass proper_transform(const PicardLattice& from, const LatticeClass& c,
                              const Rational& multiplicity);

struct ResolutionData {
  PicardLattice lattice;                 // lattice of the resolved surface W
  std::vector<LatticeClass> exceptional;  // exceptional curves over the point
  LatticeClass strict;                   // strict transform D' of the boundary
  LatticeClass pullback_class;           // p^* D
};

struct CrepantPullback {
  /// c_i with (K_W + D' + sum c_i E_i) . E_j = 0 for every j.
  std::vector<Rational> coefficients;
  /// D_W = D' + sum c_i E_i.
  LatticeClass boundary;

  /// a(E_i, D) = -c_i.
  std::vector<Rational> discrepancies() const;
};

/// Gram matrix E_i . E_j of a list of classes.
MatrixQ gram_matrix(const PicardLattice& lat, const std::vector<LatticeClass>& classes);

/// Solves for the crepant coefficients. Throws InputError unless the Gram
/// matrix of the exceptional classes is negative definite.
CrepantPullback crepant_pullback(const ResolutionData& res);

/// True iff every crepant and every boundary coefficient is at most 1.
bool is_log_canonical(const std::vector<Rational>& crepant_coefficients,
                      const std::vector<Rational>& boundary_coefficients);

}  // namespace affcone::picard
