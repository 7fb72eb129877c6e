#pragma once

// Sparse multivariate polynomials over Q, derivations acting on them, and a
// small Buchberger engine for ideal membership.

#include "affcone/error.hpp"
#include "affcone/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affcone::lnd {

using Monomial = std::vector<int>;  // exponent per variable

/// Ordered variable names with positive integer weights (all 1 by default).
class Ring {
 public:
  explicit Ring(std::vector<std::string> vars, std::vector<int> weights = {});

  std::size_t size() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  /// Index of a variable name; throws InputError if unknown.
  std::size_t index(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  std::vector<std::string> vars_;
  std::vector<int> weights_;
};

enum class MonomialOrder { degrevlex, lex };

/// Strict "a > b" under the order; lex and degrevlex both rank x_0 highest.
bool monomial_greater(MonomialOrder order, const Monomial& a, const Monomial& b);

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial term(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;
  int total_degree() const;  // -1 for the zero polynomial

  /// Adds c * m, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int e) const;
  /// d/dx_i.
  Polynomial partial(std::size_t i) const;

  /// Leading monomial and coefficient; the polynomial must be nonzero.
  std::pair<Monomial, Rational> leading(MonomialOrder order) const;

 private:
  void check_compatible(const Polynomial& o) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Weighted degree sum w_i e_i of a monomial.
int weighted_degree(const Ring& ring, const Monomial& m);

/// Renders with the ring's variable names, highest degrevlex term first.
std::string to_string(const Ring& ring, const Polynomial& p);

/// Parses rationals, variables, + - * / ^ and parentheses. Juxtaposition
/// multiplies, and a run of letters such as "xy" is split into known variable
/// names by longest match. Division is by nonzero constants only.
Polynomial parse_polynomial(const Ring& ring, std::string_view text);

class Derivation {
 public:
  explicit Derivation(const Ring& ring);
  Derivation(const Ring& ring, std::vector<Polynomial> images);

  const Ring& ring() const { return ring_; }
  const Polynomial& image(std::size_t i) const { return images_.at(i); }
  const std::vector<Polynomial>& images() const { return images_; }
  void set_image(std::size_t i, Polynomial p);
  bool is_zero() const;

  Derivation& operator+=(const Derivation& o);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(const Derivation& a, const Derivation& b);
  /// p * d, for p in the ring.
  friend Derivation operator*(const Polynomial& p, const Derivation& d);
  friend Derivation operator*(const Rational& c, const Derivation& d);
  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  Ring ring_;
  std::vector<Polynomial> images_;
};

/// Builds a derivation from {variable name: image text}; unspecified
/// variables map to 0.
Derivation parse_derivation(const Ring& ring, const std::map<std::string, std::string>& images);

/// Leibniz extension: sum_i d(x_i) * dp/dx_i.
Polynomial apply(const Derivation& d, const Polynomial& p);

constexpr int kDefaultNilpotencyBound = 64;

/// Smallest k with d^k p = 0, or nullopt once k would exceed the bound.
/// A nullopt means "not certified", never "not nilpotent".
struct NilpotencyOrder {
  std::optional<int> order;
  int bound = kDefaultNilpotencyBound;

  bool certified() const { return order.has_value(); }
};

NilpotencyOrder nilpotency_order(const Derivation& d, const Polynomial& p,
                                 int bound = kDefaultNilpotencyBound);

struct GeneratorOrders {
  std::vector<NilpotencyOrder> orders;  // one per ring variable
  bool locally_nilpotent() const;
};

GeneratorOrders generator_orders(const Derivation& d, int bound = kDefaultNilpotencyBound);
bool is_locally_nilpotent_on_generators(const Derivation& d, int bound = kDefaultNilpotencyBound);

/// [d1, d2](x_i) = d1(d2 x_i) - d2(d1 x_i).
Derivation commutator(const Derivation& d1, const Derivation& d2);

constexpr std::size_t kDefaultPairBudget = 20000;

/// Reduced, monic Groebner basis. Throws BudgetExceeded when more than
/// pair_budget S-pairs would have to be reduced.
std::vector<Polynomial> groebner_basis(std::vector<Polynomial> gens, MonomialOrder order,
                                       std::size_t pair_budget = kDefaultPairBudget);

/// Remainder of p on division by a Groebner basis.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis, MonomialOrder order);

/// An ideal together with its Groebner basis, computed once at construction.
class Ideal {
 public:
  Ideal(const Ring& ring, std::vector<Polynomial> gens, MonomialOrder order = MonomialOrder::degrevlex,
        std::size_t pair_budget = kDefaultPairBudget);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  MonomialOrder order() const { return order_; }

  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

 private:
  Ring ring_;
  std::vector<Polynomial> gens_;
  MonomialOrder order_;
  std::vector<Polynomial> basis_;
};

/// d(g) lies in I for every generator g of I.
bool preserves_ideal(const Derivation& d, const Ideal& ideal);

/// Homogeneous components keyed by degree: a term c*m in d(x_i) has degree
/// wdeg(m) - w_i.
std::map<int, Derivation> homogeneous_parts(const Derivation& d);

struct PrincipalPart {
  int degree = 0;
  Derivation part;
};

/// Highest-degree homogeneous part. Throws InputError if d is zero, if d is
/// not certified locally nilpotent within the bound, or if the part is not.
PrincipalPart principal_part(const Derivation& d, int bound = kDefaultNilpotencyBound);

/// (g, h) with h = d(g) != 0 and d(h) = 0, from the first g in the search
/// space that works; g/h is then a slice where h does not vanish.
std::optional<std::pair<Polynomial, Polynomial>> find_slice_pair(const Derivation& d,
                                                                 const std::vector<Polynomial>& space);

struct KernelMultipleReport {
  bool locally_nilpotent = false;
  GeneratorOrders original;
  GeneratorOrders multiplied;
};

/// Certifies p*d for p in ker d. Throws InputError if d(p) != 0.
KernelMultipleReport kernel_multiple_is_lnd(const Derivation& d, const Polynomial& p,
                                            int bound = kDefaultNilpotencyBound);

/// Image numerator / f^power of a derivation on the localization by f.
struct LocalizedImage {
  Polynomial numerator;
  int power = 0;
};

struct ClearedDerivation {
  int exponent = 0;  // N
  Derivation derivation;  // f^N * d
};

/// Largest k with f^k dividing p (p nonzero, f nonconstant).
int divisibility_order(const Polynomial& p, const Polynomial& f);

/// Exact quotient p / f; throws InputError if f does not divide p.
Polynomial exact_divide(const Polynomial& p, const Polynomial& f);

/// Minimal N >= 0 such that f^N d(x_i) is a polynomial for every variable.
ClearedDerivation clear_denominators(const Ring& ring, const std::vector<LocalizedImage>& images,
                                     const Polynomial& f);

}  // namespace affcone::lnd
