#include "affcone/lnd.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace affcone::lnd {

// ---- Ring -------------------------------------------------------------------

Ring::Ring(std::vector<std::string> vars, std::vector<int> weights)
    : vars_(std::move(vars)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(vars_.size(), 1);
  if (weights_.size() != vars_.size()) throw InputError("ring has a different number of weights and variables");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw InputError("variable name '" + v + "' must start with a letter");
    for (char ch : v)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        throw InputError("variable name '" + v + "' has an invalid character");
    if (weights_[i] < 1) throw InputError("weight of '" + v + "' must be a positive integer");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw InputError("duplicate variable '" + v + "'");
  }
}

std::optional<std::size_t> Ring::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

// ---- monomials --------------------------------------------------------------

namespace {

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial q(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
  return q;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

}  // namespace

bool monomial_greater(MonomialOrder order, const Monomial& a, const Monomial& b) {
  if (order == MonomialOrder::lex) return a > b;
  const int da = degree(a), db = degree(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

int weighted_degree(const Ring& ring, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += ring.weights()[i] * m[i];
  return d;
}

// ---- Polynomial -------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars, 0);
  m.at(i) = 1;
  return term(m, 1);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree(terms_.begin()->first) == 0);
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, degree(m));
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw InputError("monomial length does not match the ring");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw InputError("polynomials live in rings of different size");
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial out(a.nvars_);
  Monomial m(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw InputError("negative exponent");
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::partial(std::size_t i) const {
  if (i >= nvars_) throw InputError("partial derivative index out of range");
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    --d[i];
    out.add_term(d, c * Rational(m[i]));
  }
  return out;
}

std::pair<Monomial, Rational> Polynomial::leading(MonomialOrder order) const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (monomial_greater(order, it->first, best->first)) best = it;
  return *best;
}

std::string to_string(const Ring& ring, const Polynomial& p) {
  if (p.nvars() != ring.size()) throw InputError("polynomial does not belong to this ring");
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return monomial_greater(MonomialOrder::degrevlex, a.first, b.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = c < Rational(0);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const Rational mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring.vars()[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty())
      out += to_string(mag);
    else if (mag == Rational(1))
      out += mono;
    else
      out += to_string(mag) + "*" + mono;
  }
  return out;
}

// ---- parser -----------------------------------------------------------------

namespace {

class PolynomialParser {
 public:
  PolynomialParser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial '" + std::string(text_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_atom() {
    const char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  Polynomial expression() {
    Polynomial acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Polynomial rhs = term();
      if (c == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= unary();
      } else if (c == '/') {
        ++pos_;
        Polynomial den = unary();
        if (!den.is_constant() || den.is_zero()) fail("division only by nonzero constants");
        acc *= Rational(1) / den.coefficient(Monomial(ring_.size(), 0));
      } else if (starts_atom()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      if (pos_ - start > 4) fail("exponent too large");
      base = base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Polynomial atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (peek() != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(ring_.size(), parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return identifier(text_.substr(start, pos_ - start));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  // "xy" -> x*y by repeatedly taking the longest variable name that is a
  // prefix; trailing digits after a full match are a coefficient ("x2" is
  // not allowed unless a variable x2 exists).
  Polynomial identifier(std::string_view word) {
    Polynomial acc = Polynomial::constant(ring_.size(), 1);
    std::size_t i = 0;
    while (i < word.size()) {
      std::size_t best = 0;
      std::size_t best_len = 0;
      for (std::size_t v = 0; v < ring_.size(); ++v) {
        const auto& name = ring_.vars()[v];
        if (name.size() > best_len && word.substr(i, name.size()) == name) {
          best = v;
          best_len = name.size();
        }
      }
      if (best_len == 0) fail("unknown variable in '" + std::string(word) + "'");
      acc *= Polynomial::variable(ring_.size(), best);
      i += best_len;
    }
    return acc;
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, std::string_view text) {
  return PolynomialParser(ring, text).parse();
}

// ---- Derivation -------------------------------------------------------------

Derivation::Derivation(const Ring& ring) : ring_(ring), images_(ring.size(), Polynomial(ring.size())) {}

Derivation::Derivation(const Ring& ring, std::vector<Polynomial> images)
    : ring_(ring), images_(std::move(images)) {
  if (images_.size() != ring_.size()) throw InputError("derivation needs one image per variable");
  for (const auto& p : images_)
    if (p.nvars() != ring_.size()) throw InputError("derivation image lives in the wrong ring");
}

void Derivation::set_image(std::size_t i, Polynomial p) {
  if (p.nvars() != ring_.size()) throw InputError("derivation image lives in the wrong ring");
  images_.at(i) = std::move(p);
}

bool Derivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

Derivation& Derivation::operator+=(const Derivation& o) {
  if (!(o.ring_ == ring_)) throw InputError("derivations on different rings");
  for (std::size_t i = 0; i < images_.size(); ++i) images_[i] += o.images_[i];
  return *this;
}

Derivation operator-(const Derivation& a, const Derivation& b) { return a + Rational(-1) * b; }

Derivation operator*(const Polynomial& p, const Derivation& d) {
  Derivation out = d;
  for (auto& img : out.images_) img = p * img;
  return out;
}

Derivation operator*(const Rational& c, const Derivation& d) {
  Derivation out = d;
  for (auto& img : out.images_) img *= c;
  return out;
}

Derivation parse_derivation(const Ring& ring, const std::map<std::string, std::string>& images) {
  Derivation d(ring);
  for (const auto& [var, text] : images) d.set_image(ring.index(var), parse_polynomial(ring, text));
  return d;
}

Polynomial apply(const Derivation& d, const Polynomial& p) {
  if (p.nvars() != d.ring().size()) throw InputError("polynomial and derivation use different rings");
  Polynomial out(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (d.image(i).is_zero()) continue;
    out += d.image(i) * p.partial(i);
  }
  return out;
}

NilpotencyOrder nilpotency_order(const Derivation& d, const Polynomial& p, int bound) {
  if (bound < 1) throw InputError("nilpotency bound must be at least 1");
  NilpotencyOrder out;
  out.bound = bound;
  Polynomial cur = p;
  for (int k = 0; k <= bound; ++k) {
    if (cur.is_zero()) {
      out.order = k;
      return out;
    }
    if (k < bound) cur = apply(d, cur);
  }
  return out;
}

bool GeneratorOrders::locally_nilpotent() const {
  return std::all_of(orders.begin(), orders.end(), [](const NilpotencyOrder& o) { return o.certified(); });
}

GeneratorOrders generator_orders(const Derivation& d, int bound) {
  GeneratorOrders out;
  for (std::size_t i = 0; i < d.ring().size(); ++i)
    out.orders.push_back(nilpotency_order(d, Polynomial::variable(d.ring().size(), i), bound));
  return out;
}

bool is_locally_nilpotent_on_generators(const Derivation& d, int bound) {
  return generator_orders(d, bound).locally_nilpotent();
}

Derivation commutator(const Derivation& d1, const Derivation& d2) {
  if (!(d1.ring() == d2.ring())) throw InputError("commutator of derivations on different rings");
  Derivation out(d1.ring());
  for (std::size_t i = 0; i < d1.ring().size(); ++i)
    out.set_image(i, apply(d1, d2.image(i)) - apply(d2, d1.image(i)));
  return out;
}

// ---- Groebner bases ---------------------------------------------------------

namespace {

Polynomial monic(Polynomial p, MonomialOrder order) {
  if (p.is_zero()) return p;
  const Rational lc = p.leading(order).second;
  return p * (Rational(1) / lc);
}

struct BasisElement {
  Polynomial poly;
  Monomial lm;
  Rational lc;
};

Polynomial reduce(Polynomial p, const std::vector<BasisElement>& basis, MonomialOrder order) {
  Polynomial remainder(p.nvars());
  while (!p.is_zero()) {
    auto [m, c] = p.leading(order);
    bool reduced = false;
    for (const auto& g : basis) {
      if (!divides(g.lm, m)) continue;
      p -= Polynomial::term(quotient(m, g.lm), c / g.lc) * g.poly;
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.add_term(m, c);
      p.add_term(m, -c);
    }
  }
  return remainder;
}

std::vector<BasisElement> elements(const std::vector<Polynomial>& polys, MonomialOrder order) {
  std::vector<BasisElement> out;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    auto [m, c] = p.leading(order);
    out.push_back({p, m, c});
  }
  return out;
}

Polynomial s_polynomial(const BasisElement& f, const BasisElement& g) {
  const Monomial l = lcm(f.lm, g.lm);
  return Polynomial::term(quotient(l, f.lm), Rational(1) / f.lc) * f.poly -
         Polynomial::term(quotient(l, g.lm), Rational(1) / g.lc) * g.poly;
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis, MonomialOrder order) {
  return reduce(p, elements(basis, order), order);
}

std::vector<Polynomial> groebner_basis(std::vector<Polynomial> gens, MonomialOrder order,
                                       std::size_t pair_budget) {
  std::vector<BasisElement> g;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  auto add = [&](Polynomial p) {
    p = monic(std::move(p), order);
    auto [m, c] = p.leading(order);
    const std::size_t t = g.size();
    g.push_back({std::move(p), m, c});
    for (std::size_t i = 0; i < t; ++i) pairs.insert({i, t});
  };
  for (auto& p : gens)
    if (!p.is_zero()) add(std::move(p));

  std::size_t reduced = 0;
  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first.
    auto pick = pairs.begin();
    Monomial best = lcm(g[pick->first].lm, g[pick->second].lm);
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      Monomial l = lcm(g[it->first].lm, g[it->second].lm);
      if (monomial_greater(order, best, l)) {
        best = std::move(l);
        pick = it;
      }
    }
    const auto [i, j] = *pick;
    pairs.erase(pick);

    // Product criterion.
    if (coprime(g[i].lm, g[j].lm)) continue;
    // Chain criterion.
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k) {
      if (k == i || k == j || !divides(g[k].lm, best)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = !pairs.count(key(i, k)) && !pairs.count(key(j, k));
    }
    if (chain) continue;

    if (++reduced > pair_budget)
      throw BudgetExceeded("Groebner basis needs more than " + std::to_string(pair_budget) + " S-pair reductions");
    Polynomial h = reduce(s_polynomial(g[i], g[j]), g, order);
    if (!h.is_zero()) add(std::move(h));
  }

  // Minimal basis, then interreduce.
  std::vector<BasisElement> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < g.size() && !redundant; ++k) {
      if (k == i || !divides(g[k].lm, g[i].lm)) continue;
      redundant = g[k].lm != g[i].lm || k < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<BasisElement> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    Polynomial tail = minimal[i].poly;
    tail.add_term(minimal[i].lm, -minimal[i].lc);
    out.push_back(monic(Polynomial::term(minimal[i].lm, minimal[i].lc) + reduce(tail, others, order), order));
  }
  std::sort(out.begin(), out.end(), [order](const Polynomial& a, const Polynomial& b) {
    return monomial_greater(order, a.leading(order).first, b.leading(order).first);
  });
  return out;
}

Ideal::Ideal(const Ring& ring, std::vector<Polynomial> gens, MonomialOrder order, std::size_t pair_budget)
    : ring_(ring), gens_(std::move(gens)), order_(order) {
  for (const auto& g : gens_)
    if (g.nvars() != ring_.size()) throw InputError("ideal generator lives in the wrong ring");
  basis_ = groebner_basis(gens_, order_, pair_budget);
}

Polynomial Ideal::normal_form(const Polynomial& p) const { return lnd::normal_form(p, basis_, order_); }

bool preserves_ideal(const Derivation& d, const Ideal& ideal) {
  if (!(d.ring() == ideal.ring())) throw InputError("derivation and ideal use different rings");
  return std::all_of(ideal.generators().begin(), ideal.generators().end(),
                     [&](const Polynomial& g) { return ideal.contains(apply(d, g)); });
}

// ---- graded structure -------------------------------------------------------

std::map<int, Derivation> homogeneous_parts(const Derivation& d) {
  const Ring& ring = d.ring();
  std::map<int, Derivation> parts;
  for (std::size_t i = 0; i < ring.size(); ++i)
    for (const auto& [m, c] : d.image(i).terms()) {
      const int deg = weighted_degree(ring, m) - ring.weights()[i];
      auto it = parts.try_emplace(deg, ring).first;
      Polynomial img = it->second.image(i);
      img.add_term(m, c);
      it->second.set_image(i, std::move(img));
    }
  return parts;
}

PrincipalPart principal_part(const Derivation& d, int bound) {
  if (d.is_zero()) throw InputError("the zero derivation has no principal part");
  if (!is_locally_nilpotent_on_generators(d, bound))
    throw InputError("derivation is not certified locally nilpotent within bound " + std::to_string(bound));
  auto parts = homogeneous_parts(d);
  auto top = std::prev(parts.end());
  if (!is_locally_nilpotent_on_generators(top->second, bound))
    throw InputError("principal part is not certified locally nilpotent within bound " + std::to_string(bound));
  return {top->first, top->second};
}

std::optional<std::pair<Polynomial, Polynomial>> find_slice_pair(const Derivation& d,
                                                                 const std::vector<Polynomial>& space) {
  for (const auto& g : space) {
    Polynomial h = apply(d, g);
    if (!h.is_zero() && apply(d, h).is_zero()) return std::make_pair(g, h);
  }
  return std::nullopt;
}

KernelMultipleReport kernel_multiple_is_lnd(const Derivation& d, const Polynomial& p, int bound) {
  if (!apply(d, p).is_zero()) throw InputError("multiplier is not in the kernel of the derivation");
  KernelMultipleReport r;
  r.original = generator_orders(d, bound);
  r.multiplied = generator_orders(p * d, bound);
  r.locally_nilpotent = r.multiplied.locally_nilpotent();
  return r;
}

// ---- localization -----------------------------------------------------------

namespace {

std::optional<Polynomial> try_divide(Polynomial p, const Polynomial& f) {
  const auto order = MonomialOrder::degrevlex;
  const auto [lm, lc] = f.leading(order);
  Polynomial q(p.nvars());
  while (!p.is_zero()) {
    auto [m, c] = p.leading(order);
    if (!divides(lm, m)) return std::nullopt;
    Polynomial t = Polynomial::term(quotient(m, lm), c / lc);
    p -= t * f;
    q += t;
  }
  return q;
}

}  // namespace

Polynomial exact_divide(const Polynomial& p, const Polynomial& f) {
  if (f.is_zero()) throw InputError("division by the zero polynomial");
  if (auto q = try_divide(p, f)) return *q;
  throw InputError("polynomial is not divisible");
}

int divisibility_order(const Polynomial& p, const Polynomial& f) {
  if (p.is_zero()) throw InputError("divisibility order of the zero polynomial");
  if (f.is_constant()) throw InputError("divisibility order needs a nonconstant divisor");
  int k = 0;
  Polynomial cur = p;
  while (auto q = try_divide(cur, f)) {
    cur = std::move(*q);
    ++k;
  }
  return k;
}

ClearedDerivation clear_denominators(const Ring& ring, const std::vector<LocalizedImage>& images,
                                     const Polynomial& f) {
  if (images.size() != ring.size()) throw InputError("localized derivation needs one image per variable");
  if (f.nvars() != ring.size() || f.is_zero()) throw InputError("localizing element must be a nonzero ring element");
  for (const auto& img : images) {
    if (img.power < 0) throw InputError("denominator exponent must be nonnegative");
    if (img.numerator.nvars() != ring.size()) throw InputError("image numerator lives in the wrong ring");
  }
  ClearedDerivation out{0, Derivation(ring)};
  if (!f.is_constant()) {
    for (const auto& img : images) {
      if (img.numerator.is_zero()) continue;
      const int v = divisibility_order(img.numerator, f);
      out.exponent = std::max(out.exponent, img.power - v);
    }
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& img = images[i];
    Polynomial value = img.numerator;
    if (f.is_constant()) {
      // A unit: f^N d(x_i) with N = 0 is numerator / f^power.
      const Rational unit = f.coefficient(Monomial(ring.size(), 0));
      for (int k = 0; k < img.power; ++k) value *= Rational(1) / unit;
    } else if (img.power <= out.exponent) {
      value *= f.pow(out.exponent - img.power);
    } else {
      value = exact_divide(value, f.pow(img.power - out.exponent));
    }
    out.derivation.set_image(i, std::move(value));
  }
  return out;
}

}  // namespace affcone::lnd
