#include "properties.hpp"

#include "affcone/dualgraph.hpp"
#include "affcone/lnd.hpp"
#include "affcone/nfdescent.hpp"
#include "affcone/picard.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>

namespace affcone::properties {

namespace {

using Rng = std::mt19937;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational small_rational(Rng& rng) { return Rational(uniform(rng, -6, 6), uniform(rng, 1, 4)); }

// Runs `body` until `cases` cases have been counted. The body returns an
// error message on failure, "" on success, or nullopt to skip the draw.
SuiteResult run(const std::string& name, int cases, std::uint32_t seed,
                const std::function<std::optional<std::string>(Rng&)>& body) {
  SuiteResult r;
  r.name = name;
  Rng rng(seed);
  const auto t0 = std::chrono::steady_clock::now();
  int draws = 0;
  while (r.cases < cases && draws < 20 * cases) {
    ++draws;
    std::optional<std::string> outcome;
    try {
      outcome = body(rng);
    } catch (const std::exception& e) {
      outcome = std::string("exception: ") + e.what();
    }
    if (!outcome) continue;
    ++r.cases;
    if (!outcome->empty()) {
      if (r.failures++ == 0) r.first_failure = "case " + std::to_string(r.cases) + ": " + *outcome;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

picard::LatticeClass random_class(Rng& rng, const picard::PicardLattice& lat, bool integral) {
  picard::LatticeClass c = lat.zero();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c(i) = integral ? Rational(uniform(rng, -5, 5)) : small_rational(rng);
  return c;
}

lnd::Polynomial random_polynomial(Rng& rng, std::size_t nvars, int max_degree, int max_terms) {
  lnd::Polynomial p(nvars);
  const int terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    lnd::Monomial m(nvars, 0);
    int budget = uniform(rng, 0, max_degree);
    while (budget-- > 0) ++m[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(nvars) - 1))];
    p.add_term(m, small_rational(rng));
  }
  return p;
}

lnd::Derivation random_derivation(Rng& rng, const lnd::Ring& ring) {
  std::vector<lnd::Polynomial> images;
  for (std::size_t i = 0; i < ring.size(); ++i) images.push_back(random_polynomial(rng, ring.size(), 2, 3));
  return lnd::Derivation(ring, images);
}

const lnd::Ring& xyz() {
  static const lnd::Ring ring({"x", "y", "z"});
  return ring;
}

}  // namespace

SuiteResult lattice_bilinearity(int cases, std::uint32_t seed) {
  return run("lattice bilinearity", cases, seed, [](Rng& rng) -> std::optional<std::string> {
    const picard::PicardLattice lat(uniform(rng, 0, 8));
    const auto x = random_class(rng, lat, false), y = random_class(rng, lat, false), z = random_class(rng, lat, false);
    const Rational a = small_rational(rng), b = small_rational(rng);
    const picard::LatticeClass combo = a * x + b * y;
    if (picard::intersect(lat, combo, z) != a * picard::intersect(lat, x, z) + b * picard::intersect(lat, y, z))
      return "linearity fails on n = " + std::to_string(lat.points());
    if (picard::intersect(lat, x, y) != picard::intersect(lat, y, x)) return "pairing not symmetric";
    if (picard::intersect(lat, x, y) != (x.transpose() * lat.form() * y)(0, 0)) return "pairing differs from the Gram form";
    return "";
  });
}

SuiteResult weyl_invariance(int cases, std::uint32_t seed) {
  std::map<int, std::vector<picard::LatticeClass>> roots;
  for (int n = 2; n <= 8; ++n) roots[n] = picard::enumerate_roots(picard::PicardLattice(n));
  return run("Weyl invariance", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const int n = uniform(rng, 2, 8);
    const picard::PicardLattice lat(n);
    const auto& pool = roots.at(n);
    const auto& r = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
    const auto x = random_class(rng, lat, true), y = random_class(rng, lat, true);
    const auto sx = picard::reflect(lat, r, x), sy = picard::reflect(lat, r, y);
    if (picard::intersect(lat, sx, sy) != picard::intersect(lat, x, y)) return "pairing not preserved";
    if (picard::reflect(lat, r, lat.canonical()) != lat.canonical()) return "K not fixed";
    if (picard::reflect(lat, r, sx) != x) return "reflection is not an involution";
    if (picard::reflect(lat, r, r) != picard::LatticeClass(-r)) return "root not sent to its negative";
    return "";
  });
}

SuiteResult transform_involution(int cases, std::uint32_t seed) {
  using namespace nfdescent;
  std::vector<NFState> pool{{1, 2, {3, 1}}, {2, 3, {5, 3, 1}}};
  for (const auto& h : exhaustive_search({9, 18, std::nullopt, std::nullopt, 0}).hits) pool.push_back(h.state);
  return run("transform involution", cases, seed, [&](Rng& rng) -> std::optional<std::string> {
    const NFState s = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(s.mults.size()) - 1));
    const auto t = elementary_transform(s, i);
    if (!t) return std::nullopt;
    if (!verify_state(*t).satisfied()) return "equations broken by transform of " + s.to_string();
    const Int image = 2 * s.a - s.mults[i];
    const auto pos = static_cast<std::size_t>(std::find(t->mults.begin(), t->mults.end(), image) - t->mults.begin());
    const auto back = elementary_transform(*t, pos);
    if (!back || *back != s) return "transform of " + s.to_string() + " does not undo itself";
    if (pool.size() < 4000) pool.push_back(*t);
    return "";
  });
}

SuiteResult normal_form_idempotence(int cases, std::uint32_t seed) {
  return run("normal-form idempotence", cases, seed, [](Rng& rng) -> std::optional<std::string> {
    const auto& ring = xyz();
    std::vector<lnd::Polynomial> gens;
    const int k = uniform(rng, 1, 3);
    for (int i = 0; i < k; ++i) gens.push_back(random_polynomial(rng, ring.size(), 2, 3));
    const auto order = rng() % 2 ? lnd::MonomialOrder::lex : lnd::MonomialOrder::degrevlex;
    std::optional<lnd::Ideal> ideal;
    try {
      ideal.emplace(ring, gens, order, 400);
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
    const auto p = random_polynomial(rng, ring.size(), 4, 5);
    const auto nf = ideal->normal_form(p);
    if (ideal->normal_form(nf) != nf) return "normal form not idempotent";
    const auto& g = gens[static_cast<std::size_t>(uniform(rng, 0, k - 1))];
    const auto shifted = p + random_polynomial(rng, ring.size(), 2, 3) * g;
    if (ideal->normal_form(shifted) != nf) return "normal form depends on the coset representative";
    if (!ideal->contains(p - nf)) return "p - nf(p) not in the ideal";
    return "";
  });
}

SuiteResult blowup_blowdown_inverse(int cases, std::uint32_t seed) {
  using namespace dualgraph;
  return run("blowup/blowdown inverse", cases, seed, [](Rng& rng) -> std::optional<std::string> {
    WeightedDualGraph g;
    const int k = uniform(rng, 1, 7);
    for (int i = 0; i < k; ++i) g.add_vertex("v" + std::to_string(i), uniform(rng, -4, 2));
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (uniform(rng, 0, 9) < 4) g.add_edge("v" + std::to_string(i), "v" + std::to_string(j));
    const auto edges = g.edges();
    WeightedDualGraph up;
    if (!edges.empty() && rng() % 2) {
      auto it = edges.begin();
      std::advance(it, uniform(rng, 0, static_cast<int>(edges.size()) - 1));
      up = blowup_at_edge(g, it->first, it->second, "new");
      if (up.has_edge(it->first, it->second)) return "edge survives its blowup";
    } else {
      up = blowup_at_vertex(g, "v" + std::to_string(uniform(rng, 0, k - 1)), "new");
    }
    if (up.weight("new") != -1) return "new curve is not a (-1)-curve";
    if (blowdown(up, "new") != g) return "blowdown does not restore the graph";
    return "";
  });
}

SuiteResult leibniz(int cases, std::uint32_t seed) {
  return run("Leibniz rule", cases, seed, [](Rng& rng) -> std::optional<std::string> {
    const auto& ring = xyz();
    const auto d = random_derivation(rng, ring);
    const auto p = random_polynomial(rng, ring.size(), 3, 4), q = random_polynomial(rng, ring.size(), 3, 4);
    if (lnd::apply(d, p * q) != lnd::apply(d, p) * q + p * lnd::apply(d, q)) return "d(pq) != d(p)q + p d(q)";
    const Rational c = small_rational(rng);
    if (lnd::apply(d, p + c * q) != lnd::apply(d, p) + c * lnd::apply(d, q)) return "d is not linear";
    return "";
  });
}

SuiteResult commutator(int cases, std::uint32_t seed) {
  return run("commutator", cases, seed, [](Rng& rng) -> std::optional<std::string> {
    const auto& ring = xyz();
    const auto d1 = random_derivation(rng, ring), d2 = random_derivation(rng, ring);
    const auto p = random_polynomial(rng, ring.size(), 3, 4);
    const auto c = lnd::commutator(d1, d2);
    if (lnd::apply(c, p) != lnd::apply(d1, lnd::apply(d2, p)) - lnd::apply(d2, lnd::apply(d1, p)))
      return "[d1,d2](p) != d1 d2 p - d2 d1 p";
    if (!(c + lnd::commutator(d2, d1)).is_zero()) return "commutator not antisymmetric";
    return "";
  });
}

std::vector<SuiteResult> run_all(std::uint32_t seed, int scale) {
  return {lattice_bilinearity(500 * scale, seed),     weyl_invariance(500 * scale, seed + 1),
          transform_involution(500 * scale, seed + 2), normal_form_idempotence(500 * scale, seed + 3),
          blowup_blowdown_inverse(500 * scale, seed + 4), leibniz(1000 * scale, seed + 5),
          commutator(1000 * scale, seed + 6)};
}

}  // namespace affcone::properties
