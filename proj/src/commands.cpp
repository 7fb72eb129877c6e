#include "affcone/commands.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace affcone::commands {

namespace {

using io::Verdict;

std::string class_text(const picard::LatticeClass& c) { return io::class_to_json(c).dump(); }

json value_or(const json& j, const char* key, json fallback) {
  if (j.is_object() && j.contains(key)) return j.at(key);
  return fallback;
}

Report make_report(std::string command, const json& fixture) {
  Report r;
  r.command = std::move(command);
  r.source = io::source_of(fixture);
  return r;
}

std::string interval_text(const std::optional<cylinder::Interval>& iv) {
  return iv ? cylinder::to_string(*iv) : "empty";
}

/// A point strictly inside an open interval.
Rational sample_point(const cylinder::Interval& iv) {
  if (iv.lower && iv.upper) return (*iv.lower + *iv.upper) / Rational(2);
  if (iv.lower) return *iv.lower + Rational(1);
  if (iv.upper) return *iv.upper - Rational(1);
  return Rational(0);
}

void add_pencil_check(Report& r, const picard::PicardLattice& lat, const json& fixture) {
  if (!fixture.contains("pencil")) return;
  const auto pencil = io::pencil_from_json(lat, fixture.at("pencil"));
  const auto pv = cylinder::pencil_member_consistency(pencil);
  std::string detail;
  for (std::size_t i = 0; i < pv.member_differences.size(); ++i)
    if (!pv.member_differences[i].isZero())
      detail += "member " + std::to_string(i + 1) + " is off by " + class_text(pv.member_differences[i]) + "; ";
  r.add("pencil members sum to the pencil class", pv.valid, detail);
  r.details["pencil_class"] = io::class_to_json(pencil.pencil_class);
  r.details["pencil_not_pluri_anticanonical"] = cylinder::pencil_not_pluri_anticanonical(pencil);
}

Verdict from_status(cylinder::CheckStatus s) {
  switch (s) {
    case cylinder::CheckStatus::pass: return Verdict::pass;
    case cylinder::CheckStatus::fail: return Verdict::fail;
    case cylinder::CheckStatus::untested: return Verdict::untested;
  }
  return Verdict::error;
}

std::vector<std::string> strings_of(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw InputError("expected an array of names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

picard::LatticeClass parse_inline_class(const picard::PicardLattice& lat, const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("class is not valid JSON: ") + e.what());
    }
    return io::class_from_json(lat, j);
  }
  std::vector<Rational> coeffs;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) coeffs.push_back(parse_rational(part));
  return lat.make(coeffs);
}

Report lines(int n) {
  if (n < 0 || n > 8) throw InputError("lines needs 0 <= n <= 8, got " + std::to_string(n));
  static constexpr std::array<std::size_t, 9> expected{0, 1, 3, 6, 10, 16, 27, 56, 240};
  const picard::PicardLattice lat(n);
  const auto classes = picard::enumerate_minus_one_classes(lat);
  Report r;
  r.command = "lines";
  r.add("count of (-1)-classes", classes.size() == expected[static_cast<std::size_t>(n)],
        std::to_string(classes.size()) + " found, " + std::to_string(expected[static_cast<std::size_t>(n)]) +
            " expected for degree " + std::to_string(lat.degree()));
  r.details["n"] = n;
  r.details["degree"] = lat.degree();
  r.details["count"] = classes.size();
  json list = json::array();
  for (const auto& c : classes) list.push_back(io::class_to_json(c));
  r.details["classes"] = list;
  return r;
}

Report nef(int n, const picard::LatticeClass& h) {
  const picard::PicardLattice lat(n);
  Report r;
  r.command = "nef";
  const bool nef = picard::is_nef(lat, h);
  r.add("nef against the Mori generators", nef);
  r.details["class"] = io::class_to_json(h);
  r.details["ample"] = picard::is_ample(lat, h);
  r.details["square"] = to_string(picard::self_intersection(lat, h));
  r.details["anticanonical_degree"] = to_string(picard::anticanonical_degree(lat, h));
  return r;
}

Report nefvalue(int n, const picard::LatticeClass& h) {
  const picard::PicardLattice lat(n);
  Report r;
  r.command = "nefvalue";
  const Rational t0 = picard::inverse_nef_value(lat, h);
  const auto type = picard::adjoint_kodaira_type(lat, h);
  const picard::LatticeClass adjoint = h + t0 * lat.canonical();
  r.add("adjoint class is nef", picard::is_nef(lat, adjoint));
  r.details["class"] = io::class_to_json(h);
  r.details["t0"] = to_string(t0);
  r.details["adjoint_class"] = io::class_to_json(adjoint);
  r.details["adjoint_type"] = picard::to_string(type);
  return r;
}

Report cyl_verify(const json& fixture) {
  Report r = make_report("cyl verify", fixture);
  const std::string kind = value_or(fixture, "kind", "certificate").get<std::string>();
  if (kind == "identity") {
    // Signed coefficients: a linear equivalence, not a boundary divisor.
    const auto cert = io::certificate_from_json(fixture);
    const picard::LatticeClass diff = cylinder::weighted_sum(cert) - cert.target;
    r.add("identity holds", diff.isZero(), diff.isZero() ? "" : "difference " + class_text(diff));
    r.details["difference"] = io::class_to_json(diff);
    add_pencil_check(r, cert.lattice, fixture);
    return r;
  }
  if (kind != "certificate") throw InputError("unknown certificate kind '" + kind + "'");

  if (io::is_parametric(fixture)) {
    const auto p = io::parametric_from_json(fixture);
    const bool holds = cylinder::holds_identically(p);
    r.add("sum equals target identically in eps", holds);
    if (holds) {
      const auto positive = cylinder::epsilon_interval(p, false);
      r.details["positive_interval"] = interval_text(positive);
      r.details["unit_interval"] = interval_text(cylinder::epsilon_interval(p, true));
      if (positive) {
        const Rational eps = sample_point(*positive);
        const auto v = cylinder::verify_certificate(p.at(eps));
        r.add("valid at a sample eps", v.valid, "eps = " + to_string(eps));
      }
    }
    add_pencil_check(r, p.lattice, fixture);
    return r;
  }

  const auto cert = io::certificate_from_json(fixture);
  const auto v = cylinder::verify_certificate(cert);
  r.add("sum equals target", v.valid, v.valid ? "" : "difference " + class_text(v.difference));
  r.details["difference"] = io::class_to_json(v.difference);
  r.details["coefficients_below_one"] = cylinder::coefficient_bounds_check(cert);
  add_pencil_check(r, cert.lattice, fixture);
  return r;
}

Report cyl_audit(const json& fixture) {
  Report r = make_report("cyl audit", fixture);
  const auto cert = io::certificate_from_json(fixture);
  if (!fixture.contains("pencil")) throw InputError("cyl audit needs a \"pencil\" block");
  const auto pencil = io::pencil_from_json(cert.lattice, fixture.at("pencil"));
  std::optional<picard::ResolutionData> res;
  if (fixture.contains("resolution")) res = io::resolution_from_json(fixture.at("resolution"));
  const auto audit = cylinder::cubic_pencil_audit(pencil, cert, res);
  for (const auto& item : audit.items) {
    std::string detail = item.description;
    if (!item.detail.empty()) detail += " (" + item.detail + ")";
    r.add(item.id, from_status(item.status), detail);
  }
  const auto count = cylinder::component_count_audit(cert, cert.lattice.degree());
  r.details["component_count"] = count.count;
  r.details["span_rank"] = count.span_rank;
  r.details["components_span_picard"] = count.full_rank;
  return r;
}

Report cyl_eps(const json& fixture) {
  Report r = make_report("cyl eps", fixture);
  if (!io::is_parametric(fixture)) throw InputError("cyl eps needs a certificate with {\"const\", \"eps\"} coefficients");
  const auto p = io::parametric_from_json(fixture);
  const auto positive = cylinder::epsilon_interval(p, false);  // throws if not identical
  const auto unit = cylinder::epsilon_interval(p, true);
  r.details["positive_interval"] = interval_text(positive);
  r.details["unit_interval"] = interval_text(unit);
  const json expect = value_or(fixture, "expect", json::object());
  if (expect.contains("positive")) {
    const auto want = expect.at("positive").get<std::string>();
    r.add("positivity interval", interval_text(positive) == want, interval_text(positive) + ", expected " + want);
  } else {
    r.add("positivity interval nonempty", positive.has_value(), interval_text(positive));
  }
  if (expect.contains("unit")) {
    const auto want = expect.at("unit").get<std::string>();
    r.add("interval with coefficients below 1", interval_text(unit) == want, interval_text(unit) + ", expected " + want);
  }
  return r;
}

Report cyl_ml(const json& fixture) {
  Report r = make_report("cyl ml", fixture);
  std::map<std::string, std::set<std::string>> supports;
  if (!fixture.contains("pencils") || !fixture.at("pencils").is_array())
    throw InputError("cyl ml needs a \"pencils\" array");
  for (const auto& p : fixture.at("pencils")) {
    if (!p.contains("name") || !p.contains("support")) throw InputError("each pencil needs name and support");
    const auto names = strings_of(p.at("support"));
    supports[p.at("name").get<std::string>()] = {names.begin(), names.end()};
  }
  if (!fixture.contains("cases") || !fixture.at("cases").is_array())
    throw InputError("cyl ml needs a \"cases\" array");
  json results = json::array();
  for (const auto& c : fixture.at("cases")) {
    std::vector<std::set<std::string>> chosen;
    const auto which = strings_of(c.at("pencils"));
    for (const auto& name : which) {
      auto it = supports.find(name);
      if (it == supports.end()) throw InputError("unknown pencil '" + name + "'");
      chosen.push_back(it->second);
    }
    const auto common = cylinder::ml_common_components(chosen);
    const auto want = strings_of(c.at("expect"));
    const std::set<std::string> want_set(want.begin(), want.end());
    json got = json::array();
    for (const auto& s : common) got.push_back(s);
    r.add("common components of " + std::to_string(which.size()) + " pencils", common == want_set,
          "{" + [&] {
            std::string s;
            for (const auto& x : common) s += (s.empty() ? "" : ", ") + x;
            return s;
          }() + "}");
    results.push_back(got);
  }
  r.details["common"] = results;
  return r;
}

Report lnd_check(const json& fixture) {
  Report r = make_report("lnd check", fixture);
  const auto prob = io::lnd_from_json(fixture);
  const json expect = value_or(fixture, "expect", json::object());
  const int bound = value_or(expect, "bound", lnd::kDefaultNilpotencyBound).get<int>();

  std::map<std::string, const lnd::Derivation*> by_name;
  for (const auto& [name, d] : prob.derivations) by_name[name] = &d;

  std::optional<lnd::Ideal> ideal;
  if (!prob.ideal.empty()) ideal.emplace(prob.ring, prob.ideal, lnd::MonomialOrder::degrevlex, prob.pair_budget);

  json orders_json = json::object();
  for (const auto& [name, d] : prob.derivations) {
    const auto orders = lnd::generator_orders(d, bound);
    std::string detail;
    int max_order = 0;
    json per_var = json::object();
    for (std::size_t i = 0; i < orders.orders.size(); ++i) {
      const auto& o = orders.orders[i];
      const auto& var = prob.ring.vars()[i];
      detail += (detail.empty() ? "" : " ") + var + ":" + (o.order ? std::to_string(*o.order) : ">" + std::to_string(o.bound));
      per_var[var] = o.order ? json(*o.order) : json(nullptr);
      if (o.order) max_order = std::max(max_order, *o.order);
    }
    orders_json[name] = per_var;
    r.add(name + " locally nilpotent on generators", orders.locally_nilpotent(), detail);
    if (expect.contains("max_order")) {
      const int cap = expect.at("max_order").get<int>();
      r.add(name + " orders at most " + std::to_string(cap), orders.locally_nilpotent() && max_order <= cap);
    }
    if (ideal) {
      r.add(name + " preserves the ideal", lnd::preserves_ideal(d, *ideal));
      if (value_or(expect, "annihilates", false).get<bool>()) {
        bool kills = true;
        for (const auto& g : prob.ideal) kills = kills && lnd::apply(d, g).is_zero();
        r.add(name + " annihilates the generators", kills);
      }
    }
  }
  for (const auto& pair : value_or(expect, "commute", json::array())) {
    const auto names = strings_of(pair);
    if (names.size() != 2) throw InputError("commute entries are pairs of derivation names");
    for (const auto& n : names)
      if (!by_name.count(n)) throw InputError("unknown derivation '" + n + "'");
    const auto c = lnd::commutator(*by_name[names[0]], *by_name[names[1]]);
    r.add("[" + names[0] + ", " + names[1] + "] = 0", c.is_zero());
  }
  r.details["orders"] = orders_json;
  if (ideal) {
    json basis = json::array();
    for (const auto& g : ideal->basis()) basis.push_back(lnd::to_string(prob.ring, g));
    r.details["groebner_basis"] = basis;
  }
  return r;
}

Report graph_run(const json& graph, const json& script, const std::optional<json>& expect) {
  Report r = make_report("graph run", graph);
  if (r.source.empty()) r.source = io::source_of(script);
  const auto g = io::graph_from_json(graph);
  const auto s = io::script_from_json(script);
  const auto out = dualgraph::run_script(g, s);
  r.details["moves"] = s.size();
  r.details["final_graph"] = io::graph_to_json(out);
  if (expect) {
    const auto want = io::graph_from_json(*expect);
    r.add("final graph isomorphic to the expected graph", dualgraph::isomorphic(out, want),
          std::to_string(out.size()) + " vertices, expected " + std::to_string(want.size()));
  } else {
    r.add("script applies", true, std::to_string(s.size()) + " moves");
  }
  return r;
}

Report graph_fibers(const json& fixture) {
  Report r = make_report("graph fibers", fixture);
  const auto g = io::graph_from_json(fixture);
  if (!g.section) throw InputError("graph fibers needs a \"section\"");
  if (g.fibers.empty()) throw InputError("graph fibers needs at least one fiber");
  std::map<std::string, Rational> all;
  json fibers = json::array();
  for (std::size_t i = 0; i < g.fibers.size(); ++i) {
    const auto& fiber = g.fibers[i];
    const auto sol = dualgraph::fiber_multiplicities(g, fiber, *g.section);
    const std::string label = "fiber " + std::to_string(i + 1);
    if (sol.status != dualgraph::FiberStatus::unique) {
      r.add(label + " multiplicities", false,
            sol.status == dualgraph::FiberStatus::inconsistent ? "inconsistent system" : "underdetermined system");
      fibers.push_back(nullptr);
      continue;
    }
    std::string detail;
    json m = json::object();
    for (const auto& v : fiber) {
      const auto& x = sol.multiplicity.at(v);
      detail += (detail.empty() ? "" : " ") + v + ":" + to_string(x);
      m[v] = to_string(x);
      all[v] = x;
    }
    r.add(label + " multiplicities positive integers", sol.integral && sol.positive, detail);
    if (fiber.size() >= 2) r.add(label + " components negative", dualgraph::zariski_fiber_check(g, fiber));
    fibers.push_back(m);
  }
  r.details["multiplicities"] = fibers;

  const json expect = value_or(fixture, "expect", json::object());
  const json want_mult = value_or(expect, "multiplicities", json::object());
  for (const auto& [v, want] : want_mult.items()) {
    auto it = all.find(v);
    const Rational w = io::rational_from_json(want);
    r.add("multiplicity of " + v, it != all.end() && it->second == w,
          (it == all.end() ? std::string("missing") : to_string(it->second)) + ", expected " + to_string(w));
  }
  for (const auto& subset : value_or(expect, "negative_definite", json::array())) {
    const auto names = strings_of(subset);
    std::string label;
    for (const auto& n : names) label += (label.empty() ? "" : ",") + n;
    r.add("{" + label + "} negative definite", dualgraph::is_negative_definite(g, names));
  }
  return r;
}

Report nf_search(const nfdescent::SearchBounds& bounds) {
  Report r;
  r.command = "nf search";
  const auto result = nfdescent::exhaustive_search(bounds);
  bool b_negative = true, mult_exceeds = true, strict = true;
  std::size_t degenerate = 0;
  for (const auto& h : result.hits) {
    b_negative = b_negative && h.audit.b_negative;
    mult_exceeds = mult_exceeds && h.audit.mult_exceeds;
    strict = strict && h.descent && h.descent->strict;
    if (h.descent && h.descent->degenerate) ++degenerate;
  }
  const std::string count = std::to_string(result.hits.size()) + " hit(s)";
  r.add("every hit has b < 0", b_negative, count);
  r.add("every hit has max m > a + b", mult_exceeds, count);
  r.add("every hit descends strictly (a' < a)", strict, count);
  if (degenerate)
    r.add("no degenerate descent (a' = 0)", Verdict::untested, std::to_string(degenerate) + " degenerate hit(s)");
  else
    r.add("no degenerate descent (a' = 0)", true);
  if (result.truncated)
    r.add("n cap covers the derived cap", Verdict::untested,
          "configured " + std::to_string(*bounds.n_max) + " < derived " + std::to_string(result.derived_n_cap));
  r.details = io::search_to_json(result);
  return r;
}

Report crepant(const json& fixture) {
  Report r = make_report("crepant", fixture);
  if (!fixture.contains("resolution")) throw InputError("crepant needs a \"resolution\" block");
  const auto res = io::resolution_from_json(fixture.at("resolution"));
  const auto pull = picard::crepant_pullback(res);
  const auto& lat = res.lattice;

  bool residual_zero = true;
  for (const auto& e : res.exceptional)
    residual_zero = residual_zero && picard::intersect(lat, lat.canonical() + pull.boundary, e).is_zero();
  r.add("(K + D_W).E = 0 for every exceptional curve", residual_zero);

  json coeffs = json::array(), disc = json::array();
  for (const auto& c : pull.coefficients) coeffs.push_back(to_string(c));
  for (const auto& d : pull.discrepancies()) disc.push_back(to_string(d));
  r.details["coefficients"] = coeffs;
  r.details["discrepancies"] = disc;
  r.details["boundary"] = io::class_to_json(pull.boundary);

  std::vector<Rational> boundary_coeffs;
  for (const auto& b : value_or(fixture, "boundary_coefficients", json::array()))
    boundary_coeffs.push_back(io::rational_from_json(b));
  const bool lc = picard::is_log_canonical(pull.coefficients, boundary_coeffs);
  r.details["log_canonical"] = lc;

  const json expect = value_or(fixture, "expect", json::object());
  if (expect.contains("coefficients")) {
    std::vector<Rational> want;
    for (const auto& x : expect.at("coefficients")) want.push_back(io::rational_from_json(x));
    r.add("crepant coefficients", want == pull.coefficients, coeffs.dump());
  }
  if (expect.contains("log_canonical"))
    r.add(std::string("pair is ") + (expect.at("log_canonical").get<bool>() ? "" : "not ") + "log canonical",
          lc == expect.at("log_canonical").get<bool>());
  for (const auto& p : value_or(fixture, "pairings", json::array())) {
    const auto cls = io::class_from_json(lat, p.at("with"));
    const Rational got = picard::intersect(lat, pull.boundary, cls);
    const Rational want = io::rational_from_json(p.at("expect"));
    r.add("D_W . " + p.value("name", std::string("class")), got == want,
          to_string(got) + ", expected " + to_string(want));
  }
  return r;
}

}  // namespace affcone::commands
