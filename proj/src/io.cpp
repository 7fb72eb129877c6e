#include "affcone/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <variant>

namespace affcone::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

const json* optional_field(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string string_of(const json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

int int_of(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

const json& array_of(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  return j;
}

picard::PicardLattice lattice_of(const json& j) {
  const int n = int_of(field(j, "n"), "n");
  if (n < 0 || n > 12) throw InputError("n must lie in 0..12, got " + std::to_string(n));
  return picard::PicardLattice(n);
}

picard::LatticeClass target_of(const picard::PicardLattice& lat, const json& j) {
  picard::LatticeClass t = class_from_json(lat, field(j, "target"));
  if (const json* s = optional_field(j, "target_scale")) t = rational_from_json(*s) * t;
  return t;
}

}  // namespace

picard::LatticeClass class_from_json(const picard::PicardLattice& lat, const json& j) {
  if (j.is_array()) {
    std::vector<Rational> coeffs;
    for (const auto& x : j) coeffs.push_back(rational_from_json(x));
    return lat.make(coeffs);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "minus_K") return lat.anticanonical();
    if (s == "K") return lat.canonical();
    throw InputError("unknown class name '" + s + "'");
  }
  if (j.is_object() && j.size() == 1 && j.contains("minus_K"))
    return rational_from_json(j.at("minus_K")) * lat.anticanonical();
  throw InputError("a class must be an array, \"minus_K\", \"K\" or {\"minus_K\": k}");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

json rational_to_json(const Rational& r) { return to_string(r); }

json class_to_json(const picard::LatticeClass& c) {
  json out = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) out.push_back(to_string(c(i)));
  return out;
}

std::string source_of(const json& j) {
  const json* s = optional_field(j, "source");
  return s && s->is_string() ? s->get<std::string>() : std::string();
}

bool is_parametric(const json& cert) {
  for (const auto& c : array_of(field(cert, "components"), "components"))
    if (field(c, "coeff").is_object()) return true;
  return false;
}

cylinder::CylinderCertificate certificate_from_json(const json& j) {
  const auto lat = lattice_of(j);
  cylinder::CylinderCertificate cert{lat, {}, target_of(lat, j)};
  for (const auto& c : array_of(field(j, "components"), "components")) {
    if (field(c, "coeff").is_object()) throw InputError("parametric coefficient in a fixed certificate");
    cert.components.push_back({string_of(field(c, "name"), "component name"), class_from_json(lat, field(c, "class")),
                               rational_from_json(field(c, "coeff"))});
  }
  return cert;
}

cylinder::ParametricCertificate parametric_from_json(const json& j) {
  const auto lat = lattice_of(j);
  cylinder::ParametricCertificate p{lat, {}, target_of(lat, j)};
  for (const auto& c : array_of(field(j, "components"), "components")) {
    const json& coeff = field(c, "coeff");
    cylinder::AffineCoeff a;
    if (coeff.is_object()) {
      a.constant = rational_from_json(field(coeff, "const"));
      a.slope = rational_from_json(field(coeff, "eps"));
    } else {
      a.constant = rational_from_json(coeff);
    }
    p.components.push_back({string_of(field(c, "name"), "component name"), class_from_json(lat, field(c, "class")), a});
  }
  return p;
}

cylinder::PencilDescription pencil_from_json(const picard::PicardLattice& lat, const json& j) {
  cylinder::PencilDescription p{lat, class_from_json(lat, field(j, "class")), {}, {}, {}};
  for (const auto& member : array_of(field(j, "members"), "members")) {
    std::vector<cylinder::MemberComponent> comps;
    for (const auto& c : array_of(member, "member")) {
      int mult = 1;
      if (const json* m = optional_field(c, "mult")) mult = int_of(*m, "mult");
      comps.push_back({string_of(field(c, "name"), "component name"), class_from_json(lat, field(c, "class")), mult});
    }
    p.members.push_back(std::move(comps));
  }
  if (const json* t = optional_field(j, "through_base_point")) {
    if (!t->is_object()) throw InputError("through_base_point must map names to booleans");
    for (const auto& [name, flag] : t->items()) {
      if (!flag.is_boolean()) throw InputError("through_base_point['" + name + "'] must be a boolean");
      p.through_base_point[name] = flag.get<bool>();
    }
  }
  if (const json* l = optional_field(j, "lines_through_base_point"))
    for (const auto& c : array_of(*l, "lines_through_base_point")) p.lines_through_base_point.push_back(class_from_json(lat, c));
  return p;
}

picard::ResolutionData resolution_from_json(const json& j) {
  const auto lat = lattice_of(j);
  picard::ResolutionData r{lat, {}, class_from_json(lat, field(j, "strict")), lat.zero()};
  for (const auto& e : array_of(field(j, "exceptional"), "exceptional")) r.exceptional.push_back(class_from_json(lat, e));
  if (const json* p = optional_field(j, "pullback")) r.pullback_class = class_from_json(lat, *p);
  return r;
}

LndProblem lnd_from_json(const json& j) {
  std::vector<std::string> vars;
  for (const auto& v : array_of(field(j, "vars"), "vars")) vars.push_back(string_of(v, "variable"));
  std::vector<int> weights;
  if (const json* w = optional_field(j, "weights"))
    for (const auto& x : array_of(*w, "weights")) weights.push_back(int_of(x, "weight"));
  LndProblem out{lnd::Ring(std::move(vars), std::move(weights)), {}, {}};
  if (const json* b = optional_field(j, "pair_budget")) {
    const int budget = int_of(*b, "pair_budget");
    if (budget < 1) throw InputError("pair_budget must be positive");
    out.pair_budget = static_cast<std::size_t>(budget);
  }
  if (const json* ideal = optional_field(j, "ideal"))
    for (const auto& g : array_of(*ideal, "ideal"))
      out.ideal.push_back(lnd::parse_polynomial(out.ring, string_of(g, "ideal generator")));
  const json& ders = field(j, "derivations");
  if (!ders.is_object()) throw InputError("derivations must map names to {variable: image}");
  for (const auto& [name, images] : ders.items()) {
    if (!images.is_object()) throw InputError("derivation '" + name + "' must map variables to images");
    std::map<std::string, std::string> text;
    for (const auto& [var, img] : images.items()) text[var] = string_of(img, "derivation image");
    out.derivations.emplace_back(name, lnd::parse_derivation(out.ring, text));
  }
  return out;
}

dualgraph::WeightedDualGraph graph_from_json(const json& j) {
  dualgraph::WeightedDualGraph g;
  for (const auto& v : array_of(field(j, "vertices"), "vertices"))
    g.add_vertex(string_of(field(v, "name"), "vertex name"), int_of(field(v, "w"), "vertex weight"));
  if (const json* edges = optional_field(j, "edges"))
    for (const auto& e : array_of(*edges, "edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair of names");
      g.add_edge(string_of(e[0], "edge end"), string_of(e[1], "edge end"));
    }
  if (const json* s = optional_field(j, "section")) {
    g.section = string_of(*s, "section");
    if (!g.has_vertex(*g.section)) throw InputError("section '" + *g.section + "' is not a vertex");
  }
  if (const json* fibers = optional_field(j, "fibers"))
    for (const auto& f : array_of(*fibers, "fibers")) {
      std::vector<std::string> names;
      for (const auto& v : array_of(f, "fiber")) names.push_back(string_of(v, "fiber vertex"));
      g.fibers.push_back(std::move(names));
    }
  return g;
}

json graph_to_json(const dualgraph::WeightedDualGraph& g) {
  json out;
  out["vertices"] = json::array();
  for (const auto& v : g.vertices()) out["vertices"].push_back({{"name", v}, {"w", g.weight(v)}});
  out["edges"] = json::array();
  for (const auto& [a, b] : g.edges()) out["edges"].push_back({a, b});
  if (g.section) out["section"] = *g.section;
  if (!g.fibers.empty()) out["fibers"] = g.fibers;
  return out;
}

dualgraph::GraphScript script_from_json(const json& j) {
  dualgraph::GraphScript s;
  for (const auto& m : array_of(field(j, "moves"), "moves")) {
    const auto op = string_of(field(m, "op"), "op");
    std::string fresh;
    if (const json* n = optional_field(m, "new")) fresh = string_of(*n, "new");
    if (op == "blowup_vertex") {
      s.push_back(dualgraph::BlowupVertex{string_of(field(m, "at"), "at"), fresh});
    } else if (op == "blowup_edge") {
      const json& b = field(m, "between");
      if (!b.is_array() || b.size() != 2) throw InputError("blowup_edge needs \"between\": [v, w]");
      s.push_back(dualgraph::BlowupEdge{string_of(b[0], "edge end"), string_of(b[1], "edge end"), fresh});
    } else if (op == "blowdown") {
      s.push_back(dualgraph::Blowdown{string_of(field(m, "at"), "at")});
    } else {
      throw InputError("unknown move '" + op + "'");
    }
  }
  return s;
}

json script_to_json(const dualgraph::GraphScript& s) {
  json moves = json::array();
  for (const auto& m : s) {
    std::visit(
        [&](const auto& mv) {
          using T = std::decay_t<decltype(mv)>;
          if constexpr (std::is_same_v<T, dualgraph::BlowupVertex>)
            moves.push_back({{"op", "blowup_vertex"}, {"at", mv.at}, {"new", mv.new_name}});
          else if constexpr (std::is_same_v<T, dualgraph::BlowupEdge>)
            moves.push_back({{"op", "blowup_edge"}, {"between", {mv.v, mv.w}}, {"new", mv.new_name}});
          else
            moves.push_back({{"op", "blowdown"}, {"at", mv.at}});
        },
        m);
  }
  return {{"moves", moves}};
}

json search_to_json(const nfdescent::SearchResult& r) {
  json bounds{{"a_max", r.bounds.a_max}, {"b_abs_max", r.bounds.b_abs_max}};
  bounds["n_max"] = r.bounds.n_max ? json(*r.bounds.n_max) : json("derived");
  bounds["m_cap"] = r.bounds.m_cap ? json(*r.bounds.m_cap) : json("a");
  json hits = json::array();
  for (const auto& h : r.hits) {
    json hit{{"a", h.state.a}, {"b", h.state.b}, {"mults", h.state.mults},
             {"audit", {{"b_negative", h.audit.b_negative}, {"residual", h.audit.residual}, {"mult_exceeds", h.audit.mult_exceeds}}}};
    if (h.descent)
      hit["descent"] = {{"a_next", h.descent->a_next}, {"b_next", h.descent->b_next},
                        {"strict", h.descent->strict}, {"degenerate", h.descent->degenerate}};
    hits.push_back(std::move(hit));
  }
  return {{"bounds", bounds},
          {"derived_n_cap", r.derived_n_cap},
          {"truncated", r.truncated},
          {"pairs_scanned", r.pairs_scanned},
          {"nodes_visited", r.nodes_visited},
          {"hit_count", r.hits.size()},
          {"hits", hits},
          {"seconds", r.seconds}};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::untested: return "untested";
    case Verdict::error: return "error";
  }
  return "error";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "untested") return Verdict::untested;
  if (s == "error") return Verdict::error;
  throw InputError("unknown verdict '" + std::string(s) + "'");
}

void Report::add(std::string name, bool ok, std::string detail) {
  add(std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail));
}

void Report::add(std::string name, Verdict v, std::string detail) {
  checks.push_back({std::move(name), v, std::move(detail)});
}

Verdict Report::verdict() const {
  bool any_fail = false, any_pass = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::error) return Verdict::error;
    any_fail = any_fail || c.verdict == Verdict::fail;
    any_pass = any_pass || c.verdict == Verdict::pass;
  }
  if (any_fail) return Verdict::fail;
  if (any_pass) return Verdict::pass;
  return checks.empty() ? Verdict::pass : Verdict::untested;
}

int Report::exit_code() const {
  switch (verdict()) {
    case Verdict::fail: return 1;
    case Verdict::error: return 2;
    default: return 0;
  }
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"verdict", io::to_string(c.verdict)}, {"detail", c.detail}});
  json out{{"command", command}, {"verdict", io::to_string(verdict())}, {"checks", cs}, {"details", details}};
  if (!source.empty()) out["source"] = source;
  return out;
}

Report Report::from_json(const json& j) {
  Report r;
  r.command = string_of(field(j, "command"), "command");
  r.source = source_of(j);
  for (const auto& c : array_of(field(j, "checks"), "checks"))
    r.checks.push_back({string_of(field(c, "name"), "check name"),
                        verdict_from_string(string_of(field(c, "verdict"), "verdict")),
                        string_of(field(c, "detail"), "detail")});
  if (const json* d = optional_field(j, "details")) r.details = *d;
  return r;
}

std::string Report::to_text() const {
  std::ostringstream os;
  auto upper = [](std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
  };
  os << command << ": " << upper(io::to_string(verdict())) << "\n";
  if (!source.empty()) os << "source: " << source << "\n";
  for (const auto& c : checks) {
    os << "  [" << upper(io::to_string(c.verdict)) << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  for (const auto& [key, value] : details.items())
    os << "  " << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  return os.str();
}

}  // namespace affcone::io
