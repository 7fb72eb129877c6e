#pragma once

// JSON fixtures in, reports out. Rationals always travel as "p/q" strings.

#include "affcone/cylinder.hpp"
#include "affcone/dualgraph.hpp"
#include "affcone/lnd.hpp"
#include "affcone/nfdescent.hpp"
#include "affcone/picard.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace affcone::io {

using json = nlohmann::json;

/// Throws InputError if the file is missing or not JSON.
json read_json_file(const std::string& path);

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);

picard::LatticeClass class_from_json(const picard::PicardLattice& lat, const json& j);
json class_to_json(const picard::LatticeClass& c);

/// The fixture's "source" anchor, or "" when absent.
std::string source_of(const json& j);

// Cylinders. Certificate files look like
//   {"n": 4, "target": "minus_K" | [..], "target_scale": "1",
//    "components": [{"name": "l12", "class": [..], "coeff": "3/2"}],
//    "pencil": {...}, "resolution": {...}}
// A coefficient {"const": "1", "eps": "-2"} makes the certificate parametric.

bool is_parametric(const json& cert);
cylinder::CylinderCertificate certificate_from_json(const json& j);
cylinder::ParametricCertificate parametric_from_json(const json& j);

/// {"class": [..], "members": [[{"name", "class", "mult"}]],
///  "through_base_point": {"name": true}, "lines_through_base_point": [[..]]}
cylinder::PencilDescription pencil_from_json(const picard::PicardLattice& lat, const json& j);

/// {"n": 9, "exceptional": [[..]], "strict": [..], "pullback": [..]}
picard::ResolutionData resolution_from_json(const json& j);

// Derivations: {"vars": [..], "weights": [..], "ideal": ["xy - zu"],
//               "derivations": {"d1": {"x": "u", "z": "y"}}}

struct LndProblem {
  lnd::Ring ring;
  std::vector<lnd::Polynomial> ideal;
  std::vector<std::pair<std::string, lnd::Derivation>> derivations;
  std::size_t pair_budget = lnd::kDefaultPairBudget;  // optional "pair_budget"
};

LndProblem lnd_from_json(const json& j);

// Dual graphs: {"vertices": [{"name": "E1", "w": -5}], "edges": [["E1", "SW"]],
//               "section": "SW", "fibers": [["E1", ..]]}
// Scripts: {"moves": [{"op": "blowup_vertex", "at": "S", "new": "w1"},
//                     {"op": "blowup_edge", "between": ["S", "w1"], "new": "w2"},
//                     {"op": "blowdown", "at": "S"}]}

dualgraph::WeightedDualGraph graph_from_json(const json& j);
json graph_to_json(const dualgraph::WeightedDualGraph& g);
dualgraph::GraphScript script_from_json(const json& j);
json script_to_json(const dualgraph::GraphScript& s);

json search_to_json(const nfdescent::SearchResult& r);

enum class Verdict { pass, fail, untested, error };

std::string to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct Check {
  std::string name;
  Verdict verdict = Verdict::untested;
  std::string detail;

  friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
  std::string command;
  std::string source;
  std::vector<Check> checks;
  json details = json::object();

  void add(std::string name, bool ok, std::string detail = {});
  void add(std::string name, Verdict v, std::string detail = {});

  /// error beats fail beats pass; untested checks count only when nothing
  /// else was checked.
  Verdict verdict() const;
  /// 0 pass/untested, 1 fail, 2 error.
  int exit_code() const;

  json to_json() const;
  static Report from_json(const json& j);
  std::string to_text() const;

  friend bool operator==(const Report&, const Report&) = default;
};

}  // namespace affcone::io
