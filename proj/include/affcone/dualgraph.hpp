#pragma once

// Weighted dual graphs of SNC curve configurations and the blowup/blowdown
// calculus on them.

#include "affcone/error.hpp"
#include "affcone/linalg.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace affcone::dualgraph {

/// Simple graph: no loops, no multi-edges. Vertices keep insertion order,
/// which fixes the row order of intersection_matrix.
class WeightedDualGraph {
 public:
  void add_vertex(const std::string& name, int weight);
  void add_edge(const std::string& a, const std::string& b);
  void remove_vertex(const std::string& name);
  void remove_edge(const std::string& a, const std::string& b);
  void set_weight(const std::string& name, int weight);

  bool has_vertex(const std::string& name) const { return weights_.count(name) > 0; }
  bool has_edge(const std::string& a, const std::string& b) const;
  int weight(const std::string& name) const;
  std::size_t size() const { return order_.size(); }
  const std::vector<std::string>& vertices() const { return order_; }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
  std::vector<std::string> neighbors(const std::string& name) const;
  /// A name not yet used, of the form prefix + k.
  std::string fresh_name(const std::string& prefix = "v") const;

  std::optional<std::string> section;
  std::vector<std::vector<std::string>> fibers;

  friend bool operator==(const WeightedDualGraph&, const WeightedDualGraph&) = default;

 private:
  void require(const std::string& name) const;

  std::vector<std::string> order_;
  std::map<std::string, int> weights_;
  std::set<std::pair<std::string, std::string>> edges_;  // (min, max) by name
};

/// Makes a new (-1)-vertex attached to v; v loses 1.
WeightedDualGraph blowup_at_vertex(const WeightedDualGraph& g, const std::string& v,
                                   const std::string& new_name = {});

/// Subdivides the edge v-w by a new (-1)-vertex; v and w each lose 1.
WeightedDualGraph blowup_at_edge(const WeightedDualGraph& g, const std::string& v, const std::string& w,
                                 const std::string& new_name = {});

/// Contracts a (-1)-vertex of valence <= 2; neighbours gain 1 and two
/// neighbours become adjacent.
WeightedDualGraph blowdown(const WeightedDualGraph& g, const std::string& v);

struct BlowupVertex {
  std::string at;
  std::string new_name;
};
struct BlowupEdge {
  std::string v, w;
  std::string new_name;
};
struct Blowdown {
  std::string at;
};
using Move = std::variant<BlowupVertex, BlowupEdge, Blowdown>;
using GraphScript = std::vector<Move>;

WeightedDualGraph apply_move(const WeightedDualGraph& g, const Move& m);
WeightedDualGraph run_script(const WeightedDualGraph& g, const GraphScript& script);

/// Isomorphism of weighted graphs (names ignored), by backtracking.
bool isomorphic(const WeightedDualGraph& a, const WeightedDualGraph& b);

bool verify_sequence(const WeightedDualGraph& start, const GraphScript& script,
                     const WeightedDualGraph& expected);

/// Weights on the diagonal, 1 for each edge; rows in vertex order.
Matrix<long long> intersection_matrix(const WeightedDualGraph& g);

/// On the full graph, or on the subgraph spanned by the given vertices.
bool is_negative_definite(const WeightedDualGraph& g, const std::vector<std::string>& subset = {});

enum class FiberStatus { unique, inconsistent, underdetermined };

struct FiberSolution {
  FiberStatus status = FiberStatus::inconsistent;
  std::map<std::string, Rational> multiplicity;  // filled when unique
  bool integral = false;
  bool positive = false;
};

/// Solves F.C_v = 0 for every fiber vertex v and F.S = 1 for
/// F = sum m(v) C_v, exactly. The section must meet exactly one fiber vertex.
FiberSolution fiber_multiplicities(const WeightedDualGraph& g, const std::vector<std::string>& fiber,
                                   const std::string& section);

/// Every component of a degenerate fiber (>= 2 vertices) has negative weight.
bool zariski_fiber_check(const WeightedDualGraph& g, const std::vector<std::string>& fiber);

}  // namespace affcone::dualgraph
