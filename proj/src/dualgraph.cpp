#include "affcone/dualgraph.hpp"

#include <algorithm>
#include <functional>

namespace affcone::dualgraph {

namespace {

std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void WeightedDualGraph::require(const std::string& name) const {
  if (!has_vertex(name)) throw InputError("no vertex '" + name + "'");
}

void WeightedDualGraph::add_vertex(const std::string& name, int weight) {
  if (name.empty()) throw InputError("vertex name is empty");
  if (has_vertex(name)) throw InputError("duplicate vertex '" + name + "'");
  order_.push_back(name);
  weights_[name] = weight;
}

void WeightedDualGraph::add_edge(const std::string& a, const std::string& b) {
  require(a);
  require(b);
  if (a == b) throw InputError("loop at '" + a + "'");
  if (!edges_.insert(key(a, b)).second)
    throw InputError("multiple edge " + a + "-" + b + " (configurations must be simple)");
}

void WeightedDualGraph::remove_vertex(const std::string& name) {
  require(name);
  std::erase_if(edges_, [&](const auto& e) { return e.first == name || e.second == name; });
  weights_.erase(name);
  std::erase(order_, name);
  if (section == name) section.reset();
  for (auto& f : fibers) std::erase(f, name);
}

void WeightedDualGraph::remove_edge(const std::string& a, const std::string& b) {
  if (edges_.erase(key(a, b)) == 0) throw InputError("no edge " + a + "-" + b);
}

void WeightedDualGraph::set_weight(const std::string& name, int weight) {
  require(name);
  weights_[name] = weight;
}

bool WeightedDualGraph::has_edge(const std::string& a, const std::string& b) const {
  return edges_.count(key(a, b)) > 0;
}

int WeightedDualGraph::weight(const std::string& name) const {
  require(name);
  return weights_.at(name);
}

std::vector<std::string> WeightedDualGraph::neighbors(const std::string& name) const {
  require(name);
  std::vector<std::string> out;
  for (const auto& v : order_)
    if (v != name && has_edge(name, v)) out.push_back(v);
  return out;
}

std::string WeightedDualGraph::fresh_name(const std::string& prefix) const {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = prefix + std::to_string(k);
    if (!has_vertex(candidate)) return candidate;
  }
}

WeightedDualGraph blowup_at_vertex(const WeightedDualGraph& g, const std::string& v,
                                   const std::string& new_name) {
  WeightedDualGraph out = g;
  out.set_weight(v, g.weight(v) - 1);
  const std::string name = new_name.empty() ? g.fresh_name() : new_name;
  out.add_vertex(name, -1);
  out.add_edge(v, name);
  return out;
}

WeightedDualGraph blowup_at_edge(const WeightedDualGraph& g, const std::string& v, const std::string& w,
                                 const std::string& new_name) {
  if (!g.has_vertex(v) || !g.has_vertex(w) || !g.has_edge(v, w))
    throw InputError("no edge " + v + "-" + w + " to blow up");
  WeightedDualGraph out = g;
  out.remove_edge(v, w);
  out.set_weight(v, g.weight(v) - 1);
  out.set_weight(w, g.weight(w) - 1);
  const std::string name = new_name.empty() ? g.fresh_name() : new_name;
  out.add_vertex(name, -1);
  out.add_edge(v, name);
  out.add_edge(name, w);
  return out;
}

WeightedDualGraph blowdown(const WeightedDualGraph& g, const std::string& v) {
  if (g.weight(v) != -1)
    throw InputError("cannot contract '" + v + "' of weight " + std::to_string(g.weight(v)));
  const auto nbrs = g.neighbors(v);
  if (nbrs.size() > 2) throw InputError("cannot contract '" + v + "': valence " + std::to_string(nbrs.size()) + " > 2");
  if (nbrs.size() == 2 && g.has_edge(nbrs[0], nbrs[1]))
    throw InputError("contracting '" + v + "' would create a multiple edge");
  WeightedDualGraph out = g;
  out.remove_vertex(v);
  for (const auto& u : nbrs) out.set_weight(u, g.weight(u) + 1);
  if (nbrs.size() == 2) out.add_edge(nbrs[0], nbrs[1]);
  return out;
}

WeightedDualGraph apply_move(const WeightedDualGraph& g, const Move& m) {
  return std::visit(
      [&](const auto& mv) -> WeightedDualGraph {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, BlowupVertex>)
          return blowup_at_vertex(g, mv.at, mv.new_name);
        else if constexpr (std::is_same_v<T, BlowupEdge>)
          return blowup_at_edge(g, mv.v, mv.w, mv.new_name);
        else
          return blowdown(g, mv.at);
      },
      m);
}

WeightedDualGraph run_script(const WeightedDualGraph& g, const GraphScript& script) {
  WeightedDualGraph cur = g;
  for (std::size_t i = 0; i < script.size(); ++i) {
    try {
      cur = apply_move(cur, script[i]);
    } catch (const InputError& e) {
      throw InputError("move " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return cur;
}

bool isomorphic(const WeightedDualGraph& a, const WeightedDualGraph& b) {
  if (a.size() != b.size() || a.edges().size() != b.edges().size()) return false;
  const auto& va = a.vertices();
  const auto& vb = b.vertices();
  const std::size_t n = va.size();
  std::vector<std::size_t> deg_a(n), deg_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    deg_a[i] = a.neighbors(va[i]).size();
    deg_b[i] = b.neighbors(vb[i]).size();
  }
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || a.weight(va[i]) != b.weight(vb[j]) || deg_a[i] != deg_b[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k)
        ok = a.has_edge(va[i], va[k]) == b.has_edge(vb[j], vb[static_cast<std::size_t>(image[k])]);
      if (!ok) continue;
      image[i] = static_cast<int>(j);
      used[j] = true;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return extend(0);
}

bool verify_sequence(const WeightedDualGraph& start, const GraphScript& script,
                     const WeightedDualGraph& expected) {
  return isomorphic(run_script(start, script), expected);
}

Matrix<long long> intersection_matrix(const WeightedDualGraph& g) {
  const auto& v = g.vertices();
  const auto n = static_cast<Eigen::Index>(v.size());
  Matrix<long long> m = Matrix<long long>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = g.weight(v[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && g.has_edge(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)])) m(i, j) = 1;
  }
  return m;
}

bool is_negative_definite(const WeightedDualGraph& g, const std::vector<std::string>& subset) {
  const auto& names = subset.empty() ? g.vertices() : subset;
  const auto n = static_cast<Eigen::Index>(names.size());
  MatrixQ m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& a = names[static_cast<std::size_t>(i)];
      const auto& b = names[static_cast<std::size_t>(j)];
      m(i, j) = i == j ? Rational(g.weight(a)) : Rational(g.has_edge(a, b) ? 1 : 0);
    }
  return affcone::is_negative_definite(m);
}

FiberSolution fiber_multiplicities(const WeightedDualGraph& g, const std::vector<std::string>& fiber,
                                   const std::string& section) {
  if (fiber.empty()) throw InputError("fiber has no vertices");
  if (!g.has_vertex(section)) throw InputError("no section vertex '" + section + "'");
  std::set<std::string> seen;
  for (const auto& v : fiber) {
    if (!g.has_vertex(v)) throw InputError("no fiber vertex '" + v + "'");
    if (v == section) throw InputError("the section cannot be a fiber component");
    if (!seen.insert(v).second) throw InputError("fiber vertex '" + v + "' listed twice");
  }
  const auto touching = std::count_if(fiber.begin(), fiber.end(),
                                      [&](const std::string& v) { return g.has_edge(v, section); });
  if (touching != 1)
    throw InputError("section must meet exactly one fiber vertex, meets " + std::to_string(touching));

  // Rows: F.C_v = 0 for each fiber vertex, then F.S = 1.
  const auto k = static_cast<Eigen::Index>(fiber.size());
  MatrixQ a = MatrixQ::Zero(k + 1, k);
  VectorQ rhs = VectorQ::Zero(k + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& vi = fiber[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& vj = fiber[static_cast<std::size_t>(j)];
      a(i, j) = i == j ? Rational(g.weight(vi)) : Rational(g.has_edge(vi, vj) ? 1 : 0);
    }
    a(k, i) = g.has_edge(vi, section) ? 1 : 0;
  }
  rhs(k) = 1;

  FiberSolution out;
  const auto sol = solve_exact(a, rhs);
  switch (sol.status) {
    case SolveStatus::inconsistent:
      out.status = FiberStatus::inconsistent;
      return out;
    case SolveStatus::underdetermined:
      out.status = FiberStatus::underdetermined;
      return out;
    case SolveStatus::unique:
      break;
  }
  out.status = FiberStatus::unique;
  out.integral = out.positive = true;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Rational& m = sol.x(i);
    out.multiplicity[fiber[static_cast<std::size_t>(i)]] = m;
    out.integral = out.integral && m.is_integer();
    out.positive = out.positive && m > Rational(0);
  }
  return out;
}

bool zariski_fiber_check(const WeightedDualGraph& g, const std::vector<std::string>& fiber) {
  if (fiber.size() < 2) throw InputError("a degenerate fiber needs at least two components");
  return std::all_of(fiber.begin(), fiber.end(), [&](const std::string& v) { return g.weight(v) < 0; });
}

}  // namespace affcone::dualgraph
