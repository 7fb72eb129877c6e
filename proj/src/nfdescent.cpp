#include "affcone/nfdescent.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace affcone::nfdescent {

NFState::NFState(Int a_, Int b_, std::vector<Int> m) : a(a_), b(b_), mults(std::move(m)) {
  std::sort(mults.begin(), mults.end(), std::greater<>());
}

std::string NFState::to_string() const {
  std::ostringstream os;
  os << "(a=" << a << ", b=" << b << ", m={";
  for (std::size_t i = 0; i < mults.size(); ++i) os << (i ? "," : "") << mults[i];
  os << "})";
  return os.str();
}

StateCheck verify_state(const NFState& s) {
  if (s.a < 1) throw InputError("a must be positive, got " + std::to_string(s.a));
  Int sum = 0, squares = 0;
  for (Int m : s.mults) {
    if (m < 1) throw InputError("multiplicities must be positive, got " + std::to_string(m));
    sum += m;
    squares += m * m;
  }
  return {sum - (3 * s.a + 2 * s.b - 3), squares - (3 * s.a * s.a + 4 * s.a * s.b - 1)};
}

std::pair<Rational, Rational> general_residuals(const picard::PicardLattice& lat, const picard::LatticeClass& h,
                                                const std::vector<Int>& mults) {
  Rational sum(0), squares(0);
  for (Int m : mults) {
    sum += Rational(m);
    squares += Rational(m * m);
  }
  const Rational h2 = picard::self_intersection(lat, h);
  const Rational kh = picard::intersect(lat, lat.canonical(), h);
  return {h2 - squares - Rational(1), kh + sum + Rational(3)};
}

picard::LatticeClass cubic_class(const picard::PicardLattice& lat, Int a, Int b) {
  if (lat.points() < 1) throw InputError("the conic class needs at least one blown-up point");
  const picard::LatticeClass fiber = lat.line() - lat.exceptional(1);
  return Rational(a) * lat.anticanonical() + Rational(b) * fiber;
}

namespace {

void require_equations(const NFState& s) {
  const auto check = verify_state(s);
  if (!check.satisfied())
    throw InputError("state " + s.to_string() + " does not satisfy the equations (residuals " +
                     std::to_string(check.sum_residual) + ", " + std::to_string(check.square_residual) + ")");
}

}  // namespace

std::optional<NFState> elementary_transform(const NFState& s, std::size_t i) {
  if (i >= s.mults.size())
    throw InputError("index " + std::to_string(i) + " out of range for " + std::to_string(s.mults.size()) +
                     " multiplicities");
  require_equations(s);
  const Int m = s.mults[i];
  const Int image = 2 * s.a - m;
  if (image <= 0) return std::nullopt;
  auto mults = s.mults;
  mults[i] = image;
  return NFState(s.a, s.b + s.a - m, std::move(mults));
}

Normalization normalize(const NFState& s) {
  require_equations(s);
  Normalization out{s, false, 0};
  for (;;) {
    bool oversized = false, moved = false;
    for (std::size_t i = 0; i < out.state.mults.size() && !moved; ++i) {
      if (out.state.mults[i] <= out.state.a) continue;
      oversized = true;
      if (auto next = elementary_transform(out.state, i)) {
        out.state = std::move(*next);
        ++out.steps;
        moved = true;
      }
    }
    if (!oversized) return out;
    if (!moved) {
      out.stuck = true;
      return out;
    }
  }
}

Audit constraint_audit(const NFState& s) {
  require_equations(s);
  if (!s.normalized()) throw InputError("state " + s.to_string() + " is not normalized");
  return {s.b < 0, s.a + 2 * s.b >= 0, s.max_mult() > s.a + s.b};
}

DescentResult descent_step(const NFState& s) {
  const Audit audit = constraint_audit(s);
  if (!audit.passed()) throw InputError("state " + s.to_string() + " fails the constraint audit");
  const Int m = s.max_mult();
  DescentResult r;
  r.a_next = 2 * s.a + 2 * s.b - m;
  r.b_next = m - s.a - s.b;
  r.strict = r.a_next < s.a;
  r.degenerate = r.a_next == 0;
  return r;
}

namespace {

struct Partitioner {
  Int n_cap;
  std::vector<Int> parts;
  std::vector<std::vector<Int>> found;
  std::uint64_t nodes = 0;

  // Parts chosen in non-increasing order, each at most `top`.
  void run(Int r, Int q, Int top) {
    ++nodes;
    if (r == 0) {
      if (q == 0) found.push_back(parts);
      return;
    }
    if (static_cast<Int>(parts.size()) >= n_cap) return;
    for (Int p = std::min(top, r); p >= 1; --p) {
      const Int r2 = r - p, q2 = q - p * p;
      // Remaining parts k <= p satisfy k <= k^2 <= p k.
      if (q2 < r2 || q2 > p * r2) continue;
      const Int need = r2 == 0 ? 0 : (r2 + p - 1) / p;
      if (static_cast<Int>(parts.size()) + 1 + need > n_cap) continue;
      parts.push_back(p);
      run(r2, q2, p);
      parts.pop_back();
    }
  }
};

}  // namespace

SearchResult exhaustive_search(const SearchBounds& bounds) {
  if (bounds.a_max < 1 || bounds.b_abs_max < 0 || (bounds.n_max && *bounds.n_max < 0) ||
      (bounds.m_cap && *bounds.m_cap < 1))
    throw InputError("search bounds must be positive");
  const auto start = std::chrono::steady_clock::now();

  SearchResult result;
  result.bounds = bounds;
  result.derived_n_cap = std::max<Int>(0, 3 * bounds.a_max + 2 * bounds.b_abs_max - 3);
  result.truncated = bounds.n_max && *bounds.n_max < result.derived_n_cap;

  std::atomic<Int> next_a{1};
  std::mutex merge;
  auto worker = [&] {
    std::vector<SearchHit> hits;
    std::uint64_t pairs = 0, nodes = 0;
    for (Int a = next_a++; a <= bounds.a_max; a = next_a++) {
      for (Int b = -bounds.b_abs_max; b <= bounds.b_abs_max; ++b) {
        ++pairs;
        if (a + 2 * b < 0) continue;
        const Int s1 = 3 * a + 2 * b - 3, s2 = 3 * a * a + 4 * a * b - 1;
        if (s1 < 0 || s2 < 0) continue;
        // Every m_i >= 1, so n <= s1.
        const Int cap = bounds.n_max ? std::min(*bounds.n_max, s1) : s1;
        Partitioner part{cap, {}, {}, 0};
        part.run(s1, s2, bounds.m_cap ? std::min(a, *bounds.m_cap) : a);
        nodes += part.nodes;
        for (auto& m : part.found) {
          SearchHit hit{NFState(a, b, std::move(m)), {}, std::nullopt};
          hit.audit = constraint_audit(hit.state);
          if (hit.audit.passed()) hit.descent = descent_step(hit.state);
          hits.push_back(std::move(hit));
        }
      }
    }
    std::lock_guard lock(merge);
    result.pairs_scanned += pairs;
    result.nodes_visited += nodes;
    for (auto& h : hits) result.hits.push_back(std::move(h));
  };

  unsigned threads = bounds.threads ? bounds.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<Int>(threads, bounds.a_max));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(result.hits.begin(), result.hits.end(),
            [](const SearchHit& x, const SearchHit& y) { return x.state < y.state; });
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace affcone::nfdescent
