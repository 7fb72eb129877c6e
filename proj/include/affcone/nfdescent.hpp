#pragma once

// The integer system left over from untwisting a birational map of a cubic
// surface onto a conic bundle: H ~ -aK + bF through points of multiplicity
// m_i, with
//
//   sum m_i   = 3a + 2b - 3
//   sum m_i^2 = 3a^2 + 4ab - 1.
//
// With a = 1 every m_i is 1 after normalizing, so sum m_i = sum m_i^2 gives
// 3 + 2b - 3 = 3 + 4b - 1, i.e. b = -1, and then n = sum m_i = -2 < 0. Hence
// no state exists for a = 1. With no points at all, 3a^2 - 6a + 1 = 0 would
// need an integer root, and it has none.

#include "affcone/error.hpp"
#include "affcone/picard.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace affcone::nfdescent {

using Int = std::int64_t;

struct NFState {
  Int a = 1;
  Int b = 0;
  std::vector<Int> mults;  // kept sorted descending

  NFState() = default;
  NFState(Int a, Int b, std::vector<Int> mults);

  Int max_mult() const { return mults.empty() ? 0 : mults.front(); }
  bool normalized() const { return max_mult() <= a; }
  std::string to_string() const;

  friend bool operator==(const NFState&, const NFState&) = default;
  friend auto operator<=>(const NFState&, const NFState&) = default;
};

struct StateCheck {
  Int sum_residual = 0;     // sum m - (3a + 2b - 3)
  Int square_residual = 0;  // sum m^2 - (3a^2 + 4ab - 1)
  bool satisfied() const { return sum_residual == 0 && square_residual == 0; }
};

/// Throws InputError if a < 1 or some m_i < 1.
StateCheck verify_state(const NFState& s);

/// The same two equations in pre-substitution form, 1 = H^2 - sum m^2 and
/// -3 = K.H + sum m, evaluated for an arbitrary class on a lattice. Returns
/// (H^2 - sum m^2 - 1, K.H + sum m + 3).
std::pair<Rational, Rational> general_residuals(const picard::PicardLattice& lat, const picard::LatticeClass& h,
                                                const std::vector<Int>& mults);

/// -aK + bF on the cubic surface, F = L - E1 the conic class.
picard::LatticeClass cubic_class(const picard::PicardLattice& lat, Int a, Int b);

/// m_i -> 2a - m_i, b -> b + a - m_i at sorted position i. nullopt when
/// 2a - m_i <= 0 (no geometric transform). Throws InputError on a bad index
/// or an input that fails the equations.
std::optional<NFState> elementary_transform(const NFState& s, std::size_t i);

struct Normalization {
  NFState state;
  bool stuck = false;  // an oversized m_i remains and cannot be transformed
  int steps = 0;
};

Normalization normalize(const NFState& s);

struct Audit {
  bool b_negative = false;    // b < 0
  bool residual = false;      // a + 2b >= 0
  bool mult_exceeds = false;  // max m > a + b
  bool passed() const { return b_negative && residual && mult_exceeds; }
};

/// Requires a normalized state satisfying the equations.
Audit constraint_audit(const NFState& s);

struct DescentResult {
  Int a_next = 0;  // 2a + 2b - m
  Int b_next = 0;  // m - a - b
  bool strict = false;      // a_next < a
  bool degenerate = false;  // a_next == 0
};

/// Throws InputError if the audit fails.
DescentResult descent_step(const NFState& s);

struct SearchBounds {
  Int a_max = 5;
  Int b_abs_max = 10;
  std::optional<Int> n_max;   // default: the derived cap
  std::optional<Int> m_cap;   // default: a
  unsigned threads = 0;       // 0: hardware concurrency
};

struct SearchHit {
  NFState state;
  Audit audit;
  std::optional<DescentResult> descent;  // present when the audit passes
};

struct SearchResult {
  SearchBounds bounds;
  Int derived_n_cap = 0;  // max over the box of 3a + 2b - 3
  bool truncated = false; // configured n_max below the derived cap
  std::uint64_t pairs_scanned = 0;
  std::uint64_t nodes_visited = 0;
  std::vector<SearchHit> hits;  // sorted by state
  double seconds = 0;
};

/// Every normalized (a, b, mults) in the box satisfying both equations with
/// a + 2b >= 0, audited and descended.
SearchResult exhaustive_search(const SearchBounds& bounds);

}  // namespace affcone::nfdescent
