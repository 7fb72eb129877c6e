#include "affcone/picard.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <mutex>

namespace affcone::picard {

PicardLattice::PicardLattice(int points) : n_(points) {
  if (points < 0) throw InputError("lattice needs a nonnegative number of points");
}

LatticeClass PicardLattice::line() const {
  LatticeClass c = zero();
  c(0) = 1;
  return c;
}

LatticeClass PicardLattice::exceptional(int i) const {
  if (i < 1 || i > n_)
    throw InputError("exceptional index " + std::to_string(i) + " out of range 1.." +
                     std::to_string(n_));
  LatticeClass c = zero();
  c(i) = 1;
  return c;
}

LatticeClass PicardLattice::canonical() const {
  LatticeClass c = LatticeClass::Constant(rank(), Rational(1));
  c(0) = -3;
  return c;
}

LatticeClass PicardLattice::exceptional_sum() const {
  LatticeClass c = LatticeClass::Constant(rank(), Rational(1));
  c(0) = 0;
  return c;
}

LatticeClass PicardLattice::make(std::initializer_list<Rational> coeffs) const {
  return make(std::vector<Rational>(coeffs));
}

LatticeClass PicardLattice::make(const std::vector<Rational>& coeffs) const {
  if (static_cast<Eigen::Index>(coeffs.size()) != rank())
    throw InputError("class has " + std::to_string(coeffs.size()) +
                     " coefficients, lattice rank is " + std::to_string(rank()));
  LatticeClass c(rank());
  for (Eigen::Index i = 0; i < rank(); ++i) c(i) = coeffs[static_cast<std::size_t>(i)];
  return c;
}

MatrixQ PicardLattice::form() const {
  MatrixQ f = MatrixQ::Zero(rank(), rank());
  f(0, 0) = 1;
  for (Eigen::Index i = 1; i < rank(); ++i) f(i, i) = -1;
  return f;
}

bool is_integral(const LatticeClass& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!c(i).is_integer()) return false;
  return true;
}

Rational adjunction_genus(const PicardLattice& lat, const LatticeClass& c) {
  lat.check(c);
  if (!is_integral(c)) throw InputError("adjunction genus needs an integral class");
  return (self_intersection(lat, c) + intersect(lat, c, lat.canonical())) / 2 + 1;
}

namespace {

constexpr int kMaxPoints = 8;

void require_del_pezzo_range(const PicardLattice& lat) {
  if (lat.points() > kMaxPoints)
    throw InputError("enumeration needs n <= 8 (the set is infinite for n = " +
                     std::to_string(lat.points()) + ")");
}

std::int64_t isqrt(std::int64_t v) {
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Integral classes c = aL - sum b_i E_i on the shell sum b_i = s(a),
// sum b_i^2 = q(a). Cauchy-Schwarz, s(a)^2 <= n q(a), confines a to a bounded
// interval; for the three shells used here (c.c in {-2,-1,0} with the matching
// c.K) that interval lies within [-12, 12], so scanning [-32, 32] is complete.
class ShellSearch {
 public:
  ShellSearch(int n, std::function<std::int64_t(std::int64_t)> sum,
              std::function<std::int64_t(std::int64_t)> sumsq)
      : n_(n), sum_(std::move(sum)), sumsq_(std::move(sumsq)), b_(static_cast<std::size_t>(n)) {}

  std::vector<LatticeClass> run() {
    for (std::int64_t a = -kScan; a <= kScan; ++a) {
      const std::int64_t s = sum_(a);
      const std::int64_t q = sumsq_(a);
      if (q < 0 || s * s > static_cast<std::int64_t>(n_) * q) continue;
      if (n_ == 0 && (s != 0 || q != 0)) continue;
      a_ = a;
      fill(0, s, q);
    }
    std::sort(out_.begin(), out_.end(), [](const LatticeClass& x, const LatticeClass& y) {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });
    return std::move(out_);
  }

 private:
  static constexpr std::int64_t kScan = 32;

  void fill(int i, std::int64_t rs, std::int64_t rq) {
    if (i == n_) {
      if (rs == 0 && rq == 0) emit();
      return;
    }
    const std::int64_t bound = isqrt(rq);
    const std::int64_t left = n_ - i - 1;
    for (std::int64_t v = -bound; v <= bound; ++v) {
      const std::int64_t ns = rs - v;
      const std::int64_t nq = rq - v * v;
      if (nq < 0 || ns * ns > left * nq) continue;
      b_[static_cast<std::size_t>(i)] = v;
      fill(i + 1, ns, nq);
    }
  }

  void emit() {
    LatticeClass c(n_ + 1);
    c(0) = Rational(static_cast<long long>(a_));
    for (int i = 0; i < n_; ++i) c(i + 1) = Rational(static_cast<long long>(-b_[static_cast<std::size_t>(i)]));
    out_.push_back(std::move(c));
  }

  int n_;
  std::function<std::int64_t(std::int64_t)> sum_;
  std::function<std::int64_t(std::int64_t)> sumsq_;
  std::vector<std::int64_t> b_;
  std::int64_t a_ = 0;
  std::vector<LatticeClass> out_;
};

// c.c = a^2 - sum b^2 and c.K = -3a + sum b.
std::vector<LatticeClass> minus_one_uncached(int n) {
  return ShellSearch(n, [](std::int64_t a) { return 3 * a - 1; },
                     [](std::int64_t a) { return a * a + 1; })
      .run();
}

const std::vector<LatticeClass>& minus_one_cached(int n) {
  static std::array<std::once_flag, kMaxPoints + 1> flags;
  static std::array<std::vector<LatticeClass>, kMaxPoints + 1> cache;
  const auto idx = static_cast<std::size_t>(n);
  std::call_once(flags[idx], [&] { cache[idx] = minus_one_uncached(n); });
  return cache[idx];
}

}  // namespace

std::vector<LatticeClass> enumerate_minus_one_classes(const PicardLattice& lat) {
  require_del_pezzo_range(lat);
  return minus_one_cached(lat.points());
}

std::vector<LatticeClass> enumerate_conic_classes(const PicardLattice& lat) {
  require_del_pezzo_range(lat);
  auto all = ShellSearch(lat.points(), [](std::int64_t a) { return 3 * a - 2; },
                         [](std::int64_t a) { return a * a; })
                 .run();
  std::erase_if(all, [](const LatticeClass& c) { return c(0) < Rational(0); });
  return all;
}

std::vector<LatticeClass> enumerate_roots(const PicardLattice& lat) {
  require_del_pezzo_range(lat);
  return ShellSearch(lat.points(), [](std::int64_t a) { return 3 * a; },
                     [](std::int64_t a) { return a * a + 2; })
      .run();
}

std::vector<LatticeClass> simple_roots(const PicardLattice& lat) {
  std::vector<LatticeClass> roots;
  for (int i = 1; i < lat.points(); ++i) roots.push_back(lat.exceptional(i) - lat.exceptional(i + 1));
  if (lat.points() >= 3)
    roots.push_back(lat.line() - lat.exceptional(1) - lat.exceptional(2) - lat.exceptional(3));
  return roots;
}

bool is_root(const PicardLattice& lat, const LatticeClass& r) {
  lat.check(r);
  return is_integral(r) && self_intersection(lat, r) == Rational(-2) &&
         intersect(lat, r, lat.canonical()).is_zero();
}

LatticeClass reflect(const PicardLattice& lat, const LatticeClass& r, const LatticeClass& x) {
  if (!is_root(lat, r)) throw InputError("reflection vector is not a root (r.r = -2, r.K = 0)");
  lat.check(x);
  return x + intersect(lat, x, r) * r;
}

std::vector<LatticeClass> mori_generators(const PicardLattice& lat) {
  if (lat.points() < 1 || lat.points() > kMaxPoints)
    throw InputError("Mori-cone tests need 1 <= n <= 8");
  auto gens = minus_one_cached(lat.points());
  // F_1: the cone is spanned by E_1 and the ruling, which is not a (-1)-class.
  if (lat.points() == 1) gens.push_back(lat.line() - lat.exceptional(1));
  return gens;
}

bool is_nef(const PicardLattice& lat, const LatticeClass& h) {
  lat.check(h);
  if (lat.points() == 0) return h(0) >= Rational(0);
  for (const auto& c : mori_generators(lat))
    if (intersect(lat, h, c) < Rational(0)) return false;
  return true;
}

bool is_ample(const PicardLattice& lat, const LatticeClass& h) {
  lat.check(h);
  if (lat.points() == 0) return h(0) > Rational(0);
  if (!(self_intersection(lat, h) > Rational(0))) return false;
  for (const auto& c : mori_generators(lat))
    if (!(intersect(lat, h, c) > Rational(0))) return false;
  return true;
}

Rational inverse_nef_value(const PicardLattice& lat, const LatticeClass& h) {
  if (!is_nef(lat, h)) throw InputError("inverse nef value needs a nef class");
  if (lat.points() == 0) return h(0) / 3;
  const auto gens = mori_generators(lat);
  Rational best = intersect(lat, h, gens.front()) / anticanonical_degree(lat, gens.front());
  for (const auto& c : gens) best = std::min(best, intersect(lat, h, c) / anticanonical_degree(lat, c));
  return best;
}

std::string to_string(AdjointType t) {
  switch (t) {
    case AdjointType::zero:
      return "zero";
    case AdjointType::fiber:
      return "fiber";
    case AdjointType::big:
      return "big";
  }
  return "unknown";
}

AdjointType adjoint_kodaira_type(const PicardLattice& lat, const LatticeClass& h) {
  const Rational t0 = inverse_nef_value(lat, h);
  const LatticeClass m = h + t0 * lat.canonical();
  if (m.isZero()) return AdjointType::zero;
  const Rational sq = self_intersection(lat, m);
  if (sq.is_zero()) return AdjointType::fiber;
  if (sq > Rational(0)) return AdjointType::big;
  throw InputError("adjoint class has negative square; input was not nef");
}

LatticeClass total_transform(const PicardLattice& from, const LatticeClass& c) {
  from.check(c);
  LatticeClass up = LatticeClass::Zero(c.size() + 1);
  up.head(c.size()) = c;
  return up;
}

LatticeClass proper_transform(const PicardLattice& from, const LatticeClass& c,
                              const Rational& multiplicity) {
  LatticeClass up = total_transform(from, c);
  up(up.size() - 1) = -multiplicity;
  return up;
}

std::vector<Rational> CrepantPullback::discrepancies() const {
  std::vector<Rational> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) out.push_back(-c);
  return out;
}

MatrixQ gram_matrix(const PicardLattice& lat, const std::vector<LatticeClass>& classes) {
  const auto k = static_cast<Eigen::Index>(classes.size());
  MatrixQ g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      g(i, j) = intersect(lat, classes[static_cast<std::size_t>(i)], classes[static_cast<std::size_t>(j)]);
  return g;
}

CrepantPullback crepant_pullback(const ResolutionData& res) {
  const auto& lat = res.lattice;
  if (res.exceptional.empty()) throw InputError("resolution has no exceptional curves");
  lat.check(res.strict);
  for (const auto& e : res.exceptional) {
    lat.check(e);
    if (!(self_intersection(lat, e) < Rational(0)))
      throw InputError("exceptional class with nonnegative self-intersection");
  }
  const MatrixQ gram = gram_matrix(lat, res.exceptional);
  if (!is_negative_definite(gram))
    throw InputError("exceptional Gram matrix is not negative definite");

  const LatticeClass fixed = lat.canonical() + res.strict;
  VectorQ rhs(gram.rows());
  for (Eigen::Index j = 0; j < gram.rows(); ++j)
    rhs(j) = -intersect(lat, fixed, res.exceptional[static_cast<std::size_t>(j)]);
  auto sol = solve_exact(gram, rhs);
  if (sol.status != SolveStatus::unique) throw InputError("crepant system has no unique solution");

  CrepantPullback out;
  out.boundary = res.strict;
  for (Eigen::Index i = 0; i < sol.x.size(); ++i) {
    out.coefficients.push_back(sol.x(i));
    out.boundary += sol.x(i) * res.exceptional[static_cast<std::size_t>(i)];
  }
  return out;
}

bool is_log_canonical(const std::vector<Rational>& crepant_coefficients,
                      const std::vector<Rational>& boundary_coefficients) {
  auto at_most_one = [](const Rational& c) { return c <= Rational(1); };
  return std::all_of(crepant_coefficients.begin(), crepant_coefficients.end(), at_most_one) &&
         std::all_of(boundary_coefficients.begin(), boundary_coefficients.end(), at_most_one);
}

}  // namespace affcone::picard
