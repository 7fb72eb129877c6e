#include "affcone/cylinder.hpp"

#include <algorithm>
#include <sstream>

namespace affcone::cylinder {

void check_well_formed(const CylinderCertificate& cert) {
  cert.lattice.check(cert.target);
  std::set<std::string> seen;
  for (const auto& c : cert.components) {
    if (!seen.insert(c.name).second) throw InputError("duplicate component name '" + c.name + "'");
    if (!(c.coeff > Rational(0)))
      throw InputError("component '" + c.name + "' has nonpositive coefficient " + to_string(c.coeff));
    cert.lattice.check(c.cls);
  }
}

LatticeClass weighted_sum(const CylinderCertificate& cert) {
  LatticeClass sum = cert.lattice.zero();
  for (const auto& c : cert.components) {
    cert.lattice.check(c.cls);
    sum += c.coeff * c.cls;
  }
  return sum;
}

Verdict verify_certificate(const CylinderCertificate& cert) {
  check_well_formed(cert);
  Verdict v;
  v.difference = weighted_sum(cert) - cert.target;
  v.valid = v.difference.isZero();
  return v;
}

bool coefficient_bounds_check(const CylinderCertificate& cert) {
  return std::all_of(cert.components.begin(), cert.components.end(),
                     [](const Component& c) { return c.coeff < Rational(1); });
}

ComponentAudit component_count_audit(const CylinderCertificate& cert, int surface_degree) {
  ComponentAudit audit;
  audit.count = cert.components.size();
  if (!cert.components.empty()) {
    MatrixQ span(cert.lattice.rank(), static_cast<Eigen::Index>(cert.components.size()));
    for (std::size_t i = 0; i < cert.components.size(); ++i)
      span.col(static_cast<Eigen::Index>(i)) = cert.components[i].cls;
    audit.span_rank = rank(span);
  }
  if (surface_degree != 3) return audit;
  audit.applicable = true;
  audit.at_least_seven = audit.count >= 7;
  audit.exactly_eight = audit.count == 8;
  audit.full_rank = audit.span_rank == 7 && cert.lattice.rank() == 7;
  return audit;
}

CylinderCertificate ParametricCertificate::at(const Rational& eps) const {
  CylinderCertificate cert{lattice, {}, target};
  for (const auto& c : components) cert.components.push_back({c.name, c.cls, c.coeff.at(eps)});
  return cert;
}

bool holds_identically(const ParametricCertificate& pcert) {
  LatticeClass constant = pcert.lattice.zero();
  LatticeClass linear = pcert.lattice.zero();
  pcert.lattice.check(pcert.target);
  for (const auto& c : pcert.components) {
    pcert.lattice.check(c.cls);
    constant += c.coeff.constant * c.cls;
    linear += c.coeff.slope * c.cls;
  }
  return constant == pcert.target && linear.isZero();
}

std::string to_string(const Interval& iv) {
  return "(" + (iv.lower ? to_string(*iv.lower) : std::string("-inf")) + ", " +
         (iv.upper ? to_string(*iv.upper) : std::string("inf")) + ")";
}

namespace {

// Intersects iv with {eps : constant + slope * eps > bound} (greater = true)
// or {... < bound}. Returns false when the constraint alone is unsatisfiable.
bool constrain(Interval& iv, const AffineCoeff& c, const Rational& bound, bool greater) {
  if (c.slope.is_zero()) return greater ? c.constant > bound : c.constant < bound;
  const Rational crossing = (bound - c.constant) / c.slope;
  const bool lower_side = (c.slope > Rational(0)) == greater;
  if (lower_side) {
    if (!iv.lower || crossing > *iv.lower) iv.lower = crossing;
  } else {
    if (!iv.upper || crossing < *iv.upper) iv.upper = crossing;
  }
  return true;
}

}  // namespace

std::optional<Interval> epsilon_interval(const ParametricCertificate& pcert, bool require_upper_bound) {
  if (!holds_identically(pcert)) throw InputError("parametric family does not hold identically in eps");
  Interval iv;
  for (const auto& c : pcert.components) {
    if (!constrain(iv, c.coeff, Rational(0), true)) return std::nullopt;
    if (require_upper_bound && !constrain(iv, c.coeff, Rational(1), false)) return std::nullopt;
  }
  if (iv.lower && iv.upper && !(*iv.lower < *iv.upper)) return std::nullopt;
  return iv;
}

std::vector<std::string> PencilDescription::component_names() const {
  std::vector<std::string> names;
  for (const auto& member : members)
    for (const auto& c : member)
      if (std::find(names.begin(), names.end(), c.name) == names.end()) names.push_back(c.name);
  return names;
}

PencilVerdict pencil_member_consistency(const PencilDescription& p) {
  p.lattice.check(p.pencil_class);
  if (p.members.empty()) throw InputError("pencil has no degenerate members");
  PencilVerdict v;
  v.valid = true;
  for (std::size_t k = 0; k < p.members.size(); ++k) {
    const auto& member = p.members[k];
    if (member.empty()) throw InputError("degenerate member " + std::to_string(k) + " is empty");
    std::set<std::string> names;
    LatticeClass sum = p.lattice.zero();
    for (const auto& c : member) {
      if (!names.insert(c.name).second)
        throw InputError("component '" + c.name + "' repeated within a member");
      if (c.multiplicity < 1) throw InputError("component '" + c.name + "' has multiplicity < 1");
      p.lattice.check(c.cls);
      sum += Rational(c.multiplicity) * c.cls;
    }
    LatticeClass diff = sum - p.pencil_class;
    if (!diff.isZero()) v.valid = false;
    v.member_differences.push_back(std::move(diff));
  }
  return v;
}

bool pencil_not_pluri_anticanonical(const PencilDescription& p) {
  p.lattice.check(p.pencil_class);
  const LatticeClass minus_k = p.lattice.anticanonical();
  // -K has L-coefficient 3, so any multiple t(-K) has t = coeff(L) / 3.
  const Rational t = p.pencil_class(0) / 3;
  if (p.pencil_class != t * minus_k) return true;
  return !(t.is_integer() && t > Rational(0));
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::untested:
      return "untested";
  }
  return "unknown";
}

const AuditItem& PencilAudit::item(const std::string& id) const {
  for (const auto& it : items)
    if (it.id == id) return it;
  throw std::out_of_range("no audit item '" + id + "'");
}

bool PencilAudit::passed() const {
  return std::none_of(items.begin(), items.end(),
                      [](const AuditItem& it) { return it.status == CheckStatus::fail; });
}

namespace {

CheckStatus status_of(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

bool is_minus_one_class(const PicardLattice& lat, const LatticeClass& c) {
  return picard::is_integral(c) && picard::self_intersection(lat, c) == Rational(-1) &&
         picard::anticanonical_degree(lat, c) == Rational(1);
}

}  // namespace

PencilAudit cubic_pencil_audit(const PencilDescription& p, const CylinderCertificate& cert,
                               const std::optional<picard::ResolutionData>& resolution) {
  if (p.lattice.points() != 6 || cert.lattice.points() != 6)
    throw InputError("cubic pencil audit needs the degree-3 lattice (n = 6)");
  const auto consistency = pencil_member_consistency(p);
  const auto names = p.component_names();

  std::map<std::string, LatticeClass> classes;
  for (const auto& member : p.members)
    for (const auto& c : member) classes.emplace(c.name, c.cls);

  // Lines known to pass through P: declared ones plus (-1)-class components
  // flagged through P.
  std::vector<LatticeClass> lines_at_p = p.lines_through_base_point;
  for (const auto& [name, cls] : classes) {
    auto flag = p.through_base_point.find(name);
    if (flag != p.through_base_point.end() && flag->second && is_minus_one_class(p.lattice, cls) &&
        std::find(lines_at_p.begin(), lines_at_p.end(), cls) == lines_at_p.end())
      lines_at_p.push_back(cls);
  }

  PencilAudit audit;
  auto add = [&](std::string id, std::string description, CheckStatus status, std::string detail = {}) {
    audit.items.push_back({std::move(id), std::move(description), status, std::move(detail)});
  };

  add("members-consistent", "every degenerate member sums to the pencil class",
      status_of(consistency.valid));
  add("1-not-eckardt", "fewer than three lines through the base point (Eckardt proxy)",
      status_of(lines_at_p.size() < 3), std::to_string(lines_at_p.size()) + " line(s) through P");
  add("2-singular-general-member", "general member singular at P, smooth rational off P",
      CheckStatus::untested, "curve geometry");
  add("3a-two-degenerate-members", "exactly two degenerate members", status_of(p.members.size() == 2),
      std::to_string(p.members.size()) + " member(s)");
  add("3b-eight-components", "the degenerate members have 8 irreducible components",
      status_of(names.size() == 8), std::to_string(names.size()) + " component(s)");

  bool all_through = !names.empty();
  for (const auto& n : names) {
    auto flag = p.through_base_point.find(n);
    if (flag == p.through_base_point.end() || !flag->second) all_through = false;
  }
  add("4-through-base-point", "every component is flagged through P", status_of(all_through));
  add("4-disjoint-off-base-point", "components pairwise disjoint off P", CheckStatus::untested,
      "curve geometry");

  bool lines_covered = true;
  for (const auto& line : p.lines_through_base_point) {
    bool found = false;
    for (const auto& [name, cls] : classes) found = found || cls == line;
    lines_covered = lines_covered && found;
  }
  add("5-lines-are-components", "every line through P is a component", status_of(lines_covered));

  bool cert_ok = false;
  std::string cert_detail;
  try {
    const auto v = verify_certificate(cert);
    std::set<std::string> support;
    for (const auto& c : cert.components) support.insert(c.name);
    const bool same_support = support == std::set<std::string>(names.begin(), names.end());
    cert_ok = v.valid && coefficient_bounds_check(cert) && same_support;
    cert_detail = std::string(v.valid ? "" : "certificate does not sum to target; ") +
                  (same_support ? "" : "certificate support differs from the members");
  } catch (const InputError& e) {
    cert_detail = e.what();
  }
  add("6-coefficients-in-unit-interval", "D = sum d_i D_i equals -K with 0 < d_i < 1",
      status_of(cert_ok), cert_detail);

  if (resolution) {
    const auto pull = picard::crepant_pullback(*resolution);
    std::vector<Rational> boundary;
    for (const auto& c : cert.components) boundary.push_back(c.coeff);
    const bool lc = picard::is_log_canonical(pull.coefficients, boundary);
    add("7-not-log-canonical", "the pair (Y, D) is not log canonical at P", status_of(!lc),
        "from crepant pullback");
  } else {
    add("7-not-log-canonical", "the pair (Y, D) is not log canonical at P", CheckStatus::untested,
        "no resolution data supplied");
  }

  add("8-not-pluri-anticanonical", "pencil class is not a positive multiple of -K",
      status_of(pencil_not_pluri_anticanonical(p)));
  return audit;
}

std::set<std::string> ml_common_components(const std::vector<std::set<std::string>>& supports) {
  if (supports.empty()) throw InputError("common components need at least one pencil");
  std::set<std::string> common = supports.front();
  for (std::size_t i = 1; i < supports.size(); ++i) {
    std::set<std::string> next;
    std::set_intersection(common.begin(), common.end(), supports[i].begin(), supports[i].end(),
                          std::inserter(next, next.begin()));
    common = std::move(next);
  }
  return common;
}

}  // namespace affcone::cylinder
