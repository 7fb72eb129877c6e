#pragma once

// Polar-cylinder certificates: weighted curve decompositions numerically
// equivalent to a target class (normally -K), their one-parameter families,
// and the pencil bookkeeping around them.

#include "affcone/picard.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace affcone::cylinder {

using picard::LatticeClass;
using picard::PicardLattice;

struct Component {
  std::string name;
  LatticeClass cls;
  Rational coeff;
};

struct CylinderCertificate {
  PicardLattice lattice;
  std::vector<Component> components;
  LatticeClass target;
};

struct Verdict {
  bool valid = false;
  /// sum coeff_i * class_i - target; zero iff valid.
  LatticeClass difference;
};

/// Checks that names are distinct and every coefficient is positive; throws
/// InputError otherwise.
void check_well_formed(const CylinderCertificate& cert);

LatticeClass weighted_sum(const CylinderCertificate& cert);

Verdict verify_certificate(const CylinderCertificate& cert);

/// Every coefficient strictly below 1.
bool coefficient_bounds_check(const CylinderCertificate& cert);

struct ComponentAudit {
  bool applicable = false;  // only degree 3 is audited
  std::size_t count = 0;
  Eigen::Index span_rank = 0;
  bool at_least_seven = false;
  bool exactly_eight = false;
  bool full_rank = false;  // components span Pic of rank 7

  bool passed() const { return !applicable || (at_least_seven && exactly_eight && full_rank); }
};

ComponentAudit component_count_audit(const CylinderCertificate& cert, int surface_degree);

/// a + b * eps.
struct AffineCoeff {
  Rational constant;
  Rational slope;

  Rational at(const Rational& eps) const { return constant + slope * eps; }
};

struct ParametricComponent {
  std::string name;
  LatticeClass cls;
  AffineCoeff coeff;
};

struct ParametricCertificate {
  PicardLattice lattice;
  std::vector<ParametricComponent> components;
  LatticeClass target;

  /// Specializes to a concrete certificate at eps.
  CylinderCertificate at(const Rational& eps) const;
};

/// True iff sum a_i class_i = target and sum b_i class_i = 0.
bool holds_identically(const ParametricCertificate& pcert);

/// Open interval; a missing endpoint means unbounded on that side.
struct Interval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  bool contains(const Rational& x) const {
    return (!lower || x > *lower) && (!upper || x < *upper);
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);

/// The exact set of eps with every coefficient > 0 (and < 1 when
/// require_upper_bound), or nullopt when that set is empty. Throws InputError
/// when the family does not hold identically in eps.
std::optional<Interval> epsilon_interval(const ParametricCertificate& pcert, bool require_upper_bound);

struct MemberComponent {
  std::string name;
  LatticeClass cls;
  int multiplicity = 1;
};

struct PencilDescription {
  PicardLattice lattice;
  LatticeClass pencil_class;
  std::vector<std::vector<MemberComponent>> members;  // degenerate members
  std::map<std::string, bool> through_base_point;
  /// (-1)-classes declared to pass through the base point.
  std::vector<LatticeClass> lines_through_base_point;

  /// Distinct component names across all members, in first-seen order.
  std::vector<std::string> component_names() const;
};

struct PencilVerdict {
  bool valid = false;
  /// Per member: weighted class sum minus pencil_class.
  std::vector<LatticeClass> member_differences;
};

PencilVerdict pencil_member_consistency(const PencilDescription& p);

/// False iff pencil_class = k(-K) for a positive integer k.
bool pencil_not_pluri_anticanonical(const PencilDescription& p);

enum class CheckStatus { pass, fail, untested };

std::string to_string(CheckStatus s);

struct AuditItem {
  std::string id;
  std::string description;
  CheckStatus status = CheckStatus::untested;
  std::string detail;
};

struct PencilAudit {
  std::vector<AuditItem> items;

  const AuditItem& item(const std::string& id) const;
  /// No item failed (untested items do not count against it).
  bool passed() const;
};

/// Lattice-level audit of a candidate pencil and boundary divisor on a cubic
/// surface (n = 6). Geometric conditions are reported as untested; the
/// log-canonicity condition is evaluated only when resolution data is given.
PencilAudit cubic_pencil_audit(const PencilDescription& p, const CylinderCertificate& cert,
                               const std::optional<picard::ResolutionData>& resolution = {});

/// Intersection of the component supports of several pencils.
std::set<std::string> ml_common_components(const std::vector<std::set<std::string>>& supports);

}  // namespace affcone::cylinder
