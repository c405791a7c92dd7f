#pragma once

// Modular-curve invariants of SL2-orbits on Epi^ext(F2, G): the action of
// s, t on the quotient by -I = S^2, index, elliptic points, cusps, genus,
// and the per-component report.

#include <string>
#include <vector>

#include "json.hpp"
#include "metab/congruence.hpp"
#include "metab/nielsen.hpp"

namespace metab {

struct ProjectiveAction {
  std::vector<int> point_of;  // per class; -1 outside the given set
  std::vector<int> reps;      // least class of each point, ascending
  std::vector<int> s, t;      // induced permutations of the points
  int size() const { return static_cast<int>(reps.size()); }
};

/// Quotient of an S,T-invariant set of classes by S^2. Throws
/// InvariantViolation if the set is not invariant or s, t are ill defined.
ProjectiveAction projectivize(const ActionTable& table, const std::vector<int>& classes);

struct CurveInvariants {
  Int mu = 1;
  Int nu2 = 0;
  Int nu3 = 0;
  Int cusps = 1;
  Int genus = 0;
  bool operator==(const CurveInvariants&) const = default;
};

/// Invariants of the orbit of the point under <s, t>: mu = orbit size,
/// nu2 = fixed points of s, nu3 = fixed points of st, cusps = t-cycles,
/// genus = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2. Throws InvariantViolation if
/// (st)^6 is not the identity or the genus is not a non-negative integer.
CurveInvariants curve_invariants(const ProjectiveAction& p, int point);
/// Cusp widths (t-cycle lengths) on the orbit of the point, ascending.
std::vector<Int> cusp_widths(const ProjectiveAction& p, int point);

struct ComponentReport {
  int orbit = 0;      // SL2-orbit index
  int gl2_orbit = 0;  // GL2-orbit containing it
  Int e = 1;
  MatrixSubgroup stabilizer;          // H <= GL2(Z/e), stabilizer of the least class
  std::uint64_t sl2_stabilizer_order = 0;
  std::uint64_t degree = 0;           // [GL2(Z/e) : H], size of the GL2-orbit
  std::uint64_t geometric_degree = 0; // size of the SL2-orbit
  Int wohlfahrt = 1;
  CurveInvariants invariants;
};

struct ReportOptions {
  Int level = 0;             // 0 selects exp(G)
  bool force = false;        // allow non-metabelian groups (orbit data only)
  int ia_samples = 200;      // random r checked by IA-descent beyond exhaustive range
  std::size_t max_order = 1024;
};

struct GroupReport {
  std::string group;
  Int e = 1;
  int classes = 0;
  bool metabelian = true;
  LevelCertificate certificate;
  std::vector<ComponentReport> components;
  std::vector<std::vector<int>> sl2_orbits;
  std::vector<std::vector<int>> gl2_orbits;
  OutAction out;
  bool homogeneous = true;  // equal invariants within each GL2-orbit
  std::vector<std::string> violations;
};

/// Full pipeline. Throws std::invalid_argument for non-metabelian G unless
/// forced; failed invariant checks are collected in `violations`.
GroupReport component_report(const FinGroup& g, const ReportOptions& opts = {});
GroupReport component_report(const ActionTable& table, const ReportOptions& opts = {});

nlohmann::json to_json(const CurveInvariants& c);
nlohmann::json to_json(const GroupReport& r);
/// One row per component with a header line.
std::string to_csv(const GroupReport& r);

}  // namespace metab
