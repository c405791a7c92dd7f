#include <algorithm>
#include <map>

#include "doctest.h"
#include "metab/errors.hpp"
#include "metab/modcurve.hpp"

using namespace metab;

namespace {

const FinGroup& group(const std::string& name) {
  static std::map<std::string, FinGroup> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_group(*find_catalog_entry(name))).first;
  return it->second;
}

std::vector<int> all_classes(const ActionTable& t) {
  std::vector<int> v(static_cast<std::size_t>(t.size()));
  for (int i = 0; i < t.size(); ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

Int euler_phi(Int n) {
  Int r = 0;
  for (Int k = 1; k <= n; ++k)
    if (gcd(k, n) == 1) ++r;
  return r;
}

// [PSL2(Z) : Gamma(N)] from |SL2(Z/N)|.
Int psl_index(Int n) {
  auto sl = static_cast<Int>(sl2_order(n));
  return n > 2 ? sl / 2 : sl;
}

// Closed forms for Gamma(N).
CurveInvariants gamma_full(Int n) {
  CurveInvariants c;
  c.mu = n > 2 ? static_cast<Int>(sl2_order(n)) / 2 : 6;
  c.nu2 = 0;
  c.nu3 = 0;
  c.cusps = c.mu / n;
  c.genus = 1 + c.mu * (n - 6) / (12 * n);
  return c;
}

// Closed forms for Gamma1(N), with the small levels tabulated.
CurveInvariants gamma_one(Int n) {
  if (n == 2) return {3, 1, 0, 2, 0};
  if (n == 3) return {4, 0, 1, 2, 0};
  if (n == 4) return {6, 0, 0, 3, 0};
  CurveInvariants c;
  c.mu = static_cast<Int>(sl2_order(n)) / (2 * n);
  Int cusps2 = 0;
  for (Int d = 1; d <= n; ++d)
    if (n % d == 0) cusps2 += euler_phi(d) * euler_phi(n / d);
  c.cusps = cusps2 / 2;
  c.nu2 = 0;
  c.nu3 = 0;
  c.genus = 1 + (c.mu - 6 * c.cusps) / 12;
  return c;
}

}  // namespace

TEST_CASE("projectivization") {
  ActionTable v4(group("Z2xZ2"));
  auto p = projectivize(v4, all_classes(v4));
  CHECK(p.size() == 6);
  ActionTable z3(group("Z3xZ3"));
  auto q = projectivize(z3, all_classes(z3));
  CHECK(q.size() == 24);
  for (int c = 0; c < z3.size(); ++c) {
    int pt = q.point_of[static_cast<std::size_t>(c)];
    CHECK(q.s[static_cast<std::size_t>(pt)] == q.point_of[static_cast<std::size_t>(z3.perm_s()[static_cast<std::size_t>(c)])]);
    CHECK(q.t[static_cast<std::size_t>(pt)] == q.point_of[static_cast<std::size_t>(z3.perm_t()[static_cast<std::size_t>(c)])]);
  }
  CHECK(is_identity(perm_power(perm_then(q.s, q.t), 3)));
  CHECK(is_identity(perm_power(q.s, 2)));
  auto orbs = orbits(z3, Ambient::SL2);
  CHECK_THROWS_AS(projectivize(z3, {orbs[0][0]}), InvariantViolation);
}

TEST_CASE("Z2xZ2 gives the level-2 curve") {
  ActionTable t(group("Z2xZ2"));
  auto inv = curve_invariants(projectivize(t, all_classes(t)), 0);
  CHECK(inv == CurveInvariants{6, 0, 0, 3, 0});
}

TEST_CASE("(Z/N)^2 matches the principal congruence subgroup") {
  for (int n = 2; n <= 7; ++n) {
    ActionTable t(group("Z" + std::to_string(n) + "xZ" + std::to_string(n)));
    auto orbs = orbits(t, Ambient::SL2);
    CAPTURE(n);
    for (const auto& o : orbs) {
      auto p = projectivize(t, o);
      CHECK(curve_invariants(p, 0) == gamma_full(n));
      CHECK(psl_index(n) == gamma_full(n).mu);
      for (Int w : cusp_widths(p, 0)) CHECK(w == n);
    }
  }
  CHECK(gamma_full(7).genus == 3);
}

TEST_CASE("cyclic groups match Gamma1") {
  for (int n = 2; n <= 8; ++n) {
    ActionTable t(group("Z" + std::to_string(n)));
    auto orbs = orbits(t, Ambient::SL2);
    CAPTURE(n);
    REQUIRE(orbs.size() == 1);
    CHECK(curve_invariants(projectivize(t, orbs[0]), 0) == gamma_one(n));
  }
}

TEST_CASE("S3 report") {
  auto r = component_report(group("S3"));
  CHECK(r.violations.empty());
  REQUIRE(r.components.size() == 1);
  const auto& c = r.components[0];
  CHECK(c.degree == 3);
  CHECK(c.geometric_degree == 3);
  CHECK(c.invariants.genus == 0);
  CHECK(c.invariants.mu == 3);
  CHECK(c.stabilizer.order() == 96);
  CHECK(c.sl2_stabilizer_order == 48);
  CHECK(c.wohlfahrt == 2);
}

TEST_CASE("D5 has two conjugate components") {
  auto r = component_report(group("D5"));
  CHECK(r.violations.empty());
  REQUIRE(r.components.size() == 2);
  CHECK(r.gl2_orbits.size() == 1);
  CHECK(r.homogeneous);
  CHECK(r.components[0].invariants == r.components[1].invariants);
  CHECK(r.components[0].degree == 6);
  CHECK(r.components[0].geometric_degree == 3);
}

TEST_CASE("every metabelian catalog group passes") {
  for (const auto& name : {"S3", "D4", "D5", "D6", "Q8", "Heisenberg-27", "C7:C3", "Z2xZ2", "Z3xZ3", "Z4"}) {
    auto r = component_report(group(name));
    CAPTURE(name);
    CHECK(r.violations.empty());
    CHECK(r.certificate.verdict);
    CHECK(r.out.transitive);
    std::uint64_t total = 0;
    for (const auto& c : r.components) {
      const auto& v = c.invariants;
      CHECK(v.mu - 3 * v.nu2 - 4 * v.nu3 - 6 * v.cusps == 12 * (v.genus - 1));
      total += c.geometric_degree;
    }
    CHECK(total == static_cast<std::uint64_t>(r.classes));
  }
}

TEST_CASE("non-metabelian groups") {
  auto s4 = group("S4");
  CHECK_THROWS_AS(component_report(s4), std::invalid_argument);
  ReportOptions opts;
  opts.force = true;
  auto r = component_report(s4, opts);
  CHECK_FALSE(r.metabelian);
  CHECK_FALSE(r.certificate.verdict);
  CHECK(r.violations.empty());
  for (const auto& c : r.components) CHECK(c.degree == 0);
}

TEST_CASE("serialization") {
  auto r = component_report(group("D5"));
  auto j = to_json(r);
  CHECK(j["group"] == "D5");
  CHECK(j["components"].size() == 2);
  CHECK(j["components"][0]["invariants"]["genus"] == r.components[0].invariants.genus);
  CHECK(j["out_transitive"] == true);
  auto csv = to_csv(r);
  CHECK(csv.rfind("group,e,orbit,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(to_csv(r) == csv);
}
