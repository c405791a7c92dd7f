#include "metab/modcurve.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "metab/errors.hpp"
#include "metab/fingrp.hpp"
#include "metab/parallel.hpp"

namespace metab {

ProjectiveAction projectivize(const ActionTable& table, const std::vector<int>& classes) {
  const auto& S = table.perm_s();
  const auto& T = table.perm_t();
  ProjectiveAction p;
  p.point_of.assign(static_cast<std::size_t>(table.size()), -1);
  std::vector<int> sorted(classes);
  std::sort(sorted.begin(), sorted.end());
  for (int c : sorted) {
    if (p.point_of[static_cast<std::size_t>(c)] >= 0) continue;
    int partner = S[static_cast<std::size_t>(S[static_cast<std::size_t>(c)])];
    if (!std::binary_search(sorted.begin(), sorted.end(), partner))
      throw InvariantViolation("projectivize: class set is not S-invariant");
    int id = p.size();
    p.point_of[static_cast<std::size_t>(c)] = id;
    p.point_of[static_cast<std::size_t>(partner)] = id;
    p.reps.push_back(c);
  }
  for (int c : sorted) {
    for (const auto* perm : {&S, &T})
      if (p.point_of[static_cast<std::size_t>((*perm)[static_cast<std::size_t>(c)])] < 0)
        throw InvariantViolation("projectivize: class set is not invariant");
  }
  p.s.assign(p.reps.size(), -1);
  p.t.assign(p.reps.size(), -1);
  for (int c : sorted) {
    const auto pt = static_cast<std::size_t>(p.point_of[static_cast<std::size_t>(c)]);
    int s = p.point_of[static_cast<std::size_t>(S[static_cast<std::size_t>(c)])];
    int t = p.point_of[static_cast<std::size_t>(T[static_cast<std::size_t>(c)])];
    if ((p.s[pt] >= 0 && p.s[pt] != s) || (p.t[pt] >= 0 && p.t[pt] != t))
      throw InvariantViolation("projectivize: induced action is ill defined");
    p.s[pt] = s;
    p.t[pt] = t;
  }
  return p;
}

namespace {

std::vector<int> point_orbit(const ProjectiveAction& p, int point) {
  std::vector<int> orbit{point};
  std::vector<bool> seen(static_cast<std::size_t>(p.size()), false);
  seen[static_cast<std::size_t>(point)] = true;
  const auto s_inv = perm_inverse(p.s), t_inv = perm_inverse(p.t);
  for (std::size_t q = 0; q < orbit.size(); ++q)
    for (const auto* perm : {&p.s, &p.t, &s_inv, &t_inv}) {
      int y = (*perm)[static_cast<std::size_t>(orbit[q])];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        orbit.push_back(y);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

}  // namespace

std::vector<Int> cusp_widths(const ProjectiveAction& p, int point) {
  std::vector<Int> widths;
  std::vector<bool> done(static_cast<std::size_t>(p.size()), false);
  for (int x : point_orbit(p, point)) {
    if (done[static_cast<std::size_t>(x)]) continue;
    Int len = 0;
    for (int y = x; !done[static_cast<std::size_t>(y)]; y = p.t[static_cast<std::size_t>(y)]) {
      done[static_cast<std::size_t>(y)] = true;
      ++len;
    }
    widths.push_back(len);
  }
  std::sort(widths.begin(), widths.end());
  return widths;
}

CurveInvariants curve_invariants(const ProjectiveAction& p, int point) {
  const auto orbit = point_orbit(p, point);
  const auto st = perm_then(p.s, p.t);
  if (!is_identity(perm_power(st, 6))) throw InvariantViolation("(st)^6 is not the identity");
  CurveInvariants c;
  c.mu = static_cast<Int>(orbit.size());
  c.nu2 = 0;
  c.nu3 = 0;
  for (int x : orbit) {
    if (p.s[static_cast<std::size_t>(x)] == x) ++c.nu2;
    if (st[static_cast<std::size_t>(x)] == x) ++c.nu3;
  }
  const auto widths = cusp_widths(p, point);
  c.cusps = static_cast<Int>(widths.size());
  Int sum = 0;
  for (Int w : widths) sum += w;
  if (sum != c.mu) throw InvariantViolation("cusp widths do not sum to the index");
  // 12 (g - 1) = mu - 3 nu2 - 4 nu3 - 6 cusps.
  Int twelve = c.mu - 3 * c.nu2 - 4 * c.nu3 - 6 * c.cusps;
  if (twelve % 12 != 0 || twelve < -12) throw InvariantViolation("genus formula is not a non-negative integer");
  c.genus = 1 + twelve / 12;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

void check_ia_descent(const FinGroup& g, const ReportOptions& opts, std::vector<std::string>& violations) {
  ModuleCtx mc(g);
  const auto& R = mc.ring();
  auto check = [&](const IAEndo& r) {
    if (!ia_descend(mc, r)) {
      violations.push_back("IA-endomorphism r = (" + r.r1.to_string() + ", " + r.r2.to_string() +
                           ") does not descend");
      return false;
    }
    return true;
  };
  auto total = R.order();
  if (total && *total <= 10000 / *total) {
    for (std::uint64_t i = 0; i < *total; ++i)
      for (std::uint64_t j = 0; j < *total; ++j)
        if (!check({ring_from_index(R, i), ring_from_index(R, j)})) return;
    return;
  }
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Int> coeff(0, R.n() - 1);
  for (int k = 0; k < opts.ia_samples; ++k) {
    ZVec a(static_cast<std::size_t>(R.dim())), b(a.size());
    for (auto& x : a) x = coeff(rng);
    for (auto& x : b) x = coeff(rng);
    if (!check({RingElem(R, a), RingElem(R, b)})) return;
  }
}

}  // namespace

GroupReport component_report(const FinGroup& g, const ReportOptions& opts) {
  if (!g.is_metabelian() && !opts.force) throw std::invalid_argument(g.name() + " is not metabelian");
  ActionTable table(g, opts.level, opts.max_order);
  return component_report(table, opts);
}

GroupReport component_report(const ActionTable& table, const ReportOptions& opts) {
  const auto& g = table.group();
  if (!g.is_metabelian() && !opts.force) throw std::invalid_argument(g.name() + " is not metabelian");
  GroupReport r;
  r.group = g.name();
  r.e = table.level();
  r.classes = table.size();
  r.metabelian = g.is_metabelian();
  r.sl2_orbits = orbits(table, Ambient::SL2);
  r.gl2_orbits = orbits(table, Ambient::GL2);
  r.certificate = certify(table, r.e);
  if (!r.certificate.verdict) {
    if (r.metabelian) r.violations.push_back("SL2 action does not factor through level " + std::to_string(r.e));
  }
  if (r.metabelian) {
    check_ia_descent(g, opts, r.violations);
    if (!inertia_relation_check(ModuleCtx(g)).holds) r.violations.push_back("inertia relation fails");
    r.out = out_action_on_orbits(table, Ambient::GL2);
    if (!r.out.transitive) r.violations.push_back("Out(G) is not transitive on GL2-orbits");
  }
  const auto gl2_index = orbit_index(r.gl2_orbits, table.size());
  r.components.resize(r.sl2_orbits.size());
  std::vector<std::vector<std::string>> notes(r.sl2_orbits.size());
  parallel_for(r.sl2_orbits.size(), [&](std::size_t o) {
    const auto& orbit = r.sl2_orbits[o];
    auto& c = r.components[o];
    c.orbit = static_cast<int>(o);
    c.gl2_orbit = gl2_index[static_cast<std::size_t>(orbit.front())];
    c.e = r.e;
    c.geometric_degree = orbit.size();
    c.wohlfahrt = wohlfahrt_level(table, orbit.front());
    c.invariants = curve_invariants(projectivize(table, orbit), 0);
    if (!r.certificate.verdict) return;
    c.stabilizer = stabilizer_mod(table, orbit.front(), r.e, Ambient::GL2, r.certificate);
    c.sl2_stabilizer_order = stabilizer_mod(table, orbit.front(), r.e, Ambient::SL2, r.certificate).order();
    c.degree = c.stabilizer.index();
    if (c.degree != r.gl2_orbits[static_cast<std::size_t>(c.gl2_orbit)].size())
      notes[o].push_back("stabilizer index differs from GL2-orbit size");
    if (r.e % c.wohlfahrt != 0) notes[o].push_back("Wohlfahrt level does not divide e");
  });
  std::vector<std::optional<CurveInvariants>> seen(r.gl2_orbits.size());
  std::uint64_t degree_sum = 0;
  for (std::size_t o = 0; o < r.components.size(); ++o) {
    const auto& c = r.components[o];
    for (auto& n : notes[o]) r.violations.push_back(std::move(n));
    auto& first = seen[static_cast<std::size_t>(c.gl2_orbit)];
    if (!first) {
      first = c.invariants;
      degree_sum += c.degree;
    } else if (!(*first == c.invariants)) {
      r.homogeneous = false;
    }
  }
  if (!r.homogeneous) r.violations.push_back("curve invariants differ within a GL2-orbit");
  if (r.certificate.verdict && degree_sum != static_cast<std::uint64_t>(table.size()))
    r.violations.push_back("component degrees do not add up to |Epi^ext|");
  return r;
}

nlohmann::json to_json(const CurveInvariants& c) {
  return {{"mu", c.mu}, {"nu2", c.nu2}, {"nu3", c.nu3}, {"cusps", c.cusps}, {"genus", c.genus}};
}

nlohmann::json to_json(const GroupReport& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"orbit", c.orbit},
                     {"gl2_orbit", c.gl2_orbit},
                     {"e", c.e},
                     {"stabilizer", to_json(c.stabilizer)},
                     {"sl2_stabilizer_order", c.sl2_stabilizer_order},
                     {"degree", c.degree},
                     {"geometric_degree", c.geometric_degree},
                     {"wohlfahrt", c.wohlfahrt},
                     {"invariants", to_json(c.invariants)}});
  }
  nlohmann::json out = {{"group", r.group},
                        {"e", r.e},
                        {"classes", r.classes},
                        {"metabelian", r.metabelian},
                        {"certificate", to_json(r.certificate)},
                        {"sl2_orbits", r.sl2_orbits},
                        {"gl2_orbits", r.gl2_orbits},
                        {"components", comps},
                        {"homogeneous", r.homogeneous},
                        {"violations", r.violations}};
  if (r.metabelian) out["out_transitive"] = r.out.transitive;
  return out;
}

std::string to_csv(const GroupReport& r) {
  std::ostringstream os;
  os << "group,e,orbit,gl2_orbit,degree,geometric_degree,mu,nu2,nu3,cusps,genus,wohlfahrt,stabilizer_order\n";
  for (const auto& c : r.components) {
    const auto& v = c.invariants;
    os << r.group << ',' << c.e << ',' << c.orbit << ',' << c.gl2_orbit << ',' << c.degree << ','
       << c.geometric_degree << ',' << v.mu << ',' << v.nu2 << ',' << v.nu3 << ',' << v.cusps << ',' << v.genus << ','
       << c.wohlfahrt << ',' << c.stabilizer.order() << '\n';
  }
  return os.str();
}

}  // namespace metab
