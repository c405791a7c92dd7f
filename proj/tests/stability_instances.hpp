#pragma once

#include <optional>
#include <random>
#include <vector>

#include "metab/ringexpr.hpp"
#include "metab/stability.hpp"

namespace metab::testing {

// An ab-injective instance satisfying the inertia congruences, or nullopt.
inline std::optional<StabilityProblem> draw_stability_instance(const MagnusModel& w, std::mt19937& rng) {
  const auto& c = w.ctx();
  const auto ro = *c.order();
  auto s1 = c.monomial(1, 0) - c.one(), s2 = c.monomial(0, 1) - c.one();
  std::vector<RingElem> gens;
  switch (rng() % 4) {
    case 0: gens = {ring_from_index(c, rng() % ro)}; break;
    case 1: gens = {s1 * ring_from_index(c, rng() % ro), s2 * ring_from_index(c, rng() % ro)}; break;
    case 2: gens = {s1 * s2, s1.pow(2)}; break;
    default: break;
  }
  int d1 = 1 + static_cast<int>(rng() % c.m()), d2 = 1 + static_cast<int>(rng() % c.m());
  auto a = solve_mod_ideal(w, gens, c.one() - c.monomial(0, 1), geometric_sum(c, {1, 0}, d1));
  auto b = solve_mod_ideal(w, gens, c.monomial(1, 0) - c.one(), geometric_sum(c, {0, 1}, d2));
  if (!a || !b) return std::nullopt;
  RingElem t1 = a->particular, t2 = b->particular;
  for (const auto& h : a->homogeneous) t1 += h.scaled(static_cast<Int>(rng() % c.n()));
  for (const auto& h : b->homogeneous) t2 += h.scaled(static_cast<Int>(rng() % c.n()));
  StabilityProblem p(w, gens, t1, t2, d1, d2);
  if (!p.ab_injective()) return std::nullopt;
  return p;
}

// Found by a random search over principal ideals in R(3,3) with the inertia
// congruences imposed: K is not normal and r does not stabilize it.
struct EngineeredInstance {
  std::vector<RingElem> ideal;
  RingElem s1, s2;
  int d1 = 3, d2 = 3;
  IAEndo r;
};

inline EngineeredInstance engineered_unstable(const RingCtx& c) {
  auto e = [&](const char* s) { return parse_ring_expr(c, s); };
  return {{e("2 + 2*a1 + 2*a1*a2^2 + a1^2 + 2*a1^2*a2")},
          e("1 + a2 + a2^2 + 2*a1 + 2*a1*a2 + a1*a2^2 + a1^2 + a1^2*a2 + 2*a1^2*a2^2"),
          e("1 + a2^2 + 2*a1 + 2*a1*a2 + a1^2*a2"),
          3,
          3,
          {e("1 + a2 + a1*a2 + a1*a2^2 + a1^2*a2^2"), e("2 + a2^2 + 2*a1^2 + 2*a1^2*a2")}};
}

}  // namespace metab::testing
