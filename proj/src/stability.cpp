#include "metab/stability.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "metab/errors.hpp"

namespace metab {

namespace {

std::vector<ZVec> ideal_rows(const RingCtx& c, const std::vector<RingElem>& gens) {
  std::vector<ZVec> rows;
  for (const auto& g : gens)
    for (int i = 0; i < c.m(); ++i)
      for (int j = 0; j < c.m(); ++j) rows.push_back(g.shifted({i, j}).coeffs());
  return rows;
}

ZVec concat(const RingElem& a, const RingElem& b) {
  ZVec out = a.coeffs();
  out.insert(out.end(), b.coeffs().begin(), b.coeffs().end());
  return out;
}

}  // namespace

StabilityProblem::StabilityProblem(const MagnusModel& model, const std::vector<RingElem>& ideal_gens, RingElem s1,
                                   RingElem s2, int d1, int d2)
    : model_(&model),
      s1_(std::move(s1)),
      s2_(std::move(s2)),
      d1_(d1),
      d2_(d2),
      effective_(2, 0, {}),
      ideal_kappa_(2, 0, {}),
      k1_(magnus_identity(model.ctx())),
      k2_(magnus_identity(model.ctx())) {
  const auto& c = model.ctx();
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("StabilityProblem: d_i must be positive");
  const auto width = static_cast<std::size_t>(c.dim());
  HowellForm ideal(c.n(), width, ideal_rows(c, ideal_gens));

  auto eff = ideal.rows();
  for (const auto& a : model.annihilator_basis()) eff.push_back(a.coeffs());
  effective_ = HowellForm(c.n(), width, eff);

  auto [q1, q2] = kappa(c);
  std::vector<ZVec> ik;
  for (const auto& row : ideal.rows()) {
    RingElem x(c, row);
    ik.push_back(concat(x * q1, x * q2));
  }
  ideal_kappa_ = HowellForm(c.n(), 2 * width, ik);

  auto [x1, x2] = magnus_gens(c);
  k1_ = reduce(mul(kappa_power(-s1_), pow(x1, d1)));
  k2_ = reduce(mul(kappa_power(-s2_), pow(x2, d2)));

  // Closure of <k1, k2> modulo I*kappa, watching the map to W^ab.
  std::set<MagnusElem> seen{reduce(magnus_identity(c))};
  std::set<MagnusElem> ab_seen{model.reduce_mod_derived(magnus_identity(c))};
  std::vector<MagnusElem> queue{*seen.begin()};
  for (std::size_t i = 0; i < queue.size() && injective_; ++i)
    for (const auto& g : {k1_, k2_}) {
      MagnusElem y = reduce(mul(queue[i], g));
      if (!seen.insert(y).second) continue;
      if (!ab_seen.insert(model.reduce_mod_derived(y)).second) {
        injective_ = false;
        break;
      }
      queue.push_back(y);
    }
  elements_.assign(seen.begin(), seen.end());
}

MagnusElem StabilityProblem::reduce(const MagnusElem& z) const {
  const auto& c = model_->ctx();
  ZVec r = ideal_kappa_.reduce(concat(z.b1, z.b2));
  const auto dim = static_cast<std::ptrdiff_t>(c.dim());
  return {RingElem(c, ZVec(r.begin(), r.begin() + dim)), RingElem(c, ZVec(r.begin() + dim, r.end())), z.v};
}

bool StabilityProblem::contains(const MagnusElem& z) const {
  return std::binary_search(elements_.begin(), elements_.end(), reduce(z));
}

bool StabilityProblem::in_effective_ideal(const RingElem& r) const { return effective_.contains(r.coeffs()); }

bool StabilityProblem::normal_by_criterion() const {
  const auto& c = ctx();
  return in_effective_ideal(s1_ * (c.monomial(1, 0) - c.one())) &&
         in_effective_ideal(s2_ * (c.monomial(0, 1) - c.one()));
}

bool StabilityProblem::normal_brute() const {
  if (!injective_) throw InvariantViolation("normal_brute: K is not ab-injective modulo I");
  auto [x1, x2] = magnus_gens(ctx());
  for (const auto& k : {k1_, k2_})
    for (const auto& x : {x1, x2})
      if (!contains(conj(k, x))) return false;
  return true;
}

bool StabilityProblem::inertia_congruences() const {
  const auto& c = ctx();
  RingElem n1 = geometric_sum(c, {1, 0}, static_cast<std::uint64_t>(d1_));
  RingElem n2 = geometric_sum(c, {0, 1}, static_cast<std::uint64_t>(d2_));
  return in_effective_ideal(n1 - s1_ * (c.one() - c.monomial(0, 1))) &&
         in_effective_ideal(n2 - s2_ * (c.monomial(1, 0) - c.one()));
}

bool StabilityProblem::stability_check(const IAEndo& r) const {
  const auto& c = ctx();
  return in_effective_ideal(r.r2 * s1_ * (c.monomial(1, 0) - c.one())) &&
         in_effective_ideal(r.r1 * s2_ * (c.monomial(0, 1) - c.one()));
}

bool StabilityProblem::exact_condition(const IAEndo& r) const {
  const auto& c = ctx();
  RingElem d = ia_det(r) - c.one();
  RingElem e1 = r.r1 * geometric_sum(c, {1, 0}, static_cast<std::uint64_t>(d1_)) - s1_ * d;
  RingElem e2 = r.r2 * geometric_sum(c, {0, 1}, static_cast<std::uint64_t>(d2_)) - s2_ * d;
  return in_effective_ideal(e1) && in_effective_ideal(e2);
}

bool StabilityProblem::brute_stability(const IAEndo& r) const {
  if (!injective_) throw InvariantViolation("brute_stability: K is not ab-injective modulo I");
  return contains(ia_apply(*model_, r, k1_)) && contains(ia_apply(*model_, r, k2_));
}

std::optional<AffineSolutions> solve_mod_ideal(const MagnusModel& model, const std::vector<RingElem>& ideal_gens,
                                               const RingElem& factor, const RingElem& target) {
  const auto& c = model.ctx();
  const auto width = static_cast<std::size_t>(c.dim());
  // Unknowns: s (m^2 coefficients via the rows monomial * factor), then
  // free combinations of the ideal rows.
  std::vector<ZVec> rows = multiplication_rows(factor);
  auto extra = ideal_rows(c, ideal_gens);
  for (const auto& a : model.annihilator_basis()) extra.push_back(a.coeffs());
  rows.insert(rows.end(), extra.begin(), extra.end());
  HowellForm h(c.n(), width, rows, true);
  auto sol = h.solve(target.coeffs());
  if (!sol) return std::nullopt;
  const auto d = static_cast<std::ptrdiff_t>(width);
  AffineSolutions out{RingElem(c, ZVec(sol->begin(), sol->begin() + d)), {}};
  for (const auto& k : h.left_kernel().rows()) {
    RingElem s(c, ZVec(k.begin(), k.begin() + d));
    if (!s.is_zero()) out.homogeneous.push_back(s);
  }
  return out;
}

}  // namespace metab
