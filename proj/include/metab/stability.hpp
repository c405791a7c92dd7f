#pragma once

// Stability of the subgroups K = <I, [x1,x2]^{-s1} x1^{d1}, [x1,x2]^{-s2} x2^{d2}>
// of W under IA-endomorphisms, decided three ways: the ideal-membership
// criterion, the same criterion before the inertia congruence is applied,
// and brute force in W / I*kappa.

#include <optional>
#include <vector>

#include "metab/grpring.hpp"
#include "metab/iacalc.hpp"
#include "metab/magnus.hpp"
#include "metab/zmod.hpp"

namespace metab {

class StabilityProblem {
 public:
  /// I is the ideal generated by ideal_gens. Subgroup closure in W / I*kappa
  /// stops once it exceeds |W^ab|.
  StabilityProblem(const MagnusModel& model, const std::vector<RingElem>& ideal_gens, RingElem s1, RingElem s2,
                   int d1, int d2);

  const RingCtx& ctx() const { return model_->ctx(); }
  const RingElem& s1() const { return s1_; }
  const RingElem& s2() const { return s2_; }
  int d1() const { return d1_; }
  int d2() const { return d2_; }

  /// r in I + Ann(kappa), the ideal through which I acts on W'.
  bool in_effective_ideal(const RingElem& r) const;

  /// K / I*kappa maps injectively to W^ab.
  bool ab_injective() const { return injective_; }
  /// |K / I*kappa| when ab_injective.
  std::size_t quotient_order() const { return elements_.size(); }

  /// s1 (a1 - 1) and s2 (a2 - 1) lie in the ideal.
  bool normal_by_criterion() const;
  /// K is invariant under conjugation by x1 and x2.
  bool normal_brute() const;

  /// 1 + a1 + ... + a1^{d1-1} = s1 (1 - a2) and
  /// 1 + a2 + ... + a2^{d2-1} = s2 (a1 - 1) modulo the ideal. These hold
  /// whenever K is normal, and are what reduces exact_condition to
  /// stability_check.
  bool inertia_congruences() const;

  /// r2 s1 (a1 - 1) and r1 s2 (a2 - 1) lie in the ideal.
  bool stability_check(const IAEndo& r) const;
  /// r_i (1 + a_i + ... + a_i^{d_i - 1}) - s_i (det(gamma_r) - 1) lie in the
  /// ideal, for i = 1, 2.
  bool exact_condition(const IAEndo& r) const;
  /// gamma_r maps both generators of K back into K modulo I*kappa.
  bool brute_stability(const IAEndo& r) const;

 private:
  MagnusElem reduce(const MagnusElem& z) const;
  bool contains(const MagnusElem& z) const;

  const MagnusModel* model_;
  RingElem s1_, s2_;
  int d1_, d2_;
  HowellForm effective_;      // I + Ann(kappa)
  HowellForm ideal_kappa_;    // I*kappa inside T
  MagnusElem k1_, k2_;
  bool injective_ = true;
  std::vector<MagnusElem> elements_;  // sorted
};

struct AffineSolutions {
  RingElem particular;
  std::vector<RingElem> homogeneous;  // Z/n-module generators
};

/// All s with s * factor = target modulo I + Ann(kappa), where I is the ideal
/// generated by ideal_gens; nullopt when there is none.
std::optional<AffineSolutions> solve_mod_ideal(const MagnusModel& model, const std::vector<RingElem>& ideal_gens,
                                               const RingElem& factor, const RingElem& target);

}  // namespace metab
