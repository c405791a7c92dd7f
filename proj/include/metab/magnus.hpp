#pragma once

// Finite Magnus model: the subgroup W(n, m) of T x| A generated by
// x1 = (t1, a1) and x2 = (t2, a2), where T = R(n, m)^2 and A = (Z/m)^2.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "metab/grpring.hpp"
#include "metab/zmod.hpp"

namespace metab {

/// (b1 t1 + b2 t2, a1^v1 a2^v2).
struct MagnusElem {
  RingElem b1;
  RingElem b2;
  Exp2 v;

  const RingCtx& ctx() const { return b1.ctx(); }
  bool operator==(const MagnusElem& o) const = default;
  /// Ordered by (v, b1, b2).
  std::strong_ordering operator<=>(const MagnusElem& o) const;
};

MagnusElem magnus_identity(const RingCtx& ctx);
/// x1 = (t1, a1), x2 = (t2, a2).
std::pair<MagnusElem, MagnusElem> magnus_gens(const RingCtx& ctx);
/// kappa = (1 - a2, a1 - 1), the T-part of [x1, x2].
std::pair<RingElem, RingElem> kappa(const RingCtx& ctx);
/// (s * kappa, 1), written [x1,x2]^s.
MagnusElem kappa_power(const RingElem& s);

MagnusElem mul(const MagnusElem& x, const MagnusElem& y);
MagnusElem inv(const MagnusElem& x);
MagnusElem pow(const MagnusElem& x, Int k);
/// y x y^{-1}.
MagnusElem conj(const MagnusElem& x, const MagnusElem& y);
/// x y x^{-1} y^{-1}.
MagnusElem commutator(const MagnusElem& x, const MagnusElem& y);

/// mu(x1^v1 x2^v2).
MagnusElem section(const RingCtx& ctx, Exp2 v);

/// D(t, a) = a - 1 - (b1 (a1 - 1) + b2 (a2 - 1)); vanishes on W.
RingElem defect(const MagnusElem& z);

/// z = ([x1,x2]^alpha * (x1^m)^beta1 * (x2^m)^beta2) * section(z.v), where
/// (x_i^m)^beta stands for (beta N_i t_i, 1) with N_i = 1 + a_i + ... + a_i^{m-1}.
struct MagnusWitness {
  RingElem alpha;
  RingElem beta1;
  RingElem beta2;
};

/// Per-context linear algebra for W(n, m): the relation module
/// L = W cap T = R*kappa + R*(N1, 0) + R*(0, N2), its derived part R*kappa,
/// the annihilator of kappa, and witness solving.
class MagnusModel {
 public:
  explicit MagnusModel(const RingCtx& ctx);

  const RingCtx& ctx() const { return ctx_; }

  /// alpha with alpha*kappa = (t1, t2), normalized modulo Ann(kappa).
  std::optional<RingElem> kappa_witness(const RingElem& t1, const RingElem& t2) const;

  /// Witness for z, or nullopt if z is not in W. Normalized so that equal
  /// elements give equal witnesses.
  std::optional<MagnusWitness> membership(const MagnusElem& z) const;
  bool contains(const MagnusElem& z) const;
  /// z in W' = {(alpha*kappa, 1)}.
  bool in_derived(const MagnusElem& z) const;
  /// Canonical representative of the coset z W' (the T-part reduced
  /// modulo R*kappa); equal exactly when the images in W^ab agree.
  MagnusElem reduce_mod_derived(const MagnusElem& z) const;

  /// Canonical representative of alpha modulo Ann(kappa).
  RingElem normalize_witness(const RingElem& alpha) const;
  bool equal_mod_annihilator(const RingElem& a, const RingElem& b) const;

  /// Generators of Ann(kappa) = {r : r*kappa = 0}.
  std::vector<RingElem> annihilator_basis() const;
  bool annihilator_is_zero() const { return ann_.rank() == 0; }

  /// |R*kappa| = |W'|, |L| = |W cap T| and |W| = m^2 |L|.
  std::uint64_t derived_order() const;
  std::uint64_t relation_order() const;
  std::uint64_t order() const;

  /// All of W, sorted by (v, b1, b2).
  std::vector<MagnusElem> enumerate(std::size_t budget = 2'000'000) const;
  /// W cap T, sorted.
  std::vector<MagnusElem> enumerate_relations(std::size_t budget = 2'000'000) const;
  /// W', sorted.
  std::vector<MagnusElem> enumerate_derived(std::size_t budget = 2'000'000) const;

  /// Number of elements with D = 0 that are not in W. Enumerates all of
  /// T x| A, so only feasible for tiny rings.
  std::uint64_t defect_discrepancy(std::uint64_t budget = 5'000'000) const;

 private:
  RingCtx ctx_;
  HowellForm derived_;    // rows: monomial * kappa, tracked
  HowellForm ann_;        // Ann(kappa)
  HowellForm relations_;  // rows: monomial * kappa, monomial * (N1, 0), monomial * (0, N2), tracked
  HowellForm rel_kernel_;
};

}  // namespace metab
