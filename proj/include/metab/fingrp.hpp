#pragma once

// Finite 2-generated permutation groups with a full multiplication table,
// plus the group-algebra module structure on the derived subgroup of a
// metabelian group.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metab/grpring.hpp"
#include "metab/iacalc.hpp"
#include "metab/zmod.hpp"

namespace metab {

/// Images of the points 0..degree-1.
using Perm = std::vector<int>;

/// Product a*b applies b first: (a*b)(x) = a(b(x)).
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inv(const Perm& a);
/// Parses cycle notation with 1-based points, e.g. "(1 2 3)(4 5)" or "()".
/// Throws ParseError.
Perm parse_cycles(const std::string& text, int degree);
std::string to_cycles(const Perm& p);

class FinGroup {
 public:
  static constexpr std::size_t kDefaultMaxOrder = 4096;

  /// Closure of <g1, g2>. Throws std::invalid_argument on bad degree or
  /// permutations, BudgetExceeded above max_order.
  FinGroup(std::string name, int degree, Perm g1, Perm g2, std::size_t max_order = kDefaultMaxOrder);
  static FinGroup from_cycles(std::string name, int degree, const std::string& g1, const std::string& g2);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elems_.size()); }

  // Elements are indices into the list of permutations sorted by image
  // sequence; the identity is 0.
  int identity() const { return 0; }
  int gen1() const { return gen1_; }
  int gen2() const { return gen2_; }
  const Perm& perm(int a) const { return elems_[static_cast<std::size_t>(a)]; }
  /// -1 when p is not in the group.
  int index_of(const Perm& p) const;

  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * elems_.size() + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int pow(int a, Int k) const;
  /// y x y^{-1}.
  int conj(int x, int y) const { return mul(mul(y, x), inv(y)); }
  /// x y x^{-1} y^{-1}.
  int commutator(int x, int y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }
  int elem_order(int a) const { return order_[static_cast<std::size_t>(a)]; }

  /// Subgroup generated by the given elements, sorted.
  std::vector<int> generated(const std::vector<int>& gens) const;
  bool generates(int a, int b) const;

  const std::vector<int>& derived() const { return derived_; }
  bool in_derived(int a) const { return in_derived_[static_cast<std::size_t>(a)]; }
  bool is_abelian() const { return derived_.size() == 1; }
  bool is_metabelian() const { return metabelian_; }

  Int exponent() const { return exponent_; }
  /// Exponent of G^ab = G/G'.
  Int ab_exponent() const { return ab_exponent_; }
  /// Exponent of G'.
  Int derived_exponent() const { return derived_exponent_; }
  /// Order of a G' in G^ab.
  int ab_order(int a) const;
  /// |G^ab|.
  int ab_size() const { return order() / static_cast<int>(derived_.size()); }

  int class_index(int a) const { return class_of_[static_cast<std::size_t>(a)]; }
  /// Smallest element of each conjugacy class, ascending.
  const std::vector<int>& class_reps() const { return class_reps_; }
  int class_size(int a) const;
  std::vector<int> center() const;

 private:
  std::string name_;
  int degree_;
  std::vector<Perm> elems_;
  std::vector<int> table_;
  std::vector<int> inv_;
  std::vector<int> order_;
  int gen1_ = 0;
  int gen2_ = 0;
  std::vector<int> derived_;
  std::vector<bool> in_derived_;
  bool metabelian_ = false;
  Int exponent_ = 1;
  Int ab_exponent_ = 1;
  Int derived_exponent_ = 1;
  std::vector<int> class_of_;
  std::vector<int> class_reps_;
  std::vector<int> class_sizes_;
};

/// An endomorphism as the image of every element.
using GroupMap = std::vector<int>;

/// The homomorphism sending (a, b) to (h1, h2), if one exists. Requires
/// <a, b> = G. Walks the graph subgroup <(a,h1), (b,h2)> of G x G and fails
/// as soon as some x acquires two images.
std::optional<GroupMap> hom_extends(const FinGroup& g, int a, int b, int h1, int h2);

/// Relation check against the multiplication table: every product is
/// respected. Independent of hom_extends; quadratic in |G|.
bool is_homomorphism(const FinGroup& g, const GroupMap& f);

struct Automorphism {
  int h1;  // image of gen1
  int h2;  // image of gen2
  GroupMap map;
};

/// All automorphisms, sorted by (h1, h2); the identity comes first.
/// Throws BudgetExceeded for |G| > max_order.
std::vector<Automorphism> automorphism_group(const FinGroup& g, std::size_t max_order = 2000);
/// One automorphism per coset of Inn(G), the identity first.
std::vector<Automorphism> outer_reps(const FinGroup& g, const std::vector<Automorphism>& aut);

// ---------------------------------------------------------------------------
// Module structure on G'.

/// G' as a module over R(n, m) with n = exp(G'), m = exp(G^ab) (each at
/// least 2), for a chosen generating pair (g1, g2).
class ModuleCtx {
 public:
  /// Throws std::invalid_argument unless G is metabelian and (g1, g2)
  /// generates G.
  ModuleCtx(const FinGroup& group, int g1, int g2);
  explicit ModuleCtx(const FinGroup& group) : ModuleCtx(group, group.gen1(), group.gen2()) {}

  const FinGroup& group() const { return *group_; }
  const RingCtx& ring() const { return ring_; }
  int g1() const { return g1_; }
  int g2() const { return g2_; }
  /// c = [g1, g2].
  int c() const { return c_; }

  /// g1^i g2^j.
  int monomial_lift(int i, int j) const;
  /// prod_{i,j} (g1^i g2^j) w^{r_ij} (g1^i g2^j)^{-1}. Throws
  /// std::invalid_argument when w is not in G'.
  int evaluate(const RingElem& r, int w) const;

  /// I = {r : evaluate(r, c) = 1}, a Howell basis over Z/n.
  const HowellForm& kernel_ideal() const { return ideal_; }
  bool in_ideal(const RingElem& r) const { return ideal_.contains(r.coeffs()); }
  RingElem reduce(const RingElem& r) const { return RingElem(ring_, ideal_.reduce(r.coeffs())); }

  /// s with evaluate(s, c) = w, or nullopt if w is not in R.c.
  std::optional<RingElem> solve(int w) const;

 private:
  const FinGroup* group_;
  int g1_, g2_, c_;
  RingCtx ring_;
  std::vector<int> lift_;  // g1^i g2^j, index i*m + j
  // Coordinates of G' over Z/n relative to a generating list, with the
  // relation lattice among those generators.
  std::vector<int> basis_;
  std::vector<ZVec> coord_;       // per element of G (only G' entries are set)
  std::vector<ZVec> relations_;
  HowellForm ideal_;
  HowellForm solver_;             // rows: coord(a^k c), then relations; tracked
};

/// prod_{i,j} (h1^i h2^j) w^{r_ij} (h1^i h2^j)^{-1} for an arbitrary pair;
/// r lives in any R(n, m) with exp(G') | n and exp(G^ab) | m. Requires G
/// metabelian and w in G'.
int module_evaluate(const FinGroup& g, int h1, int h2, const RingElem& r, int w);

/// R(max(2, exp G'), max(2, exp G^ab)).
RingCtx module_ring(const FinGroup& g);

/// h_i = evaluate(r_i, c) g_i, extended to an endomorphism of G. Returns
/// nullopt if the images do not extend (never expected).
std::optional<GroupMap> ia_descend(const ModuleCtx& mc, const IAEndo& r);

struct InertiaReport {
  bool holds;
  int d1;  // order of g1 in G^ab
  int d2;
  RingElem s1;  // g1^{d1} = c^{s1}
  RingElem s2;  // g2^{d2} = [g2, g1]^{s2}
};

/// 1 + a1 + ... + a1^{d1-1} = s1 (1 - a2) mod I, and the same with the roles
/// of the generators exchanged. Throws InvariantViolation when some g_i^{d_i}
/// is not in R.c.
InertiaReport inertia_relation_check(const ModuleCtx& mc);

/// A generating pair (h1, h2), Nielsen-equivalent or not, for which
/// |G^ab| = ord(h1 G') ord(h2 G'), so that the kernel of Z^2 -> G^ab is
/// spanned by (d1, 0) and (0, d2). Pairs are tried in index order.
std::optional<std::pair<int, int>> two_generator_shape(const FinGroup& g);

// ---------------------------------------------------------------------------
// Catalog.

struct CatalogEntry {
  std::string name;
  int degree;
  std::string gen1;  // cycle notation
  std::string gen2;
};

/// S3, D4, D5, D6, Q8, Heisenberg-27, C7:C3, Z{N}xZ{N} for N = 2..8, S4,
/// and cyclic groups Z{N} for N = 2..8.
const std::vector<CatalogEntry>& builtin_catalog();
std::optional<CatalogEntry> find_catalog_entry(const std::string& name);
FinGroup make_group(const CatalogEntry& e);

}  // namespace metab
