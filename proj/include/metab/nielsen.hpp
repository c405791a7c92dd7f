#pragma once

// Epi^ext(F2, G): generating pairs modulo simultaneous conjugation, with the
// action of the Nielsen moves
//   S: (h1, h2) -> (h2, h1^-1)
//   T: (h1, h2) -> (h2 h1, h2)
//   U(u): (h1, h2) -> (c^s h1, h2^u),  c = [h1, h2]
// by precomposition. U(u) is the braid-like lift of diag(1, u): s is chosen
// so that its generalized determinant is exactly u. For abelian G (c = 1)
// this is the plain power (h1, h2^u), which is also the fallback for
// non-metabelian G. Words act letter by letter from the left, so the
// abelianized action is right multiplication by the matrices of sl2.hpp.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "metab/fingrp.hpp"
#include "metab/sl2.hpp"

namespace metab {

struct LevelCertificate;

enum class Ambient { SL2, GL2 };
std::string to_string(Ambient a);

struct Move {
  enum class Kind { S, T, U } kind;
  Int u = 1;
  static Move s() { return {Kind::S, 1}; }
  static Move t() { return {Kind::T, 1}; }
  static Move twist(Int u) { return {Kind::U, u}; }
};

using GenPair = std::pair<int, int>;

/// s in R(n, m) with s (a2^u - 1) = 1 + a2 + ... + a2^{u-1} - u. Throws
/// std::invalid_argument unless u is prime to n and m.
RingElem braid_twist_coefficient(const RingCtx& ring, Int u);
/// (h1, h2^u).
GenPair plain_twist(const FinGroup& g, GenPair p, Int u);
/// (c^s h1, h2^u) with the module action of the pair itself.
GenPair braid_twist(const FinGroup& g, GenPair p, const RingElem& s, Int u);

/// Lexicographically least (y h1 y^-1, y h2 y^-1) over y in G.
GenPair canonical_pair(const FinGroup& g, GenPair p);
/// The move applied to a pair, not canonicalized.
GenPair apply_move(const FinGroup& g, Move mv, GenPair p);

/// Canonical representatives of all classes of generating pairs, ascending.
/// Throws BudgetExceeded above max_order.
std::vector<GenPair> epi_classes(const FinGroup& g, std::size_t max_order = 1024);

class ActionTable {
 public:
  /// Level e for the twists U(u), u a unit mod e; e = 0 selects exp(G).
  explicit ActionTable(const FinGroup& g, Int e = 0, std::size_t max_order = 1024);
  ActionTable(FinGroup&&, Int = 0, std::size_t = 1024) = delete;

  const FinGroup& group() const { return *group_; }
  Int level() const { return e_; }
  int size() const { return static_cast<int>(classes_.size()); }
  const std::vector<GenPair>& classes() const { return classes_; }
  /// Class of an arbitrary generating pair; -1 if it does not generate.
  int find(GenPair p) const;

  const std::vector<int>& perm_s() const { return perm_s_; }
  const std::vector<int>& perm_t() const { return perm_t_; }
  /// Units mod the level, ascending.
  const std::vector<Int>& units() const { return units_; }
  /// Throws std::invalid_argument unless u is a unit mod the level.
  const std::vector<int>& perm_u(Int u) const;

  int act(Move mv, int cls) const;
  /// Permutation induced by the word, letters applied left to right.
  std::vector<int> word_perm(const SL2Word& w) const;
  int act_word(const SL2Word& w, int cls) const;

  nlohmann::json to_json() const;
  /// Rebuilds a table from to_json output for the same group. Throws
  /// std::runtime_error on any inconsistency.
  static ActionTable from_json(const FinGroup& g, const nlohmann::json& j);

 private:
  ActionTable() = default;
  void index_classes();
  void invert_moves();

  const FinGroup* group_ = nullptr;
  Int e_ = 1;
  std::vector<GenPair> classes_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<int> perm_s_, perm_t_;
  std::vector<int> perm_s_inv_, perm_t_inv_;
  std::vector<Int> units_;
  std::vector<std::vector<int>> perm_u_;
  bool braid_like_ = false;

 public:
  /// Whether perm_u uses a nontrivial braid-like correction (G metabelian,
  /// not abelian).
  bool braid_like_twists() const { return braid_like_; }
};

/// Composition "p then q".
std::vector<int> perm_then(const std::vector<int>& p, const std::vector<int>& q);
std::vector<int> perm_power(const std::vector<int>& p, int k);
std::vector<int> perm_inverse(const std::vector<int>& p);
bool is_identity(const std::vector<int>& p);

/// perm(S)^4 = 1, perm(S)^2 = perm(S T^-1)^3 and perm(S T)^3 = 1.
bool relation_check(const ActionTable& t);
/// The conjugacy class of [h1, h2] is preserved by S and T on every class.
bool commutator_class_invariant(const ActionTable& t);
/// On (Z/3)^2 the pair, read as the matrix with columns h1, h2, moves by
/// right multiplication with the matrix of each letter and twist.
bool convention_self_test();

/// Connected components of the move graph, each ascending, ordered by least
/// member.
std::vector<std::vector<int>> orbits(const ActionTable& t, Ambient ambient);
/// orbit index of every class.
std::vector<int> orbit_index(const std::vector<std::vector<int>>& orbs, int classes);

struct MatrixSubgroup {
  Int e = 1;
  Ambient ambient = Ambient::SL2;
  std::vector<Mat2> elements;    // sorted, reduced mod e
  std::vector<Mat2> generators;  // generate `elements`
  std::uint64_t ambient_order = 1;

  std::uint64_t order() const { return elements.size(); }
  std::uint64_t index() const { return elements.empty() ? 0 : ambient_order / elements.size(); }
  bool contains(const Mat2& m) const;
};

/// Subgroup of the ambient group mod e generated by gens.
MatrixSubgroup generated_subgroup(const std::vector<Mat2>& gens, Int e, Ambient ambient);
/// Image mod a divisor e2 of e.
MatrixSubgroup reduce_level(const MatrixSubgroup& h, Int e2);

/// Stabilizer of the class in SL2(Z/e) or GL2(Z/e). The certificate must
/// vouch for level e on this table. Throws std::invalid_argument when it
/// does not, and InvariantViolation if the action turns out not to factor
/// or orbit-stabilizer fails.
MatrixSubgroup stabilizer_mod(const ActionTable& t, int cls, Int e, Ambient ambient, const LevelCertificate& cert);

struct OutAction {
  std::vector<std::vector<int>> perms;  // one per outer representative, on orbit indices
  int orbit_count = 0;
  bool transitive = false;
};

/// Post-composition by outer automorphism representatives on the orbits of
/// the given ambient.
OutAction out_action_on_orbits(const ActionTable& t, Ambient ambient = Ambient::GL2);

/// For each orbit, the sorted conjugacy-class indices of [h1, h2] over its
/// members.
std::vector<std::vector<int>> commutator_classes(const ActionTable& t, const std::vector<std::vector<int>>& orbs);

/// {group, e, classes, orbits, stabilizers, commutator_classes}.
nlohmann::json orbit_json(const ActionTable& t, const std::vector<std::vector<int>>& orbs,
                          const std::vector<MatrixSubgroup>& stabilizers);
nlohmann::json to_json(const MatrixSubgroup& h);

}  // namespace metab
