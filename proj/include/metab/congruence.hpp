#pragma once

// Level certification for the SL2(Z)-action on Epi^ext(F2, G): Schreier
// generators of Gamma(e), the 1 + eX test matrices and the Wohlfahrt level.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "metab/nielsen.hpp"
#include "metab/sl2.hpp"

namespace metab {

/// SL2(Z/e) enumerated breadth-first from I under right multiplication by
/// S then T, with the BFS tree as transversal of Gamma(e) in SL2(Z).
class SL2Cosets {
 public:
  static constexpr std::uint64_t kDefaultMaxOrder = 500000;

  /// Throws BudgetExceeded when |SL2(Z/e)| > max_order, std::invalid_argument
  /// for e < 1.
  explicit SL2Cosets(Int e, std::uint64_t max_order = kDefaultMaxOrder);

  Int level() const { return e_; }
  std::size_t size() const { return elements_.size(); }
  /// BFS order; elements()[0] is the identity mod e.
  const std::vector<Mat2>& elements() const { return elements_; }
  /// -1 when m (reduced mod e) is not in SL2(Z/e).
  int index_of(const Mat2& m) const;
  /// Word in S, T (positive letters only) evaluating to elements()[i] mod e.
  SL2Word transversal(int i) const;
  /// State reached from i by the letter (S = 0, T = 1).
  int next(int i, int letter) const { return next_[static_cast<std::size_t>(2 * i + letter)]; }
  bool tree_edge(int i, int letter) const { return schreier_index_[static_cast<std::size_t>(2 * i + letter)] < 0; }

  /// t(i) g t(i g)^-1 over the non-tree edges, freely reduced.
  const std::vector<SL2Word>& schreier() const { return schreier_; }
  /// Writes w = (product of Schreier generators) * t(end) and returns the
  /// factors as (index, +1 or -1) with the end state.
  std::pair<std::vector<std::pair<int, int>>, int> rewrite(const SL2Word& w) const;

 private:
  Int e_;
  std::vector<Mat2> elements_;
  std::vector<int> parent_;  // BFS tree: parent state and letter
  std::vector<int> parent_letter_;
  std::vector<int> next_;
  std::vector<int> schreier_index_;
  std::vector<SL2Word> schreier_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Schreier generators of Gamma(e); every word is I mod e.
std::vector<SL2Word> gamma_schreier(Int e);

/// Every Schreier generator of Gamma(e) acts trivially on the classes.
bool verify_action_level(const ActionTable& t, Int e);
bool verify_action_level(const ActionTable& t, const SL2Cosets& cosets);

/// 1 + eX1 = [[1,e],[0,1]], 1 + eX2 = [[1,0],[e,1]], 1 + eX3 = [[1+e,-e],[e,1-e]].
std::array<Mat2, 3> one_plus_eX(Int e);
/// Each of the three matrices acts trivially on the classes.
bool one_plus_eX_check(const ActionTable& t, Int e);

/// lcm of the T-cycle lengths on the SL2-orbit of the class.
Int wohlfahrt_level(const ActionTable& t, int cls);

struct LevelCertificate {
  std::string group;
  Int e = 1;
  std::size_t schreier_word_count = 0;
  bool verdict = false;            // the action factors through SL2(Z/e)
  Int wohlfahrt = 1;               // lcm over all classes
  bool gamma_e_contained = false;  // one_plus_eX_check
};

LevelCertificate certify(const ActionTable& t, Int e);
nlohmann::json to_json(const LevelCertificate& c);

}  // namespace metab
