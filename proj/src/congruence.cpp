#include "metab/congruence.hpp"

#include <algorithm>
#include <stdexcept>

#include "metab/errors.hpp"
#include "metab/parallel.hpp"

namespace metab {

namespace {

std::uint64_t mat_key(const Mat2& m, Int e) {
  auto u = [](Int x) { return static_cast<std::uint64_t>(x); };
  const auto E = u(e);
  return ((u(m.a) * E + u(m.b)) * E + u(m.c)) * E + u(m.d);
}

constexpr Letter kLetters[2] = {Letter::S, Letter::T};

}  // namespace

SL2Cosets::SL2Cosets(Int e, std::uint64_t max_order) : e_(e) {
  if (e < 1) throw std::invalid_argument("level must be positive");
  if (sl2_order(e) > max_order) throw BudgetExceeded("|SL2(Z/" + std::to_string(e) + ")| exceeds budget");
  Mat2 id = mat_mod(Mat2{}, e);
  elements_.push_back(id);
  parent_.push_back(-1);
  parent_letter_.push_back(-1);
  index_[mat_key(id, e)] = 0;
  for (std::size_t q = 0; q < elements_.size(); ++q)
    for (int l = 0; l < 2; ++l) {
      Mat2 y = mat_mul_mod(elements_[q], letter_matrix(kLetters[l]), e);
      auto [it, fresh] = index_.emplace(mat_key(y, e), static_cast<int>(elements_.size()));
      if (fresh) {
        elements_.push_back(y);
        parent_.push_back(static_cast<int>(q));
        parent_letter_.push_back(l);
      }
      next_.push_back(it->second);
    }
  schreier_index_.assign(next_.size(), -1);
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (int l = 0; l < 2; ++l) {
      int j = next_[2 * i + static_cast<std::size_t>(l)];
      if (parent_[static_cast<std::size_t>(j)] == static_cast<int>(i) && parent_letter_[static_cast<std::size_t>(j)] == l)
        continue;
      schreier_index_[2 * i + static_cast<std::size_t>(l)] = static_cast<int>(schreier_.size());
      schreier_.push_back(free_reduce(transversal(static_cast<int>(i)) * SL2Word{{kLetters[l]}} *
                                      transversal(j).inverse()));
    }
}

int SL2Cosets::index_of(const Mat2& m) const {
  auto it = index_.find(mat_key(mat_mod(m, e_), e_));
  return it == index_.end() ? -1 : it->second;
}

SL2Word SL2Cosets::transversal(int i) const {
  SL2Word w;
  for (int x = i; parent_[static_cast<std::size_t>(x)] >= 0; x = parent_[static_cast<std::size_t>(x)])
    w.letters.push_back(kLetters[parent_letter_[static_cast<std::size_t>(x)]]);
  std::reverse(w.letters.begin(), w.letters.end());
  return w;
}

std::pair<std::vector<std::pair<int, int>>, int> SL2Cosets::rewrite(const SL2Word& w) const {
  std::vector<std::pair<int, int>> factors;
  int s = 0;
  for (Letter l : w.letters) {
    bool forward = l == Letter::S || l == Letter::T;
    int letter = (l == Letter::S || l == Letter::SInv) ? 0 : 1;
    if (forward) {
      int k = schreier_index_[static_cast<std::size_t>(2 * s + letter)];
      if (k >= 0) factors.push_back({k, 1});
      s = next(s, letter);
    } else {
      int prev = index_of(mat_mul(elements_[static_cast<std::size_t>(s)], letter_matrix(l)));
      int k = schreier_index_[static_cast<std::size_t>(2 * prev + letter)];
      if (k >= 0) factors.push_back({k, -1});
      s = prev;
    }
  }
  return {factors, s};
}

std::vector<SL2Word> gamma_schreier(Int e) { return SL2Cosets(e).schreier(); }

bool verify_action_level(const ActionTable& t, Int e) { return verify_action_level(t, SL2Cosets(e)); }

bool verify_action_level(const ActionTable& t, const SL2Cosets& cosets) {
  // The generator t(i) g t(ig)^-1 acts trivially iff the action of t(i)
  // followed by g equals the action of t(ig). Transversal actions are built
  // along the BFS tree.
  const std::size_t n = cosets.size();
  const auto classes = static_cast<std::size_t>(t.size());
  std::vector<std::vector<int>> act(n);
  act[0].resize(classes);
  for (std::size_t c = 0; c < classes; ++c) act[0][c] = static_cast<int>(c);
  const std::vector<int>* moves[2] = {&t.perm_s(), &t.perm_t()};
  for (std::size_t i = 0; i < n; ++i)
    for (int l = 0; l < 2; ++l)
      if (cosets.tree_edge(static_cast<int>(i), l))
        act[static_cast<std::size_t>(cosets.next(static_cast<int>(i), l))] = perm_then(act[i], *moves[l]);
  std::vector<char> ok(n, 1);
  parallel_for(n, [&](std::size_t i) {
    for (int l = 0; l < 2; ++l) {
      if (cosets.tree_edge(static_cast<int>(i), l)) continue;
      if (perm_then(act[i], *moves[l]) != act[static_cast<std::size_t>(cosets.next(static_cast<int>(i), l))]) ok[i] = 0;
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char x) { return x != 0; });
}

std::array<Mat2, 3> one_plus_eX(Int e) { return {Mat2{1, e, 0, 1}, Mat2{1, 0, e, 1}, Mat2{1 + e, -e, e, 1 - e}}; }

bool one_plus_eX_check(const ActionTable& t, Int e) {
  for (const auto& m : one_plus_eX(e))
    if (!is_identity(t.word_perm(word_from_matrix(m)))) return false;
  return true;
}

Int wohlfahrt_level(const ActionTable& t, int cls) {
  std::vector<int> orbit{cls};
  std::vector<bool> seen(static_cast<std::size_t>(t.size()), false);
  seen[static_cast<std::size_t>(cls)] = true;
  const auto s_inv = perm_inverse(t.perm_s()), t_inv = perm_inverse(t.perm_t());
  for (std::size_t q = 0; q < orbit.size(); ++q)
    for (const auto* p : {&t.perm_s(), &t.perm_t(), &s_inv, &t_inv}) {
      int y = (*p)[static_cast<std::size_t>(orbit[q])];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        orbit.push_back(y);
      }
    }
  Int level = 1;
  std::vector<bool> done(static_cast<std::size_t>(t.size()), false);
  for (int c : orbit) {
    if (done[static_cast<std::size_t>(c)]) continue;
    Int len = 0;
    for (int x = c; !done[static_cast<std::size_t>(x)]; x = t.perm_t()[static_cast<std::size_t>(x)]) {
      done[static_cast<std::size_t>(x)] = true;
      ++len;
    }
    level = lcm(level, len);
  }
  return level;
}

LevelCertificate certify(const ActionTable& t, Int e) {
  SL2Cosets cosets(e);
  LevelCertificate c;
  c.group = t.group().name();
  c.e = e;
  c.schreier_word_count = cosets.schreier().size();
  c.verdict = verify_action_level(t, cosets);
  c.gamma_e_contained = one_plus_eX_check(t, e);
  for (int cls = 0; cls < t.size(); ++cls) c.wohlfahrt = lcm(c.wohlfahrt, wohlfahrt_level(t, cls));
  if (c.verdict && !c.gamma_e_contained)
    throw InvariantViolation("level-e factorization holds but a 1 + eX matrix acts nontrivially");
  return c;
}

nlohmann::json to_json(const LevelCertificate& c) {
  return {{"group", c.group},
          {"e", c.e},
          {"schreier_word_count", c.schreier_word_count},
          {"verdict", c.verdict},
          {"wohlfahrt", c.wohlfahrt},
          {"gamma_e_contained", c.gamma_e_contained}};
}

}  // namespace metab
