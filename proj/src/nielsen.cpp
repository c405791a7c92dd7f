#include "metab/nielsen.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "metab/congruence.hpp"
#include "metab/errors.hpp"
#include "metab/parallel.hpp"

namespace metab {

std::string to_string(Ambient a) { return a == Ambient::SL2 ? "SL2" : "GL2"; }

GenPair canonical_pair(const FinGroup& g, GenPair p) {
  GenPair best = p;
  for (int y = 1; y < g.order(); ++y) best = std::min(best, GenPair{g.conj(p.first, y), g.conj(p.second, y)});
  return best;
}

RingElem braid_twist_coefficient(const RingCtx& ring, Int u) {
  if (gcd(mod(u, ring.n()), ring.n()) != 1 || gcd(mod(u, ring.m()), ring.m()) != 1)
    throw std::invalid_argument("twist exponent must be prime to n and m");
  const Int k = mod(u, ring.n() * ring.m());
  RingElem lhs = ring.monomial(0, 1).pow(static_cast<std::uint64_t>(k)) - ring.one();
  RingElem rhs = geometric_sum(ring, {0, 1}, static_cast<std::uint64_t>(k)) - ring.one().scaled(k);
  HowellForm h(ring.n(), static_cast<std::size_t>(ring.dim()), multiplication_rows(lhs), true);
  auto sol = h.solve(rhs.coeffs());
  if (!sol) throw InvariantViolation("braid-like twist coefficient does not exist");
  return RingElem(ring, ZVec(sol->begin(), sol->begin() + ring.dim()));
}

GenPair plain_twist(const FinGroup& g, GenPair p, Int u) { return {p.first, g.pow(p.second, u)}; }

GenPair braid_twist(const FinGroup& g, GenPair p, const RingElem& s, Int u) {
  int c = g.commutator(p.first, p.second);
  return {g.mul(module_evaluate(g, p.first, p.second, s, c), p.first), g.pow(p.second, u)};
}

GenPair apply_move(const FinGroup& g, Move mv, GenPair p) {
  switch (mv.kind) {
    case Move::Kind::S: return {p.second, g.inv(p.first)};
    case Move::Kind::T: return {g.mul(p.second, p.first), p.second};
    case Move::Kind::U:
      if (!g.is_metabelian() || g.is_abelian()) return plain_twist(g, p, mv.u);
      return braid_twist(g, p, braid_twist_coefficient(module_ring(g), mv.u), mv.u);
  }
  return p;
}

std::vector<GenPair> epi_classes(const FinGroup& g, std::size_t max_order) {
  if (static_cast<std::size_t>(g.order()) > max_order)
    throw BudgetExceeded("epi_classes limited to groups of order " + std::to_string(max_order));
  std::vector<GenPair> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (canonical_pair(g, {a, b}) == GenPair{a, b} && g.generates(a, b)) out.push_back({a, b});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t pair_key(const FinGroup& g, GenPair p) {
  return static_cast<std::uint64_t>(p.first) * static_cast<std::uint64_t>(g.order()) +
         static_cast<std::uint64_t>(p.second);
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

std::vector<Int> twist_units(Int e) { return e == 1 ? std::vector<Int>{1} : units_mod(e); }

}  // namespace

void ActionTable::invert_moves() {
  perm_s_inv_ = perm_inverse(perm_s_);
  perm_t_inv_ = perm_inverse(perm_t_);
}

void ActionTable::index_classes() {
  index_.clear();
  for (std::size_t i = 0; i < classes_.size(); ++i) index_[pair_key(*group_, classes_[i])] = static_cast<int>(i);
}

ActionTable::ActionTable(const FinGroup& g, Int e, std::size_t max_order)
    : group_(&g), e_(e == 0 ? g.exponent() : e) {
  if (e_ < 1 || e_ % g.exponent() != 0) throw std::invalid_argument("level must be a positive multiple of exp(G)");
  classes_ = epi_classes(g, max_order);
  index_classes();
  units_ = twist_units(e_);
  braid_like_ = g.is_metabelian() && !g.is_abelian();
  std::vector<RingElem> coeffs;
  if (braid_like_) {
    RingCtx ring = module_ring(g);
    for (Int u : units_) coeffs.push_back(braid_twist_coefficient(ring, u));
  }
  const std::size_t n = classes_.size();
  perm_s_.assign(n, -1);
  perm_t_.assign(n, -1);
  perm_u_.assign(units_.size(), std::vector<int>(n, -1));
  parallel_for(n, [&](std::size_t i) {
    perm_s_[i] = find(apply_move(g, Move::s(), classes_[i]));
    perm_t_[i] = find(apply_move(g, Move::t(), classes_[i]));
    for (std::size_t k = 0; k < units_.size(); ++k)
      perm_u_[k][i] = find(braid_like_ ? braid_twist(g, classes_[i], coeffs[k], units_[k])
                                       : plain_twist(g, classes_[i], units_[k]));
  });
  bool ok = is_permutation(perm_s_) && is_permutation(perm_t_);
  for (const auto& p : perm_u_) ok = ok && is_permutation(p);
  if (!ok) throw InvariantViolation("Nielsen moves do not permute the classes");
  invert_moves();
}

int ActionTable::find(GenPair p) const {
  auto it = index_.find(pair_key(*group_, canonical_pair(*group_, p)));
  return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& ActionTable::perm_u(Int u) const {
  Int r = mod(u, e_);
  if (e_ == 1) return perm_u_.front();
  auto it = std::lower_bound(units_.begin(), units_.end(), r);
  if (it == units_.end() || *it != r) throw std::invalid_argument("twist exponent is not a unit mod the level");
  return perm_u_[static_cast<std::size_t>(it - units_.begin())];
}

int ActionTable::act(Move mv, int cls) const {
  const auto c = static_cast<std::size_t>(cls);
  switch (mv.kind) {
    case Move::Kind::S: return perm_s_[c];
    case Move::Kind::T: return perm_t_[c];
    case Move::Kind::U: return perm_u(mv.u)[c];
  }
  return cls;
}

std::vector<int> ActionTable::word_perm(const SL2Word& w) const {
  std::vector<int> p(classes_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = act_word(w, static_cast<int>(i));
  return p;
}

int ActionTable::act_word(const SL2Word& w, int cls) const {
  for (Letter l : w.letters) {
    const auto& q = l == Letter::S ? perm_s_ : l == Letter::SInv ? perm_s_inv_ : l == Letter::T ? perm_t_ : perm_t_inv_;
    cls = q[static_cast<std::size_t>(cls)];
  }
  return cls;
}

nlohmann::json ActionTable::to_json() const {
  nlohmann::json j;
  j["group"] = group_->name();
  j["order"] = group_->order();
  j["gens"] = {to_cycles(group_->perm(group_->gen1())), to_cycles(group_->perm(group_->gen2()))};
  j["level"] = e_;
  auto cls = nlohmann::json::array();
  for (auto [a, b] : classes_) cls.push_back({a, b});
  j["classes"] = cls;
  j["S"] = perm_s_;
  j["T"] = perm_t_;
  j["units"] = units_;
  j["U"] = perm_u_;
  return j;
}

ActionTable ActionTable::from_json(const FinGroup& g, const nlohmann::json& j) {
  auto fail = [](const std::string& what) { throw std::runtime_error("action table: " + what); };
  try {
    if (j.at("group").get<std::string>() != g.name() || j.at("order").get<int>() != g.order()) fail("group mismatch");
    auto gens = j.at("gens").get<std::vector<std::string>>();
    if (gens.size() != 2 || gens[0] != to_cycles(g.perm(g.gen1())) || gens[1] != to_cycles(g.perm(g.gen2())))
      fail("generator mismatch");
    ActionTable t;
    t.group_ = &g;
    t.e_ = j.at("level").get<Int>();
    if (t.e_ < 1 || t.e_ % g.exponent() != 0) fail("bad level");
    for (const auto& p : j.at("classes")) t.classes_.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
    if (!std::is_sorted(t.classes_.begin(), t.classes_.end())) fail("classes not sorted");
    for (auto [a, b] : t.classes_) {
      if (a < 0 || b < 0 || a >= g.order() || b >= g.order()) fail("element out of range");
      if (canonical_pair(g, {a, b}) != GenPair{a, b} || !g.generates(a, b)) fail("class is not canonical");
    }
    t.index_classes();
    t.perm_s_ = j.at("S").get<std::vector<int>>();
    t.perm_t_ = j.at("T").get<std::vector<int>>();
    t.units_ = j.at("units").get<std::vector<Int>>();
    t.perm_u_ = j.at("U").get<std::vector<std::vector<int>>>();
    if (t.units_ != twist_units(t.e_) || t.perm_u_.size() != t.units_.size()) fail("twist data mismatch");
    t.braid_like_ = g.is_metabelian() && !g.is_abelian();
    const std::size_t n = t.classes_.size();
    auto check = [&](const std::vector<int>& p, auto&& move) {
      if (p.size() != n || !is_permutation(p)) fail("bad permutation");
      for (std::size_t i = 0; i < n; ++i)
        if (p[i] != t.find(move(t.classes_[i]))) fail("permutation disagrees with the moves");
    };
    check(t.perm_s_, [&](GenPair p) { return apply_move(g, Move::s(), p); });
    check(t.perm_t_, [&](GenPair p) { return apply_move(g, Move::t(), p); });
    std::optional<RingCtx> ring;
    if (t.braid_like_) ring.emplace(module_ring(g));
    for (std::size_t k = 0; k < t.units_.size(); ++k) {
      Int u = t.units_[k];
      if (!ring) {
        check(t.perm_u_[k], [&](GenPair p) { return plain_twist(g, p, u); });
        continue;
      }
      RingElem s = braid_twist_coefficient(*ring, u);
      check(t.perm_u_[k], [&](GenPair p) { return braid_twist(g, p, s, u); });
    }
    t.invert_moves();
    return t;
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  return {};
}

// ---------------------------------------------------------------------------

std::vector<int> perm_then(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<std::size_t>(p[i])];
  return r;
}

std::vector<int> perm_power(const std::vector<int>& p, int k) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = static_cast<int>(i);
  for (int i = 0; i < k; ++i) r = perm_then(r, p);
  return r;
}

std::vector<int> perm_inverse(const std::vector<int>& p) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

bool is_identity(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

bool relation_check(const ActionTable& t) {
  using L = Letter;
  auto s2 = t.word_perm({{L::S, L::S}});
  return is_identity(perm_power(t.perm_s(), 4)) && s2 == perm_power(t.word_perm({{L::S, L::TInv}}), 3) &&
         is_identity(perm_power(t.word_perm({{L::S, L::T}}), 3));
}

bool commutator_class_invariant(const ActionTable& t) {
  const auto& g = t.group();
  auto k = [&](int cls) {
    auto [a, b] = t.classes()[static_cast<std::size_t>(cls)];
    return g.class_index(g.commutator(a, b));
  };
  for (int c = 0; c < t.size(); ++c)
    if (k(c) != k(t.act(Move::s(), c)) || k(c) != k(t.act(Move::t(), c))) return false;
  return true;
}

bool convention_self_test() {
  FinGroup g = make_group(*find_catalog_entry("Z3xZ3"));
  ActionTable t(g);
  // Coordinates of x = g1^i g2^j.
  std::vector<std::pair<Int, Int>> coord(static_cast<std::size_t>(g.order()));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) coord[static_cast<std::size_t>(g.mul(g.pow(g.gen1(), i), g.pow(g.gen2(), j)))] = {i, j};
  auto as_matrix = [&](GenPair p) {
    auto [a, c] = coord[static_cast<std::size_t>(p.first)];
    auto [b, d] = coord[static_cast<std::size_t>(p.second)];
    return Mat2{a, b, c, d};
  };
  for (int cls = 0; cls < t.size(); ++cls) {
    Mat2 p = as_matrix(t.classes()[static_cast<std::size_t>(cls)]);
    for (auto [mv, m] : {std::pair{Move::s(), mat_S()}, {Move::t(), mat_T()}, {Move::twist(2), mat_U(2)}}) {
      Mat2 moved = as_matrix(t.classes()[static_cast<std::size_t>(t.act(mv, cls))]);
      if (moved != mat_mul_mod(p, m, 3)) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> orbits(const ActionTable& t, Ambient ambient) {
  std::vector<const std::vector<int>*> gens{&t.perm_s(), &t.perm_t()};
  if (ambient == Ambient::GL2)
    for (Int u : t.units()) gens.push_back(&t.perm_u(u));
  std::vector<std::vector<int>> inverses;
  for (const auto* p : gens) inverses.push_back(perm_inverse(*p));
  std::vector<bool> seen(static_cast<std::size_t>(t.size()), false);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < t.size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> orbit{start};
    seen[static_cast<std::size_t>(start)] = true;
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      const auto x = static_cast<std::size_t>(orbit[q]);
      auto visit = [&](int y) {
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          orbit.push_back(y);
        }
      };
      for (const auto* p : gens) visit((*p)[x]);
      for (const auto& p : inverses) visit(p[x]);
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<int> orbit_index(const std::vector<std::vector<int>>& orbs, int classes) {
  std::vector<int> idx(static_cast<std::size_t>(classes), -1);
  for (std::size_t o = 0; o < orbs.size(); ++o)
    for (int c : orbs[o]) idx[static_cast<std::size_t>(c)] = static_cast<int>(o);
  return idx;
}

// ---------------------------------------------------------------------------

bool MatrixSubgroup::contains(const Mat2& m) const {
  return std::binary_search(elements.begin(), elements.end(), mat_mod(m, e));
}

namespace {

std::uint64_t ambient_order(Int e, Ambient a) { return a == Ambient::SL2 ? sl2_order(e) : gl2_order(e); }

std::vector<Mat2> closure(const std::vector<Mat2>& gens, Int e) {
  std::set<Mat2> seen{mat_mod(Mat2{}, e)};
  std::vector<Mat2> queue(seen.begin(), seen.end());
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& g : gens) {
      Mat2 y = mat_mul_mod(queue[q], g, e);
      if (seen.insert(y).second) queue.push_back(y);
    }
  return {seen.begin(), seen.end()};
}

// A unit mod `level` congruent to u mod e.
Int lift_unit(Int u, Int e, Int level) {
  for (Int x = u;; x += e)
    if (gcd(mod(x, level), level) == 1 || level == 1) return x;
}

}  // namespace

MatrixSubgroup generated_subgroup(const std::vector<Mat2>& gens, Int e, Ambient ambient) {
  MatrixSubgroup h;
  h.e = e;
  h.ambient = ambient;
  for (const auto& g : gens) h.generators.push_back(mat_mod(g, e));
  h.elements = closure(h.generators, e);
  h.ambient_order = ambient_order(e, ambient);
  return h;
}

MatrixSubgroup reduce_level(const MatrixSubgroup& h, Int e2) {
  if (e2 < 1 || h.e % e2 != 0) throw std::invalid_argument("reduce_level: level must divide e");
  MatrixSubgroup r;
  r.e = e2;
  r.ambient = h.ambient;
  std::set<Mat2> image;
  for (const auto& x : h.elements) image.insert(mat_mod(x, e2));
  r.elements.assign(image.begin(), image.end());
  for (const auto& g : h.generators) r.generators.push_back(mat_mod(g, e2));
  r.ambient_order = ambient_order(e2, h.ambient);
  return r;
}

MatrixSubgroup stabilizer_mod(const ActionTable& t, int cls, Int e, Ambient ambient, const LevelCertificate& cert) {
  if (!cert.verdict || cert.e != e || cert.group != t.group().name())
    throw std::invalid_argument("stabilizer_mod: no certificate for level " + std::to_string(e));
  std::vector<std::pair<Mat2, Move>> gens{{mat_S(), Move::s()}, {mat_T(), Move::t()}};
  if (ambient == Ambient::GL2)
    for (Int u : units_mod(e))
      if (u != 1 && e > 1) gens.push_back({mat_U(u), Move::twist(lift_unit(u, e, t.level()))});
  std::map<Mat2, int> where{{mat_mod(Mat2{}, e), cls}};
  std::vector<Mat2> queue{mat_mod(Mat2{}, e)};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int c = where[queue[q]];
    for (const auto& [m, mv] : gens) {
      Mat2 y = mat_mul_mod(queue[q], m, e);
      int cy = t.act(mv, c);
      auto [it, fresh] = where.emplace(y, cy);
      if (fresh) queue.push_back(y);
      else if (it->second != cy) throw InvariantViolation("action does not factor through level " + std::to_string(e));
    }
  }
  const std::uint64_t total = ambient_order(e, ambient);
  if (where.size() != total) throw InvariantViolation("ambient enumeration has the wrong order");
  MatrixSubgroup h;
  h.e = e;
  h.ambient = ambient;
  h.ambient_order = total;
  std::set<int> orbit;
  for (const auto& [m, c] : where) {
    orbit.insert(c);
    if (c == cls) h.elements.push_back(m);
  }
  if (orbit.size() * h.elements.size() != total) throw InvariantViolation("orbit-stabilizer count mismatch");
  std::vector<Mat2> span{mat_mod(Mat2{}, e)};
  for (const auto& m : h.elements) {
    if (std::binary_search(span.begin(), span.end(), m)) continue;
    h.generators.push_back(m);
    span = closure(h.generators, e);
  }
  return h;
}

// ---------------------------------------------------------------------------

OutAction out_action_on_orbits(const ActionTable& t, Ambient ambient) {
  const auto& g = t.group();
  auto orbs = orbits(t, ambient);
  auto idx = orbit_index(orbs, t.size());
  OutAction out;
  out.orbit_count = static_cast<int>(orbs.size());
  for (const auto& a : outer_reps(g, automorphism_group(g))) {
    std::vector<int> perm;
    for (const auto& o : orbs) {
      auto [h1, h2] = t.classes()[static_cast<std::size_t>(o.front())];
      int c = t.find({a.map[static_cast<std::size_t>(h1)], a.map[static_cast<std::size_t>(h2)]});
      if (c < 0) throw InvariantViolation("automorphism image of a generating pair does not generate");
      perm.push_back(idx[static_cast<std::size_t>(c)]);
    }
    out.perms.push_back(std::move(perm));
  }
  std::vector<bool> reached(orbs.size(), false);
  std::vector<int> queue;
  if (!orbs.empty()) {
    reached[0] = true;
    queue.push_back(0);
  }
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& p : out.perms) {
      int y = p[static_cast<std::size_t>(queue[q])];
      if (!reached[static_cast<std::size_t>(y)]) {
        reached[static_cast<std::size_t>(y)] = true;
        queue.push_back(y);
      }
    }
  out.transitive = queue.size() == orbs.size();
  return out;
}

std::vector<std::vector<int>> commutator_classes(const ActionTable& t, const std::vector<std::vector<int>>& orbs) {
  const auto& g = t.group();
  std::vector<std::vector<int>> out;
  for (const auto& o : orbs) {
    std::set<int> ks;
    for (int c : o) {
      auto [a, b] = t.classes()[static_cast<std::size_t>(c)];
      ks.insert(g.class_index(g.commutator(a, b)));
    }
    out.emplace_back(ks.begin(), ks.end());
  }
  return out;
}

nlohmann::json to_json(const MatrixSubgroup& h) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& m : h.generators) gens.push_back({m.a, m.b, m.c, m.d});
  return {{"e", h.e}, {"ambient", to_string(h.ambient)}, {"order", h.order()}, {"index", h.index()},
          {"generators", gens}};
}

nlohmann::json orbit_json(const ActionTable& t, const std::vector<std::vector<int>>& orbs,
                          const std::vector<MatrixSubgroup>& stabilizers) {
  const auto& g = t.group();
  nlohmann::json classes = nlohmann::json::array();
  for (auto [a, b] : t.classes()) classes.push_back({to_cycles(g.perm(a)), to_cycles(g.perm(b))});
  nlohmann::json stabs = nlohmann::json::array();
  for (const auto& h : stabilizers) stabs.push_back(to_json(h));
  return {{"group", g.name()},
          {"e", t.level()},
          {"classes", classes},
          {"orbits", orbs},
          {"stabilizers", stabs},
          {"commutator_classes", commutator_classes(t, orbs)}};
}

}  // namespace metab
