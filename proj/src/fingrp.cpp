#include "metab/fingrp.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "metab/errors.hpp"

namespace metab {

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) out[x] = a[static_cast<std::size_t>(b[x])];
  return out;
}

Perm perm_inv(const Perm& a) {
  Perm out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[static_cast<std::size_t>(a[x])] = static_cast<int>(x);
  return out;
}

Perm parse_cycles(const std::string& text, int degree) {
  if (degree <= 0) throw std::invalid_argument("degree must be positive");
  Perm p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip();
      if (i >= text.size()) throw ParseError("unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9') throw ParseError(std::string("unexpected character '") + text[i] + "'", i);
      std::size_t start = i;
      long v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + (text[i] - '0');
        if (v > degree) throw ParseError("point exceeds degree", start);
        ++i;
      }
      if (v < 1) throw ParseError("points are 1-based", start);
      int pt = static_cast<int>(v - 1);
      if (used[static_cast<std::size_t>(pt)]) throw ParseError("point repeated", start);
      used[static_cast<std::size_t>(pt)] = true;
      cycle.push_back(pt);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    skip();
  }
  return p;
}

std::string to_cycles(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::ostringstream os;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x] || p[x] == static_cast<int>(x)) continue;
    os << '(';
    std::size_t y = x;
    bool first = true;
    while (!seen[y]) {
      seen[y] = true;
      if (!first) os << ' ';
      os << y + 1;
      first = false;
      y = static_cast<std::size_t>(p[y]);
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

// ---------------------------------------------------------------------------

FinGroup::FinGroup(std::string name, int degree, Perm g1, Perm g2, std::size_t max_order)
    : name_(std::move(name)), degree_(degree) {
  if (degree <= 0) throw std::invalid_argument("degree must be positive");
  for (const Perm* g : {&g1, &g2}) {
    if (g->size() != static_cast<std::size_t>(degree)) throw std::invalid_argument("generator has wrong degree");
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (int x : *g) {
      if (x < 0 || x >= degree || hit[static_cast<std::size_t>(x)])
        throw std::invalid_argument("generator is not a permutation");
      hit[static_cast<std::size_t>(x)] = true;
    }
  }

  Perm id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm x = std::move(queue.front());
    queue.pop_front();
    for (const Perm* g : {&g1, &g2}) {
      Perm y = perm_mul(x, *g);
      if (seen.insert(y).second) {
        if (seen.size() > max_order)
          throw BudgetExceeded("group order exceeds " + std::to_string(max_order));
        queue.push_back(std::move(y));
      }
    }
  }
  elems_.assign(seen.begin(), seen.end());
  const std::size_t N = elems_.size();

  std::map<Perm, int> index;
  for (std::size_t i = 0; i < N; ++i) index.emplace(elems_[i], static_cast<int>(i));
  table_.resize(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) table_[a * N + b] = index.at(perm_mul(elems_[a], elems_[b]));
  inv_.resize(N);
  order_.resize(N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b)
      if (table_[a * N + b] == 0) inv_[a] = static_cast<int>(b);
    int k = 1;
    for (int x = static_cast<int>(a); x != 0; x = mul(x, static_cast<int>(a))) ++k;
    order_[a] = k;
  }
  gen1_ = index.at(g1);
  gen2_ = index.at(g2);

  // Derived subgroup: generated by all commutators.
  std::vector<int> comms;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) comms.push_back(commutator(static_cast<int>(a), static_cast<int>(b)));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  derived_ = generated(comms);
  in_derived_.assign(N, false);
  for (int d : derived_) in_derived_[static_cast<std::size_t>(d)] = true;
  metabelian_ = true;
  for (int x : derived_)
    for (int y : derived_)
      if (mul(x, y) != mul(y, x)) metabelian_ = false;

  for (std::size_t a = 0; a < N; ++a) exponent_ = lcm(exponent_, order_[a]);
  for (int d : derived_) derived_exponent_ = lcm(derived_exponent_, order_[static_cast<std::size_t>(d)]);
  for (std::size_t a = 0; a < N; ++a) ab_exponent_ = lcm(ab_exponent_, ab_order(static_cast<int>(a)));

  class_of_.assign(N, -1);
  for (std::size_t a = 0; a < N; ++a) {
    if (class_of_[a] >= 0) continue;
    int id_class = static_cast<int>(class_reps_.size());
    class_reps_.push_back(static_cast<int>(a));
    int size = 0;
    for (std::size_t y = 0; y < N; ++y) {
      int c = conj(static_cast<int>(a), static_cast<int>(y));
      if (class_of_[static_cast<std::size_t>(c)] < 0) {
        class_of_[static_cast<std::size_t>(c)] = id_class;
        ++size;
      }
    }
    class_sizes_.push_back(size);
  }
}

FinGroup FinGroup::from_cycles(std::string name, int degree, const std::string& g1, const std::string& g2) {
  return FinGroup(std::move(name), degree, parse_cycles(g1, degree), parse_cycles(g2, degree));
}

int FinGroup::index_of(const Perm& p) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), p);
  if (it == elems_.end() || *it != p) return -1;
  return static_cast<int>(it - elems_.begin());
}

int FinGroup::pow(int a, Int k) const {
  Int o = order_[static_cast<std::size_t>(a)];
  k = mod(k, o);
  int r = 0;
  for (Int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

std::vector<int> FinGroup::generated(const std::vector<int>& gens) const {
  std::vector<bool> seen(elems_.size(), false);
  std::vector<int> out{0};
  seen[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int y = mul(out[i], g);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool FinGroup::generates(int a, int b) const { return generated({a, b}).size() == elems_.size(); }

int FinGroup::ab_order(int a) const {
  int k = 1;
  for (int x = a; !in_derived_[static_cast<std::size_t>(x)]; x = mul(x, a)) ++k;
  return k;
}

int FinGroup::class_size(int a) const { return class_sizes_[static_cast<std::size_t>(class_index(a))]; }

std::vector<int> FinGroup::center() const {
  std::vector<int> out;
  for (int a = 0; a < order(); ++a)
    if (class_size(a) == 1) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------

std::optional<GroupMap> hom_extends(const FinGroup& g, int a, int b, int h1, int h2) {
  GroupMap f(static_cast<std::size_t>(g.order()), -1);
  f[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    int y = f[static_cast<std::size_t>(x)];
    for (auto [s, t] : {std::pair{a, h1}, std::pair{b, h2}}) {
      int x2 = g.mul(x, s), y2 = g.mul(y, t);
      int& slot = f[static_cast<std::size_t>(x2)];
      if (slot < 0) {
        slot = y2;
        queue.push_back(x2);
      } else if (slot != y2) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != f.size()) throw std::invalid_argument("hom_extends: pair does not generate the group");
  return f;
}

bool is_homomorphism(const FinGroup& g, const GroupMap& f) {
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      if (f[static_cast<std::size_t>(g.mul(x, y))] != g.mul(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]))
        return false;
  return true;
}

std::vector<Automorphism> automorphism_group(const FinGroup& g, std::size_t max_order) {
  if (static_cast<std::size_t>(g.order()) > max_order)
    throw BudgetExceeded("automorphism search limited to order " + std::to_string(max_order));
  const int a = g.gen1(), b = g.gen2();
  std::vector<int> c1, c2;
  for (int x = 0; x < g.order(); ++x) {
    if (g.elem_order(x) == g.elem_order(a) && g.class_size(x) == g.class_size(a)) c1.push_back(x);
    if (g.elem_order(x) == g.elem_order(b) && g.class_size(x) == g.class_size(b)) c2.push_back(x);
  }
  std::vector<Automorphism> out;
  for (int h1 : c1)
    for (int h2 : c2) {
      if (!g.generates(h1, h2)) continue;
      if (auto f = hom_extends(g, a, b, h1, h2)) out.push_back({h1, h2, std::move(*f)});
    }
  std::stable_partition(out.begin(), out.end(), [&](const Automorphism& f) { return f.h1 == a && f.h2 == b; });
  return out;
}

std::vector<Automorphism> outer_reps(const FinGroup& g, const std::vector<Automorphism>& aut) {
  std::set<std::pair<int, int>> covered;
  std::vector<Automorphism> reps;
  for (const auto& f : aut) {
    if (covered.count({f.h1, f.h2})) continue;
    reps.push_back(f);
    for (int z = 0; z < g.order(); ++z) covered.insert({g.conj(f.h1, z), g.conj(f.h2, z)});
  }
  return reps;
}

// ---------------------------------------------------------------------------

namespace {

int ring_modulus(const FinGroup& g) { return static_cast<int>(std::max<Int>(2, g.derived_exponent())); }
int ring_exponent(const FinGroup& g) { return static_cast<int>(std::max<Int>(2, g.ab_exponent())); }

}  // namespace

ModuleCtx::ModuleCtx(const FinGroup& group, int g1, int g2)
    : group_(&group),
      g1_(g1),
      g2_(g2),
      c_(group.commutator(g1, g2)),
      ring_(ring_modulus(group), ring_exponent(group)),
      ideal_(2, 0, {}),
      solver_(2, 0, {}) {
  if (!group.is_metabelian()) throw std::invalid_argument(group.name() + " is not metabelian");
  if (!group.generates(g1, g2)) throw std::invalid_argument("pair does not generate " + group.name());
  const int m = ring_.m();
  const Int n = ring_.n();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) lift_.push_back(group.mul(group.pow(g1, i), group.pow(g2, j)));

  // Conjugation by g1^i g2^j on G' depends only on (i, j) mod m.
  for (int w : group.derived()) {
    if (group.conj(w, group.pow(g1, m)) != w || group.conj(w, group.pow(g2, m)) != w)
      throw InvariantViolation("G^ab exponent does not act trivially on G'");
  }

  // Greedy generating list of G', then coordinates along a BFS tree and
  // the cycle relations.
  std::vector<int> span{0};
  for (int w : group.derived()) {
    if (std::binary_search(span.begin(), span.end(), w)) continue;
    basis_.push_back(w);
    span = group.generated(basis_);
  }
  const std::size_t k = basis_.size();
  coord_.assign(static_cast<std::size_t>(group.order()), ZVec());
  coord_[0] = ZVec(k, 0);
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int x = queue[q];
    for (std::size_t s = 0; s < k; ++s) {
      int y = group.mul(x, basis_[s]);
      ZVec cy = coord_[static_cast<std::size_t>(x)];
      cy[s] = mod(cy[s] + 1, n);
      if (coord_[static_cast<std::size_t>(y)].empty()) {
        coord_[static_cast<std::size_t>(y)] = std::move(cy);
        queue.push_back(y);
      } else if (cy != coord_[static_cast<std::size_t>(y)]) {
        ZVec rel(k);
        for (std::size_t t = 0; t < k; ++t) rel[t] = mod(cy[t] - coord_[static_cast<std::size_t>(y)][t], n);
        relations_.push_back(std::move(rel));
      }
    }
  }

  std::vector<ZVec> rows;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rows.push_back(coord_[static_cast<std::size_t>(group.conj(c_, lift_[static_cast<std::size_t>(i * m + j)]))]);
  rows.insert(rows.end(), relations_.begin(), relations_.end());
  solver_ = HowellForm(n, k, rows, true);
  std::vector<ZVec> ideal_rows;
  for (const auto& r : solver_.left_kernel().rows()) ideal_rows.emplace_back(r.begin(), r.begin() + m * m);
  ideal_ = HowellForm(n, static_cast<std::size_t>(m * m), ideal_rows);
}

int ModuleCtx::monomial_lift(int i, int j) const {
  const int m = ring_.m();
  return lift_[static_cast<std::size_t>(mod(i, m) * m + mod(j, m))];
}

int ModuleCtx::evaluate(const RingElem& r, int w) const {
  if (!(r.ctx() == ring_)) throw std::invalid_argument("evaluate: ring mismatch");
  if (!group_->in_derived(w)) throw std::invalid_argument("evaluate: element is not in G'");
  const int m = ring_.m();
  int out = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Int e = r.coeff(i, j);
      if (e == 0) continue;
      out = group_->mul(out, group_->conj(group_->pow(w, e), monomial_lift(i, j)));
    }
  return out;
}

std::optional<RingElem> ModuleCtx::solve(int w) const {
  if (!group_->in_derived(w)) return std::nullopt;
  auto sol = solver_.solve(coord_[static_cast<std::size_t>(w)]);
  if (!sol) return std::nullopt;
  const auto d = static_cast<std::ptrdiff_t>(ring_.dim());
  return reduce(RingElem(ring_, ZVec(sol->begin(), sol->begin() + d)));
}

int module_evaluate(const FinGroup& g, int h1, int h2, const RingElem& r, int w) {
  if (!g.in_derived(w)) throw std::invalid_argument("module_evaluate: element is not in G'");
  const auto& c = r.ctx();
  int out = g.identity();
  int x1 = g.identity();
  for (int i = 0; i < c.m(); ++i, x1 = g.mul(x1, h1)) {
    int x = x1;
    for (int j = 0; j < c.m(); ++j, x = g.mul(x, h2)) {
      Int k = r.coeff(i, j);
      if (k != 0) out = g.mul(out, g.conj(g.pow(w, k), x));
    }
  }
  return out;
}

RingCtx module_ring(const FinGroup& g) { return RingCtx(ring_modulus(g), ring_exponent(g)); }

std::optional<GroupMap> ia_descend(const ModuleCtx& mc, const IAEndo& r) {
  const auto& g = mc.group();
  int h1 = g.mul(mc.evaluate(r.r1, mc.c()), mc.g1());
  int h2 = g.mul(mc.evaluate(r.r2, mc.c()), mc.g2());
  return hom_extends(g, mc.g1(), mc.g2(), h1, h2);
}

InertiaReport inertia_relation_check(const ModuleCtx& mc) {
  const auto& g = mc.group();
  const auto& R = mc.ring();
  int d1 = g.ab_order(mc.g1()), d2 = g.ab_order(mc.g2());
  auto s1 = mc.solve(g.pow(mc.g1(), d1));
  auto t2 = mc.solve(g.pow(mc.g2(), d2));
  if (!s1 || !t2) throw InvariantViolation("g_i^{d_i} is not in R.c");
  // [g2, g1] = c^{-1}, so g2^{d2} = [g2, g1]^{-t2}.
  RingElem s2 = -*t2;
  RingElem lhs1 = geometric_sum(R, {1, 0}, static_cast<std::uint64_t>(d1)) - *s1 * (R.one() - R.monomial(0, 1));
  RingElem lhs2 = geometric_sum(R, {0, 1}, static_cast<std::uint64_t>(d2)) - s2 * (R.one() - R.monomial(1, 0));
  return {mc.in_ideal(lhs1) && mc.in_ideal(lhs2), d1, d2, *s1, s2};
}

std::optional<std::pair<int, int>> two_generator_shape(const FinGroup& g) {
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (g.ab_order(a) * g.ab_order(b) == g.ab_size() && g.generates(a, b)) return std::pair{a, b};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

// Left regular representation of Q8 on {1, -1, i, -i, j, -j, k, -k}.
CatalogEntry quaternion_entry() {
  // unit products: table[u][v] = (sign, unit) for u, v in {1, i, j, k}
  const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  auto left = [&](int u) {
    Perm p(8);
    for (int x = 0; x < 8; ++x) {
      int xs = x % 2 == 0 ? 1 : -1, xu = x / 2;
      int s = sign[u][xu] * xs;
      p[static_cast<std::size_t>(x)] = 2 * unit[u][xu] + (s == 1 ? 0 : 1);
    }
    return p;
  };
  return {"Q8", 8, to_cycles(left(1)), to_cycles(left(2))};
}

CatalogEntry heisenberg_entry() {
  // Points (u, v) of F_3^2 numbered 3u + v.
  Perm x(9), y(9);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) {
      x[static_cast<std::size_t>(3 * u + v)] = 3 * ((u + 1) % 3) + v;
      y[static_cast<std::size_t>(3 * u + v)] = 3 * u + (v + u) % 3;
    }
  return {"Heisenberg-27", 9, to_cycles(x), to_cycles(y)};
}

CatalogEntry affine_entry(const std::string& name, int p, int mult) {
  Perm x(static_cast<std::size_t>(p)), y(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) {
    x[static_cast<std::size_t>(t)] = (t + 1) % p;
    y[static_cast<std::size_t>(t)] = (t * mult) % p;
  }
  return {name, p, to_cycles(x), to_cycles(y)};
}

std::string cycle_text(int from, int len) {
  std::string s = "(";
  for (int i = 0; i < len; ++i) s += (i ? " " : "") + std::to_string(from + i);
  return s + ")";
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c{
      {"S3", 3, "(1 2)", "(1 2 3)"},
      {"D4", 4, "(1 2 3 4)", "(1 3)"},
      {"D5", 5, "(1 2 3 4 5)", "(2 5)(3 4)"},
      {"D6", 6, "(1 2 3 4 5 6)", "(2 6)(3 5)"},
  };
  c.push_back(quaternion_entry());
  c.push_back(heisenberg_entry());
  c.push_back(affine_entry("C7:C3", 7, 2));
  for (int N = 2; N <= 8; ++N) {
    std::string name = "Z" + std::to_string(N);
    c.push_back({name + "x" + name, 2 * N, cycle_text(1, N), cycle_text(N + 1, N)});
  }
  c.push_back({"S4", 4, "(1 2)", "(1 2 3 4)"});
  for (int N = 2; N <= 8; ++N) c.push_back({"Z" + std::to_string(N), N, cycle_text(1, N), "()"});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

std::optional<CatalogEntry> find_catalog_entry(const std::string& name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return e;
  return std::nullopt;
}

FinGroup make_group(const CatalogEntry& e) { return FinGroup::from_cycles(e.name, e.degree, e.gen1, e.gen2); }

}  // namespace metab
