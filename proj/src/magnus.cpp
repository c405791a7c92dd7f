#include "metab/magnus.hpp"

#include <algorithm>
#include <stdexcept>

#include "metab/errors.hpp"

namespace metab {

std::strong_ordering MagnusElem::operator<=>(const MagnusElem& o) const {
  if (auto c = v <=> o.v; c != 0) return c;
  if (auto c = b1 <=> o.b1; c != 0) return c;
  return b2 <=> o.b2;
}

MagnusElem magnus_identity(const RingCtx& ctx) { return {ctx.zero(), ctx.zero(), {0, 0}}; }

std::pair<MagnusElem, MagnusElem> magnus_gens(const RingCtx& ctx) {
  return {MagnusElem{ctx.one(), ctx.zero(), {1 % ctx.m(), 0}},
          MagnusElem{ctx.zero(), ctx.one(), {0, 1 % ctx.m()}}};
}

std::pair<RingElem, RingElem> kappa(const RingCtx& ctx) {
  return {ctx.one() - ctx.monomial(0, 1), ctx.monomial(1, 0) - ctx.one()};
}

MagnusElem kappa_power(const RingElem& s) {
  auto [k1, k2] = kappa(s.ctx());
  return {s * k1, s * k2, {0, 0}};
}

namespace {
void same_ctx(const MagnusElem& x, const MagnusElem& y) {
  if (!(x.ctx() == y.ctx())) throw std::invalid_argument("Magnus elements from different contexts");
}
}  // namespace

MagnusElem mul(const MagnusElem& x, const MagnusElem& y) {
  same_ctx(x, y);
  const auto& c = x.ctx();
  return {x.b1 + y.b1.shifted(x.v), x.b2 + y.b2.shifted(x.v), c.normalize(x.v.v1 + y.v.v1, x.v.v2 + y.v.v2)};
}

MagnusElem inv(const MagnusElem& x) {
  const auto& c = x.ctx();
  Exp2 vi = c.normalize(-x.v.v1, -x.v.v2);
  return {-x.b1.shifted(vi), -x.b2.shifted(vi), vi};
}

MagnusElem pow(const MagnusElem& x, Int k) {
  MagnusElem base = k < 0 ? inv(x) : x;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  MagnusElem result = magnus_identity(x.ctx());
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

MagnusElem conj(const MagnusElem& x, const MagnusElem& y) { return mul(mul(y, x), inv(y)); }

MagnusElem commutator(const MagnusElem& x, const MagnusElem& y) {
  return mul(mul(x, y), mul(inv(x), inv(y)));
}

MagnusElem section(const RingCtx& ctx, Exp2 v) {
  v = ctx.normalize(v.v1, v.v2);
  RingElem b1 = geometric_sum(ctx, {1, 0}, static_cast<std::uint64_t>(v.v1));
  RingElem b2 = geometric_sum(ctx, {0, 1}, static_cast<std::uint64_t>(v.v2)).shifted({v.v1, 0});
  return {b1, b2, v};
}

RingElem defect(const MagnusElem& z) {
  const auto& c = z.ctx();
  return c.monomial(z.v) - c.one() -
         (z.b1 * (c.monomial(1, 0) - c.one()) + z.b2 * (c.monomial(0, 1) - c.one()));
}

namespace {

ZVec concat(const RingElem& a, const RingElem& b) {
  ZVec out = a.coeffs();
  out.insert(out.end(), b.coeffs().begin(), b.coeffs().end());
  return out;
}

std::vector<ZVec> kappa_rows(const RingCtx& ctx) {
  auto [k1, k2] = kappa(ctx);
  std::vector<ZVec> rows;
  for (int i = 0; i < ctx.m(); ++i)
    for (int j = 0; j < ctx.m(); ++j) rows.push_back(concat(k1.shifted({i, j}), k2.shifted({i, j})));
  return rows;
}

// Row blocks: kappa, (N1, 0), (0, N2), each times every monomial.
std::vector<ZVec> relation_rows(const RingCtx& ctx) {
  auto rows = kappa_rows(ctx);
  RingElem n1 = geometric_sum(ctx, {1, 0}, static_cast<std::uint64_t>(ctx.m()));
  RingElem n2 = geometric_sum(ctx, {0, 1}, static_cast<std::uint64_t>(ctx.m()));
  for (int i = 0; i < ctx.m(); ++i)
    for (int j = 0; j < ctx.m(); ++j) rows.push_back(concat(n1.shifted({i, j}), ctx.zero()));
  for (int i = 0; i < ctx.m(); ++i)
    for (int j = 0; j < ctx.m(); ++j) rows.push_back(concat(ctx.zero(), n2.shifted({i, j})));
  return rows;
}

std::vector<MagnusElem> split_rows(const RingCtx& ctx, const std::vector<ZVec>& rows, Exp2 v, const MagnusElem& base) {
  const auto dim = static_cast<std::ptrdiff_t>(ctx.dim());
  std::vector<MagnusElem> out;
  out.reserve(rows.size());
  for (const auto& d : rows) {
    ZVec d1(d.begin(), d.begin() + dim), d2(d.begin() + dim, d.end());
    out.push_back({base.b1 + RingElem(ctx, d1), base.b2 + RingElem(ctx, d2), v});
  }
  return out;
}

}  // namespace

MagnusModel::MagnusModel(const RingCtx& ctx)
    : ctx_(ctx),
      derived_(ctx.n(), static_cast<std::size_t>(2 * ctx.dim()), kappa_rows(ctx), true),
      ann_(derived_.left_kernel()),
      relations_(ctx.n(), static_cast<std::size_t>(2 * ctx.dim()), relation_rows(ctx), true),
      rel_kernel_(relations_.left_kernel()) {}

RingElem MagnusModel::normalize_witness(const RingElem& alpha) const {
  return RingElem(ctx_, ann_.reduce(alpha.coeffs()));
}

bool MagnusModel::equal_mod_annihilator(const RingElem& a, const RingElem& b) const {
  return ann_.contains((a - b).coeffs());
}

std::optional<RingElem> MagnusModel::kappa_witness(const RingElem& t1, const RingElem& t2) const {
  auto sol = derived_.solve(concat(t1, t2));
  if (!sol) return std::nullopt;
  return normalize_witness(RingElem(ctx_, std::move(*sol)));
}

std::optional<MagnusWitness> MagnusModel::membership(const MagnusElem& z) const {
  if (!(z.ctx() == ctx_)) throw std::invalid_argument("membership: element from another context");
  if (!defect(z).is_zero()) return std::nullopt;
  MagnusElem s = section(ctx_, z.v);
  auto sol = relations_.solve(concat(z.b1 - s.b1, z.b2 - s.b2));
  if (!sol) return std::nullopt;
  ZVec c = rel_kernel_.reduce(*sol);
  const auto dim = static_cast<std::ptrdiff_t>(ctx_.dim());
  return MagnusWitness{RingElem(ctx_, ZVec(c.begin(), c.begin() + dim)),
                       RingElem(ctx_, ZVec(c.begin() + dim, c.begin() + 2 * dim)),
                       RingElem(ctx_, ZVec(c.begin() + 2 * dim, c.end()))};
}

bool MagnusModel::contains(const MagnusElem& z) const {
  if (!(z.ctx() == ctx_)) throw std::invalid_argument("contains: element from another context");
  if (!defect(z).is_zero()) return false;
  MagnusElem s = section(ctx_, z.v);
  return relations_.contains(concat(z.b1 - s.b1, z.b2 - s.b2));
}

bool MagnusModel::in_derived(const MagnusElem& z) const {
  return z.v == Exp2{0, 0} && derived_.contains(concat(z.b1, z.b2));
}

MagnusElem MagnusModel::reduce_mod_derived(const MagnusElem& z) const {
  ZVec r = derived_.reduce(concat(z.b1, z.b2));
  const auto dim = static_cast<std::ptrdiff_t>(ctx_.dim());
  return {RingElem(ctx_, ZVec(r.begin(), r.begin() + dim)), RingElem(ctx_, ZVec(r.begin() + dim, r.end())), z.v};
}

std::vector<RingElem> MagnusModel::annihilator_basis() const {
  std::vector<RingElem> out;
  for (auto& r : ann_.rows()) out.emplace_back(ctx_, r);
  return out;
}

std::uint64_t MagnusModel::derived_order() const { return static_cast<std::uint64_t>(derived_.span_size()); }

std::uint64_t MagnusModel::relation_order() const {
  return static_cast<std::uint64_t>(relations_.span_size());
}

std::uint64_t MagnusModel::order() const {
  return relation_order() * static_cast<std::uint64_t>(ctx_.m() * ctx_.m());
}

std::vector<MagnusElem> MagnusModel::enumerate(std::size_t budget) const {
  if (order() > budget)
    throw BudgetExceeded("|W| = " + std::to_string(order()) + " exceeds budget " + std::to_string(budget));
  auto rel = relations_.enumerate(budget);
  std::vector<MagnusElem> out;
  out.reserve(order());
  for (int v1 = 0; v1 < ctx_.m(); ++v1)
    for (int v2 = 0; v2 < ctx_.m(); ++v2) {
      auto part = split_rows(ctx_, rel, {v1, v2}, section(ctx_, {v1, v2}));
      out.insert(out.end(), part.begin(), part.end());
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MagnusElem> MagnusModel::enumerate_relations(std::size_t budget) const {
  auto out = split_rows(ctx_, relations_.enumerate(budget), {0, 0}, magnus_identity(ctx_));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MagnusElem> MagnusModel::enumerate_derived(std::size_t budget) const {
  auto out = split_rows(ctx_, derived_.enumerate(budget), {0, 0}, magnus_identity(ctx_));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t MagnusModel::defect_discrepancy(std::uint64_t budget) const {
  auto ro = ctx_.order();
  if (!ro || *ro > budget / *ro / static_cast<std::uint64_t>(ctx_.dim()))
    throw BudgetExceeded("T x| A too large for defect census");
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < *ro; ++i) {
    RingElem b1 = ring_from_index(ctx_, i);
    for (std::uint64_t j = 0; j < *ro; ++j) {
      RingElem b2 = ring_from_index(ctx_, j);
      for (int v1 = 0; v1 < ctx_.m(); ++v1)
        for (int v2 = 0; v2 < ctx_.m(); ++v2) {
          MagnusElem z{b1, b2, {v1, v2}};
          if (defect(z).is_zero() && !contains(z)) ++count;
        }
    }
  }
  return count;
}

}  // namespace metab
