#include "metab/iacalc.hpp"

#include <algorithm>
#include <stdexcept>

#include "metab/errors.hpp"

namespace metab {

IAEndo ia_identity(const RingCtx& ctx) { return {ctx.zero(), ctx.zero()}; }

BachmuthMatrix matrix_mul(const BachmuthMatrix& x, const BachmuthMatrix& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

RingElem matrix_det(const BachmuthMatrix& x) { return x.a11 * x.a22 - x.a12 * x.a21; }

BachmuthMatrix ia_matrix(const IAEndo& e) {
  const auto& c = e.r1.ctx();
  auto [k1, k2] = kappa(c);
  return {c.one() + e.r1 * k1, e.r2 * k1, e.r1 * k2, c.one() + e.r2 * k2};
}

RingElem ia_det(const IAEndo& e) {
  const auto& c = e.r1.ctx();
  auto [k1, k2] = kappa(c);
  return c.one() + e.r1 * k1 + e.r2 * k2;
}

IAEndo ia_compose(const IAEndo& e, const IAEndo& f) {
  RingElem d = ia_det(e);
  return {e.r1 + d * f.r1, e.r2 + d * f.r2};
}

MagnusElem ia_apply(const MagnusModel& model, const IAEndo& e, const MagnusElem& z) {
  if (!model.contains(z)) throw std::invalid_argument("ia_apply: element is not in W");
  auto mat = ia_matrix(e);
  return {mat.a11 * z.b1 + mat.a12 * z.b2, mat.a21 * z.b1 + mat.a22 * z.b2, z.v};
}

std::string to_string(IAVerdict v) {
  switch (v) {
    case IAVerdict::Inner: return "Inner";
    case IAVerdict::AutomorphismOnly: return "AutomorphismOnly";
    case IAVerdict::NotAutomorphism: return "NotAutomorphism";
  }
  return "?";
}

IAClassification ia_classify(const IAEndo& e) {
  RingElem d = ia_det(e);
  if (auto mono = monomial_part(d)) return {IAVerdict::Inner, mono, d};
  if (try_invert(d)) return {IAVerdict::AutomorphismOnly, std::nullopt, d};
  return {IAVerdict::NotAutomorphism, std::nullopt, d};
}

// ---------------------------------------------------------------------------

Endo endo_identity(const RingCtx& ctx) {
  auto [x1, x2] = magnus_gens(ctx);
  return {x1, x2};
}

Endo ia_as_endo(const IAEndo& e) {
  auto [x1, x2] = magnus_gens(e.r1.ctx());
  return {mul(kappa_power(e.r1), x1), mul(kappa_power(e.r2), x2)};
}

Endo endo_swap(const RingCtx& ctx) {
  auto [x1, x2] = magnus_gens(ctx);
  return {x2, inv(x1)};
}

Endo endo_transvection(const RingCtx& ctx) {
  auto [x1, x2] = magnus_gens(ctx);
  return {mul(x2, x1), x2};
}

Endo endo_diagonal(const RingCtx& ctx, Int u) {
  auto [x1, x2] = magnus_gens(ctx);
  return {x1, pow(x2, u)};
}

RingElem ab_action(const Endo& g, const RingElem& alpha) {
  const auto& c = alpha.ctx();
  RingElem out = c.zero();
  for (int i = 0; i < c.m(); ++i)
    for (int j = 0; j < c.m(); ++j) {
      Int coeff = alpha.coeff(i, j);
      if (coeff == 0) continue;
      out += c.monomial(ab_action(g, Exp2{i, j})).scaled(coeff);
    }
  return out;
}

Exp2 ab_action(const Endo& g, Exp2 v) {
  return g.y1.ctx().normalize(static_cast<Int>(v.v1) * g.y1.v.v1 + static_cast<Int>(v.v2) * g.y2.v.v1,
                              static_cast<Int>(v.v1) * g.y1.v.v2 + static_cast<Int>(v.v2) * g.y2.v.v2);
}

MagnusElem endo_apply(const MagnusModel& model, const Endo& g, const MagnusElem& z) {
  if (!model.contains(z)) throw std::invalid_argument("endo_apply: element is not in W");
  // Chain rule for Fox derivatives: b(gamma(z)) = sum_j gamma(b_j(z)) b(y_j).
  RingElem c1 = ab_action(g, z.b1), c2 = ab_action(g, z.b2);
  return {c1 * g.y1.b1 + c2 * g.y2.b1, c1 * g.y1.b2 + c2 * g.y2.b2, ab_action(g, z.v)};
}

Endo endo_compose(const MagnusModel& model, const Endo& g, const Endo& h) {
  return {endo_apply(model, g, h.y1), endo_apply(model, g, h.y2)};
}

RingElem gen_det(const MagnusModel& model, const Endo& g) {
  MagnusElem c = commutator(g.y1, g.y2);
  if (c.v != Exp2{0, 0}) throw InvariantViolation("gen_det: commutator of images has nontrivial A-part");
  auto alpha = model.kappa_witness(c.b1, c.b2);
  if (!alpha) throw InvariantViolation("gen_det: commutator of images is not in R*kappa");
  return *alpha;
}

// ---------------------------------------------------------------------------

bool ia_bijective_brute(const MagnusModel& model, const IAEndo& e, const std::vector<MagnusElem>& relations) {
  const MagnusElem id = magnus_identity(model.ctx());
  auto mat = ia_matrix(e);
  for (const auto& z : relations) {
    if (z == id) continue;
    if ((mat.a11 * z.b1 + mat.a12 * z.b2).is_zero() && (mat.a21 * z.b1 + mat.a22 * z.b2).is_zero()) return false;
  }
  return true;
}

std::uint64_t ia_image_order(const IAEndo& e) {
  const auto& c = e.r1.ctx();
  const Int m = c.m();
  auto y = ia_as_endo(e);
  // The image is generated by y1, y2 with A-parts a1, a2, so its
  // intersection with T is the R-span of [y1,y2], y1^m and y2^m.
  std::vector<MagnusElem> gens{commutator(y.y1, y.y2), pow(y.y1, m), pow(y.y2, m)};
  std::vector<ZVec> rows;
  for (const auto& g : gens)
    for (int i = 0; i < c.m(); ++i)
      for (int j = 0; j < c.m(); ++j) {
        ZVec row = g.b1.shifted({i, j}).coeffs();
        auto b2 = g.b2.shifted({i, j}).coeffs();
        row.insert(row.end(), b2.begin(), b2.end());
        rows.push_back(std::move(row));
      }
  HowellForm span(c.n(), static_cast<std::size_t>(2 * c.dim()), rows);
  return static_cast<std::uint64_t>(span.span_size()) * static_cast<std::uint64_t>(m * m);
}

std::string magnus_key(const MagnusElem& z) {
  const auto& c = z.ctx();
  int bits = 1;
  while ((Int{1} << bits) < c.n()) ++bits;
  std::string k;
  std::uint32_t acc = 0;
  int fill = 0;
  auto put = [&](Int x, int width) {
    for (int b = 0; b < width; ++b) {
      acc |= static_cast<std::uint32_t>((x >> b) & 1) << fill;
      if (++fill == 8) {
        k.push_back(static_cast<char>(acc));
        acc = 0;
        fill = 0;
      }
    }
  };
  for (Int x : z.b1.coeffs()) put(x, bits);
  for (Int x : z.b2.coeffs()) put(x, bits);
  put(z.v.v1, 8);
  put(z.v.v2, 8);
  if (fill > 0) k.push_back(static_cast<char>(acc));
  return k;
}

InnerCensus::InnerCensus(const RingCtx& ctx, const std::vector<MagnusElem>& elements) {
  auto [x1, x2] = magnus_gens(ctx);
  keys_.reserve(elements.size());
  for (const auto& g : elements) keys_.push_back(magnus_key(conj(x1, g)) + magnus_key(conj(x2, g)));
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  keys_.shrink_to_fit();
}

InnerCensus::InnerCensus(const MagnusModel& model, std::size_t budget) {
  const auto& c = model.ctx();
  auto [x1, x2] = magnus_gens(c);
  auto rel = model.enumerate_relations(budget);
  keys_.reserve(rel.size() * static_cast<std::size_t>(c.dim()));
  for (int v1 = 0; v1 < c.m(); ++v1)
    for (int v2 = 0; v2 < c.m(); ++v2) {
      auto s = section(c, {v1, v2});
      for (const auto& r : rel) {
        auto g = mul(r, s);
        keys_.push_back(magnus_key(conj(x1, g)) + magnus_key(conj(x2, g)));
      }
      std::sort(keys_.begin(), keys_.end());
      keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
    }
  keys_.shrink_to_fit();
}

bool InnerCensus::is_inner(const Endo& g) const {
  return std::binary_search(keys_.begin(), keys_.end(), magnus_key(g.y1) + magnus_key(g.y2));
}

}  // namespace metab
