#include "metab/grpring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace metab {

RingCtx::RingCtx(int n, int m) : n_(n), m_(m) {
  if (n < 2) throw std::invalid_argument("ring modulus n must be >= 2, got " + std::to_string(n));
  if (m < 2) throw std::invalid_argument("exponent modulus m must be >= 2, got " + std::to_string(m));
  if (m > 64) throw std::invalid_argument("exponent modulus m too large");
  if (n > (1 << 20)) throw std::invalid_argument("ring modulus n too large");
}

double RingCtx::log_order() const { return static_cast<double>(dim()); }

std::optional<std::uint64_t> RingCtx::order() const {
  std::uint64_t r = 1;
  for (int k = 0; k < dim(); ++k) {
    if (r > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(n_)) return std::nullopt;
    r *= static_cast<std::uint64_t>(n_);
  }
  return r;
}

RingElem RingCtx::zero() const { return RingElem(*this, std::vector<Int>(static_cast<std::size_t>(dim()), 0)); }

RingElem RingCtx::one() const { return monomial(0, 0); }

Exp2 RingCtx::normalize(Int i, Int j) const {
  return {static_cast<int>(mod(i, m_)), static_cast<int>(mod(j, m_))};
}

RingElem RingCtx::monomial(int i, int j) const {
  auto v = normalize(i, j);
  std::vector<Int> c(static_cast<std::size_t>(dim()), 0);
  c[static_cast<std::size_t>(v.v1 * m_ + v.v2)] = 1;
  return RingElem(*this, std::move(c));
}

RingElem RingCtx::monomial(Exp2 v) const { return monomial(v.v1, v.v2); }

RingElem RingCtx::scalar(Int c) const {
  std::vector<Int> co(static_cast<std::size_t>(dim()), 0);
  co[0] = c;
  return RingElem(*this, std::move(co));
}

RingElem::RingElem(RingCtx ctx, std::vector<Int> coeffs) : ctx_(ctx), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<std::size_t>(ctx_.dim()))
    throw std::invalid_argument("RingElem: expected " + std::to_string(ctx_.dim()) + " coefficients");
  for (auto& x : c_) x = mod(x, ctx_.n());
}

namespace {
void same_ctx(const RingElem& a, const RingElem& b) {
  if (!(a.ctx() == b.ctx())) throw std::invalid_argument("ring elements from different contexts");
}
}  // namespace

bool RingElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Int x) { return x == 0; });
}

RingElem RingElem::operator+(const RingElem& o) const {
  same_ctx(*this, o);
  std::vector<Int> r(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] + o.c_[k];
  return RingElem(ctx_, std::move(r));
}

RingElem RingElem::operator-(const RingElem& o) const {
  same_ctx(*this, o);
  std::vector<Int> r(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] - o.c_[k];
  return RingElem(ctx_, std::move(r));
}

RingElem RingElem::operator-() const { return ctx_.zero() - *this; }

RingElem RingElem::operator*(const RingElem& o) const {
  same_ctx(*this, o);
  const int m = ctx_.m();
  const Int n = ctx_.n();
  std::vector<Int> r(c_.size(), 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Int x = c_[static_cast<std::size_t>(i * m + j)];
      if (x == 0) continue;
      for (int k = 0; k < m; ++k) {
        const int row = ((i + k) % m) * m;
        for (int l = 0; l < m; ++l) {
          Int y = o.c_[static_cast<std::size_t>(k * m + l)];
          if (y == 0) continue;
          auto& slot = r[static_cast<std::size_t>(row + (j + l) % m)];
          slot = (slot + x * y) % n;
        }
      }
    }
  return RingElem(ctx_, std::move(r));
}

RingElem RingElem::scaled(Int c) const {
  std::vector<Int> r(c_.size());
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] = c_[k] * mod(c, ctx_.n());
  return RingElem(ctx_, std::move(r));
}

RingElem RingElem::shifted(Exp2 v) const {
  const int m = ctx_.m();
  v = ctx_.normalize(v.v1, v.v2);
  std::vector<Int> r(c_.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      r[static_cast<std::size_t>(((i + v.v1) % m) * m + (j + v.v2) % m)] = c_[static_cast<std::size_t>(i * m + j)];
  return RingElem(ctx_, std::move(r));
}

RingElem RingElem::pow(std::uint64_t k) const {
  RingElem result = ctx_.one();
  RingElem base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

std::strong_ordering RingElem::operator<=>(const RingElem& o) const {
  if (auto c = ctx_.n() <=> o.ctx_.n(); c != 0) return c;
  if (auto c = ctx_.m() <=> o.ctx_.m(); c != 0) return c;
  return c_ <=> o.c_;
}

std::string RingElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  const int m = ctx_.m();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Int c = coeff(i, j);
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      bool mono = i != 0 || j != 0;
      if (c != 1 || !mono) os << c;
      if (c != 1 && mono) os << "*";
      if (i != 0) os << "a1" << (i > 1 ? "^" + std::to_string(i) : "");
      if (i != 0 && j != 0) os << "*";
      if (j != 0) os << "a2" << (j > 1 ? "^" + std::to_string(j) : "");
    }
  if (first) os << "0";
  return os.str();
}

RingElem ring_from_index(const RingCtx& ctx, std::uint64_t index) {
  std::vector<Int> c(static_cast<std::size_t>(ctx.dim()));
  for (auto& x : c) {
    x = static_cast<Int>(index % static_cast<std::uint64_t>(ctx.n()));
    index /= static_cast<std::uint64_t>(ctx.n());
  }
  return RingElem(ctx, std::move(c));
}

std::vector<ZVec> multiplication_rows(const RingElem& x) {
  const int m = x.ctx().m();
  std::vector<ZVec> rows;
  rows.reserve(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rows.push_back(x.shifted({i, j}).coeffs());
  return rows;
}

Int augmentation(const RingElem& x) {
  Int s = 0;
  for (Int c : x.coeffs()) s += c;
  return mod(s, x.ctx().n());
}

std::optional<RingElem> try_invert(const RingElem& x) {
  const auto& ctx = x.ctx();
  HowellForm span(ctx.n(), static_cast<std::size_t>(ctx.dim()), multiplication_rows(x), true);
  auto sol = span.solve(ctx.one().coeffs());
  if (!sol) return std::nullopt;
  return RingElem(ctx, std::move(*sol));
}

std::optional<Exp2> monomial_part(const RingElem& x) {
  std::optional<Exp2> found;
  const int m = x.ctx().m();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Int c = x.coeff(i, j);
      if (c == 0) continue;
      if (c != 1 || found) return std::nullopt;
      found = Exp2{i, j};
    }
  return found;
}

std::optional<SpecialSplit> special_split(const RingElem& x) {
  Int u = augmentation(x);
  auto uinv = inv_mod(u, x.ctx().n());
  if (!uinv) return std::nullopt;
  return SpecialSplit{u, x.scaled(*uinv)};
}

RingElem geometric_sum(const RingCtx& ctx, Exp2 a, std::uint64_t k) {
  RingElem s = ctx.zero();
  RingElem term = ctx.one();
  for (std::uint64_t i = 0; i < k; ++i) {
    s += term;
    term = term.shifted(a);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Z/N.

namespace {

void trim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly pmod_coeffs(UPoly f, Int N) {
  for (auto& c : f) c = mod(c, N);
  trim(f);
  return f;
}

UPoly padd(const UPoly& a, const UPoly& b, Int N) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return pmod_coeffs(std::move(r), N);
}

UPoly psub(const UPoly& a, const UPoly& b, Int N) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return pmod_coeffs(std::move(r), N);
}

UPoly pmul(const UPoly& a, const UPoly& b, Int N) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], N);
  trim(r);
  return r;
}

UPoly pscale(const UPoly& a, Int c, Int N) {
  UPoly r(a);
  for (auto& x : r) x = mod(x * c, N);
  trim(r);
  return r;
}

// Division by a divisor whose leading coefficient is a unit mod N.
std::pair<UPoly, UPoly> pdivmod(UPoly a, const UPoly& b, Int N) {
  a = pmod_coeffs(std::move(a), N);
  if (b.empty()) throw std::invalid_argument("polynomial division by zero");
  Int lead_inv = *inv_mod(b.back(), N);
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1, 0);
  const std::size_t db = b.size() - 1;
  for (std::size_t i = a.size() - 1;; --i) {
    Int c = mod(a[i] * lead_inv, N);
    q[i - db] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - db + j] = mod(a[i - db + j] - c * b[j], N);
    if (i == db) break;
  }
  trim(q);
  trim(a);
  return {q, a};
}

UPoly prem(const UPoly& a, const UPoly& b, Int N) { return pdivmod(a, b, N).second; }

// Inverse of a modulo g over the field F_p.
UPoly pinv_mod_field(const UPoly& a, const UPoly& g, Int p) {
  UPoly r0 = g, r1 = prem(a, g, p);
  UPoly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    auto [q, r] = pdivmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly s = psub(s0, pmul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw std::invalid_argument("polynomial not invertible modulo factor");
  return prem(pscale(s0, *inv_mod(r0[0], p), p), g, p);
}

UPoly x_pow_minus_one(int m, Int N) {
  UPoly f(static_cast<std::size_t>(m) + 1, 0);
  f[0] = mod(-1, N);
  f[static_cast<std::size_t>(m)] = 1;
  return f;
}

Int int_pow(Int b, int e) {
  Int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::vector<UPoly> cyclotomic_factors_mod_p(Int p, int m) {
  if (gcd(p, m) != 1) throw std::invalid_argument("x^m - 1 is not squarefree mod p when p | m");
  UPoly f = x_pow_minus_one(m, p);
  std::vector<UPoly> out;
  for (std::size_t d = 1; f.size() > 1; ++d) {
    if (2 * d > f.size() - 1) {
      out.push_back(pscale(f, *inv_mod(f.back(), p), p));
      break;
    }
    // Monic candidates of degree d in increasing lexicographic order.
    Int count = int_pow(p, static_cast<int>(d));
    for (Int idx = 0; idx < count && f.size() - 1 >= d; ++idx) {
      UPoly g(d + 1, 0);
      Int t = idx;
      for (std::size_t k = 0; k < d; ++k) {
        g[k] = t % p;
        t /= p;
      }
      g[d] = 1;
      auto [q, r] = pdivmod(f, g, p);
      if (r.empty()) {
        out.push_back(g);
        f = q;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const UPoly& a, const UPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  // x - 1 is (p-1, 1); put it first among the linear factors.
  auto it = std::find(out.begin(), out.end(), UPoly{p - 1, 1});
  if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  return out;
}

std::vector<UPoly> hensel_lift(const UPoly& f, const std::vector<UPoly>& factors_mod_p, Int p, int k) {
  std::vector<UPoly> g = factors_mod_p;
  Int pj = p;
  for (int j = 1; j < k; ++j) {
    Int next = pj * p;
    UPoly prod = {1};
    for (const auto& gi : g) prod = pmul(prod, gi, next);
    UPoly err = psub(pmod_coeffs(f, next), prod, next);
    for (auto& c : err) c = (c / pj) % p;  // exact: f = prod mod p^j
    trim(err);
    std::vector<UPoly> updated;
    for (std::size_t i = 0; i < g.size(); ++i) {
      UPoly cof = {1};
      for (std::size_t l = 0; l < g.size(); ++l)
        if (l != i) cof = pmul(cof, g[l], p);
      UPoly gi_p = pmod_coeffs(g[i], p);
      UPoly delta = prem(pmul(err, pinv_mod_field(cof, gi_p, p), p), gi_p, p);
      updated.push_back(padd(g[i], pscale(delta, pj, next), next));
    }
    g = std::move(updated);
    pj = next;
  }
  return g;
}

namespace {

// Element of R depending on one variable: a1 (which = 0) or a2 (which = 1).
RingElem univariate_elem(const RingCtx& ctx, const UPoly& f, int which) {
  RingElem r = ctx.zero();
  for (std::size_t d = 0; d < f.size(); ++d) {
    int e = static_cast<int>(d % static_cast<std::size_t>(ctx.m()));
    r += (which == 0 ? ctx.monomial(e, 0) : ctx.monomial(0, e)).scaled(f[d]);
  }
  return r;
}

}  // namespace

std::vector<LocalFactor> local_decompose(const RingCtx& ctx) {
  auto fac = factorize(ctx.n());
  if (fac.size() != 1) throw std::invalid_argument("local_decompose needs n to be a prime power");
  const Int p = fac[0].first;
  const int k = fac[0].second;
  const int m = ctx.m();
  if (gcd(p, m) != 1) throw std::invalid_argument("local_decompose needs gcd(m, p) = 1");
  const Int N = ctx.n();

  UPoly f = x_pow_minus_one(m, N);
  auto base = cyclotomic_factors_mod_p(p, m);
  auto lifted = hensel_lift(f, base, p, k);

  // One-variable idempotents: CRT mod p, then lifted with e <- 3e^2 - 2e^3.
  UPoly fp = x_pow_minus_one(m, p);
  std::vector<UPoly> idem;
  for (const auto& g : base) {
    UPoly cof = pdivmod(fp, g, p).first;
    UPoly e = prem(pmul(cof, pinv_mod_field(cof, g, p), p), fp, p);
    for (Int prec = p; prec < N;) {
      prec = std::min(prec * prec, N);
      UPoly e2 = prem(pmul(e, e, prec), f, prec);
      UPoly e3 = prem(pmul(e2, e, prec), f, prec);
      e = psub(pscale(e2, 3, prec), pscale(e3, 2, prec), prec);
    }
    idem.push_back(pmod_coeffs(e, N));
  }

  std::vector<LocalFactor> out;
  const UPoly x_minus_one = pmod_coeffs({-1, 1}, N);
  for (std::size_t i = 0; i < lifted.size(); ++i)
    for (std::size_t j = 0; j < lifted.size(); ++j) {
      RingElem e = univariate_elem(ctx, idem[i], 0) * univariate_elem(ctx, idem[j], 1);
      out.push_back({e, lifted[i], lifted[j], lifted[i] == x_minus_one && lifted[j] == x_minus_one});
    }
  return out;
}

bool is_unit_in_factor(const RingElem& x, const RingElem& e) {
  const auto& ctx = x.ctx();
  HowellForm span(ctx.n(), static_cast<std::size_t>(ctx.dim()), multiplication_rows(x * e));
  return span.contains(e.coeffs());
}

}  // namespace metab
