#include "metab/zmod.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "metab/errors.hpp"

namespace metab {

Int gcd(Int a, Int b) { return std::gcd(a, b); }
Int lcm(Int a, Int b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

std::optional<Int> inv_mod(Int a, Int n) {
  if (n == 1) return 0;
  auto [g, s, t] = ext_gcd(mod(a, n), n);
  (void)t;
  if (g != 1) return std::nullopt;
  return mod(s, n);
}

Int unit_normalizer(Int a, Int n) {
  a = mod(a, n);
  Int g = std::gcd(a, n);
  if (a == 0) return 1;
  Int np = n / g;
  Int w0 = np == 1 ? 0 : *inv_mod(a / g, np);
  for (Int w = w0;; w += np) {
    if (std::gcd(w, n) == 1) return mod(w, n);
  }
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> units_mod(Int n) {
  std::vector<Int> out;
  if (n == 1) return {0};
  for (Int u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) out.push_back(u);
  return out;
}

namespace {

void axpy(ZVec& y, Int a, const ZVec& x, Int n) {
  if (a == 0) return;
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = mod(y[k] + a * x[k], n);
}

bool is_zero(const ZVec& v, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k)
    if (v[k] != 0) return false;
  return true;
}

}  // namespace

HowellForm::HowellForm(Int modulus, std::size_t width, const std::vector<ZVec>& generators,
                       bool track)
    : n_(modulus), width_(width), ngens_(generators.size()), track_(track) {
  if (n_ < 1) throw std::invalid_argument("HowellForm: modulus must be >= 1");
  const std::size_t extra = track_ ? ngens_ : 0;
  const std::size_t cols = width_ + extra;

  std::vector<ZVec> w;
  w.reserve(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != width_)
      throw std::invalid_argument("HowellForm: generator has wrong width");
    ZVec row(cols, 0);
    for (std::size_t k = 0; k < width_; ++k) row[k] = mod(generators[i][k], n_);
    if (track_) row[width_ + i] = 1 % n_;
    w.push_back(std::move(row));
  }

  std::size_t p = 0;
  std::vector<std::pair<std::size_t, Int>> pivots;  // (column, value) per row < p
  for (std::size_t col = 0; col < cols && p < w.size(); ++col) {
    for (std::size_t i = p + 1; i < w.size(); ++i) {
      Int b = w[i][col];
      if (b == 0) continue;
      Int a = w[p][col];
      if (a == 0) {
        std::swap(w[p], w[i]);
        continue;
      }
      auto [g, s, t] = ext_gcd(a, b);
      Int u = -(b / g), v = a / g;
      ZVec np(cols), ni(cols);
      for (std::size_t k = 0; k < cols; ++k) {
        np[k] = mod(s * w[p][k] + t * w[i][k], n_);
        ni[k] = mod(u * w[p][k] + v * w[i][k], n_);
      }
      w[p] = std::move(np);
      w[i] = std::move(ni);
    }
    Int a = w[p][col];
    if (a == 0) continue;
    Int unit = unit_normalizer(a, n_);
    for (auto& x : w[p]) x = mod(x * unit, n_);
    Int g = w[p][col];
    // Howell closure: the annihilator multiple of the pivot row must be
    // representable by the rows that follow it.
    ZVec ann(cols);
    for (std::size_t k = 0; k < cols; ++k) ann[k] = mod((n_ / g) * w[p][k], n_);
    if (!is_zero(ann, 0, cols)) w.push_back(std::move(ann));
    for (std::size_t i = 0; i < p; ++i) {
      Int q = w[i][col] / g;
      axpy(w[i], -q, w[p], n_);
    }
    pivots.emplace_back(col, g);
    ++p;
  }

  for (std::size_t i = 0; i < p; ++i) {
    auto [col, g] = pivots[i];
    if (col < width_) {
      basis_.push_back({col, g, std::move(w[i])});
    } else {
      kernel_.emplace_back(w[i].begin() + static_cast<std::ptrdiff_t>(width_), w[i].end());
    }
  }
}

std::vector<ZVec> HowellForm::rows() const {
  std::vector<ZVec> out;
  for (const auto& r : basis_) out.emplace_back(r.data.begin(), r.data.begin() + static_cast<std::ptrdiff_t>(width_));
  return out;
}

Int HowellForm::span_size() const {
  Int s = 1;
  for (const auto& r : basis_) {
    Int f = n_ / r.pivot_value;
    if (s > std::numeric_limits<Int>::max() / f) throw std::overflow_error("HowellForm: span size overflows 63 bits");
    s *= f;
  }
  return s;
}

ZVec HowellForm::reduce(const ZVec& v) const {
  if (v.size() != width_) throw std::invalid_argument("HowellForm::reduce: wrong width");
  ZVec x(width_);
  for (std::size_t k = 0; k < width_; ++k) x[k] = mod(v[k], n_);
  for (const auto& r : basis_) {
    Int q = x[r.pivot] / r.pivot_value;
    if (q == 0) continue;
    for (std::size_t k = r.pivot; k < width_; ++k) x[k] = mod(x[k] - q * r.data[k], n_);
  }
  return x;
}

bool HowellForm::contains(const ZVec& v) const {
  auto x = reduce(v);
  return is_zero(x, 0, width_);
}

std::optional<ZVec> HowellForm::solve(const ZVec& v) const {
  if (!track_) throw std::logic_error("HowellForm::solve requires tracking");
  if (v.size() != width_) throw std::invalid_argument("HowellForm::solve: wrong width");
  ZVec x(width_);
  for (std::size_t k = 0; k < width_; ++k) x[k] = mod(v[k], n_);
  ZVec coeff(ngens_, 0);
  for (const auto& r : basis_) {
    Int e = x[r.pivot];
    if (e == 0) continue;
    if (e % r.pivot_value != 0) return std::nullopt;
    Int q = e / r.pivot_value;
    for (std::size_t k = r.pivot; k < width_; ++k) x[k] = mod(x[k] - q * r.data[k], n_);
    for (std::size_t k = 0; k < ngens_; ++k) coeff[k] = mod(coeff[k] + q * r.data[width_ + k], n_);
  }
  if (!is_zero(x, 0, width_)) return std::nullopt;
  return coeff;
}

HowellForm HowellForm::left_kernel() const {
  if (!track_) throw std::logic_error("HowellForm::left_kernel requires tracking");
  return HowellForm(n_, ngens_, kernel_);
}

std::vector<ZVec> HowellForm::enumerate(std::size_t budget) const {
  Int total = span_size();
  if (static_cast<std::size_t>(total) > budget)
    throw BudgetExceeded("span has " + std::to_string(total) + " elements, budget " +
                         std::to_string(budget));
  // Mixed-radix walk over the coefficient ranges [0, n/g_i).
  std::vector<Int> digit(basis_.size(), 0);
  std::vector<ZVec> out;
  out.reserve(static_cast<std::size_t>(total));
  for (Int idx = 0; idx < total; ++idx) {
    ZVec v(width_, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (digit[i] != 0)
        for (std::size_t k = 0; k < width_; ++k) v[k] = mod(v[k] + digit[i] * basis_[i].data[k], n_);
    out.push_back(std::move(v));
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < n_ / basis_[i].pivot_value) break;
      digit[i] = 0;
    }
  }
  return out;
}

}  // namespace metab
