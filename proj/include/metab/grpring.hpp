#pragma once

// The truncated group algebra R(n, m) = (Z/n)[a1, a2] / (a1^m - 1, a2^m - 1).
//
// Elements are dense m x m coefficient arrays; entry (i, j) is the
// coefficient of a1^i a2^j. Multiplication is 2-D cyclic convolution.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metab/zmod.hpp"

namespace metab {

/// Exponent vector of a monomial a1^v1 a2^v2, entries in [0, m).
struct Exp2 {
  int v1 = 0;
  int v2 = 0;
  auto operator<=>(const Exp2&) const = default;
};

class RingElem;

/// Truncation parameters (n, m).
class RingCtx {
 public:
  /// Throws std::invalid_argument unless n >= 2 and m >= 2.
  RingCtx(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  /// Number of coefficients, m^2.
  int dim() const { return m_ * m_; }
  /// log_n of the ring order: the ring has n^(m^2) elements.
  double log_order() const;
  /// n^(m^2) if it fits in 63 bits, else nullopt.
  std::optional<std::uint64_t> order() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem monomial(int i, int j) const;
  RingElem monomial(Exp2 v) const;
  RingElem scalar(Int c) const;
  /// a1^i a2^j with exponents reduced mod m.
  Exp2 normalize(Int i, Int j) const;

  bool operator==(const RingCtx&) const = default;

 private:
  int n_;
  int m_;
};

class RingElem {
 public:
  RingElem(RingCtx ctx, std::vector<Int> coeffs);

  const RingCtx& ctx() const { return ctx_; }
  /// Row-major coefficients; index i*m + j holds the a1^i a2^j coefficient.
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(int i, int j) const { return c_[static_cast<std::size_t>(i * ctx_.m() + j)]; }

  bool is_zero() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator-() const;
  RingElem operator*(const RingElem& o) const;
  RingElem scaled(Int c) const;
  /// Multiplication by the monomial a1^v1 a2^v2 (a cyclic shift).
  RingElem shifted(Exp2 v) const;
  RingElem pow(std::uint64_t k) const;

  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

  bool operator==(const RingElem& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }
  std::strong_ordering operator<=>(const RingElem& o) const;

  /// Human readable, e.g. "1 + 2*a1*a2^2".
  std::string to_string() const;

 private:
  RingCtx ctx_;
  std::vector<Int> c_;
};

/// Ring element with the given context from a flat coefficient index.
RingElem ring_from_index(const RingCtx& ctx, std::uint64_t index);

/// Multiplication-by-x as a Z/n-linear map: row k is x * (k-th monomial).
std::vector<ZVec> multiplication_rows(const RingElem& x);

/// Sum of all coefficients mod n; a ring map onto Z/n.
Int augmentation(const RingElem& x);

/// y with x*y = 1, or nullopt when x is not a unit.
std::optional<RingElem> try_invert(const RingElem& x);

/// Exponent pair when x is exactly one monomial with coefficient 1.
std::optional<Exp2> monomial_part(const RingElem& x);

struct SpecialSplit {
  Int scalar;       // u = augmentation, a unit of Z/n
  RingElem special; // u^{-1} x, augmentation 1
};

/// x = u * s with u in (Z/n)^x and eps(s) = 1, when eps(x) is a unit.
std::optional<SpecialSplit> special_split(const RingElem& x);

/// 1 + a^1 + ... + a^{k-1} for a monomial a (empty sum for k = 0).
RingElem geometric_sum(const RingCtx& ctx, Exp2 a, std::uint64_t k);

// ---------------------------------------------------------------------------
// Local decomposition for n = p^k with gcd(m, p) = 1.

/// Univariate polynomial over Z/N, coefficients from degree 0 upward.
using UPoly = std::vector<Int>;

/// Monic irreducible factors of x^m - 1 over F_p (gcd(m, p) = 1), sorted by
/// degree then coefficients; x - 1 comes first.
std::vector<UPoly> cyclotomic_factors_mod_p(Int p, int m);

/// Hensel lift of a coprime monic factorization of f from Z/p to Z/p^k.
std::vector<UPoly> hensel_lift(const UPoly& f, const std::vector<UPoly>& factors_mod_p, Int p,
                               int k);

struct LocalFactor {
  RingElem idempotent;
  UPoly f1;  // factor of x^m - 1 attached to a1, lifted to Z/p^k
  UPoly f2;  // factor attached to a2
  bool distinguished = false;  // f1 = f2 = x - 1
};

/// Orthogonal idempotents of R(p^k, m), one per pair of irreducible factors
/// of x^m - 1. Throws std::invalid_argument unless n is a prime power
/// coprime to m.
std::vector<LocalFactor> local_decompose(const RingCtx& ctx);

/// Whether x*e is a unit of the factor ring R*e (whose identity is e).
bool is_unit_in_factor(const RingElem& x, const RingElem& e);

}  // namespace metab
