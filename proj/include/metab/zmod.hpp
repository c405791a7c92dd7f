#pragma once

// Arithmetic and linear algebra over Z/n for arbitrary n >= 1.
//
// Row spaces are kept in Howell form, which makes span membership,
// canonical coset representatives and left kernels available by plain
// reduction, without splitting n into prime powers.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace metab {

using Int = std::int64_t;
using ZVec = std::vector<Int>;

/// Residue of a in [0, n).
inline Int mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

struct ExtGcd {
  Int g;
  Int s;
  Int t;
};
/// s*a + t*b = g = gcd(a, b), for a, b >= 0.
ExtGcd ext_gcd(Int a, Int b);

std::optional<Int> inv_mod(Int a, Int n);

/// A unit w of Z/n with a*w = gcd(a, n) (mod n).
Int unit_normalizer(Int a, Int n);

/// Prime factorization as (p, k) pairs in increasing p.
std::vector<std::pair<Int, int>> factorize(Int n);

/// The units u in [1, n) of Z/n, ascending. For n = 1 returns {0}.
std::vector<Int> units_mod(Int n);

/// Submodule of (Z/n)^width spanned by a list of generator rows, held in
/// Howell form. Optionally tracks how each basis row is built from the
/// original generators, which gives `solve` and `left_kernel`.
class HowellForm {
 public:
  HowellForm(Int modulus, std::size_t width, const std::vector<ZVec>& generators,
             bool track = false);

  Int modulus() const { return n_; }
  std::size_t width() const { return width_; }
  std::size_t generator_count() const { return ngens_; }

  /// Basis rows (echelon, pivots normalized to divisors of n).
  std::vector<ZVec> rows() const;
  std::size_t rank() const { return basis_.size(); }

  /// Number of elements in the span. Throws std::overflow_error past 2^63.
  Int span_size() const;

  /// Canonical representative of v modulo the span.
  ZVec reduce(const ZVec& v) const;
  bool contains(const ZVec& v) const;

  /// Coefficients x (one per generator) with sum x_i g_i = v. Requires
  /// tracking.
  std::optional<ZVec> solve(const ZVec& v) const;

  /// Generators of {x : sum x_i g_i = 0}, in Howell form. Requires
  /// tracking.
  HowellForm left_kernel() const;

  /// Every element of the span, in a fixed order. Throws BudgetExceeded
  /// when the span has more than `budget` elements.
  std::vector<ZVec> enumerate(std::size_t budget) const;

 private:
  struct Row {
    std::size_t pivot;
    Int pivot_value;
    ZVec data;  // width_ entries, then ngens_ tracking entries
  };

  Int n_;
  std::size_t width_;
  std::size_t ngens_;
  bool track_;
  std::vector<Row> basis_;    // rows with a pivot inside the first width_ columns
  std::vector<ZVec> kernel_;  // tracking parts of rows that vanish on the span part
};

}  // namespace metab
