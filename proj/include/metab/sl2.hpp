#pragma once

// 2x2 integer matrices and words in S, T.
//
// Convention: S = [[0,-1],[1,0]] and T = [[1,0],[1,1]] act on column
// vectors (T: e1 -> e1 + e2). A word evaluates to the left-to-right product
// of its letters; U(u) = diag(1, u) is the twist x2 -> x2^u.

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "metab/zmod.hpp"

namespace metab {

struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]
  auto operator<=>(const Mat2&) const = default;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Int mat_det(const Mat2& x);
/// Entries reduced into [0, e); e = 1 gives the zero matrix.
Mat2 mat_mod(const Mat2& x, Int e);
Mat2 mat_mul_mod(const Mat2& x, const Mat2& y, Int e);
/// Inverse of a matrix with unit determinant mod e.
Mat2 mat_inv_mod(const Mat2& x, Int e);
std::string to_string(const Mat2& x);

Mat2 mat_S();
Mat2 mat_T();
Mat2 mat_U(Int u);

enum class Letter : unsigned char { S, SInv, T, TInv };

Letter inverse(Letter l);
Mat2 letter_matrix(Letter l);

struct SL2Word {
  std::vector<Letter> letters;
  bool operator==(const SL2Word&) const = default;

  std::size_t size() const { return letters.size(); }
  /// Letters joined by spaces, e.g. "S T^-1 T^-1"; "1" when empty.
  std::string to_string() const;
  SL2Word inverse() const;
  SL2Word operator*(const SL2Word& o) const;
};

/// Cancels adjacent inverse letters.
SL2Word free_reduce(const SL2Word& w);
Mat2 evaluate(const SL2Word& w);
Mat2 evaluate_mod(const SL2Word& w, Int e);

/// A word evaluating exactly to m, by a Euclidean reduction of the first
/// column. Throws std::invalid_argument unless det(m) = 1.
SL2Word word_from_matrix(const Mat2& m);

/// |SL2(Z/e)| = e^3 prod_{p | e} (1 - p^-2).
std::uint64_t sl2_order(Int e);
/// |GL2(Z/e)| = |SL2(Z/e)| phi(e).
std::uint64_t gl2_order(Int e);

}  // namespace metab
