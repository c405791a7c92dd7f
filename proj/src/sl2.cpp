#include "metab/sl2.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace metab {

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Int mat_det(const Mat2& x) { return x.a * x.d - x.b * x.c; }

Mat2 mat_mod(const Mat2& x, Int e) { return {mod(x.a, e), mod(x.b, e), mod(x.c, e), mod(x.d, e)}; }

Mat2 mat_mul_mod(const Mat2& x, const Mat2& y, Int e) { return mat_mod(mat_mul(x, y), e); }

Mat2 mat_inv_mod(const Mat2& x, Int e) {
  auto inv = inv_mod(mod(mat_det(x), e), e);
  if (!inv) throw std::invalid_argument("matrix is not invertible mod e");
  return mat_mod({*inv * x.d, -*inv * x.b, -*inv * x.c, *inv * x.a}, e);
}

std::string to_string(const Mat2& x) {
  std::ostringstream os;
  os << "[[" << x.a << "," << x.b << "],[" << x.c << "," << x.d << "]]";
  return os.str();
}

Mat2 mat_S() { return {0, -1, 1, 0}; }
Mat2 mat_T() { return {1, 0, 1, 1}; }
Mat2 mat_U(Int u) { return {1, 0, 0, u}; }

Letter inverse(Letter l) {
  switch (l) {
    case Letter::S: return Letter::SInv;
    case Letter::SInv: return Letter::S;
    case Letter::T: return Letter::TInv;
    case Letter::TInv: return Letter::T;
  }
  return l;
}

Mat2 letter_matrix(Letter l) {
  switch (l) {
    case Letter::S: return mat_S();
    case Letter::SInv: return {0, 1, -1, 0};
    case Letter::T: return mat_T();
    case Letter::TInv: return {1, 0, -1, 1};
  }
  return {};
}

std::string SL2Word::to_string() const {
  if (letters.empty()) return "1";
  std::string s;
  for (Letter l : letters) {
    if (!s.empty()) s += ' ';
    switch (l) {
      case Letter::S: s += "S"; break;
      case Letter::SInv: s += "S^-1"; break;
      case Letter::T: s += "T"; break;
      case Letter::TInv: s += "T^-1"; break;
    }
  }
  return s;
}

SL2Word SL2Word::inverse() const {
  SL2Word w;
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(metab::inverse(*it));
  return w;
}

SL2Word SL2Word::operator*(const SL2Word& o) const {
  SL2Word w = *this;
  w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
  return w;
}

SL2Word free_reduce(const SL2Word& w) {
  SL2Word out;
  for (Letter l : w.letters) {
    if (!out.letters.empty() && out.letters.back() == inverse(l)) out.letters.pop_back();
    else out.letters.push_back(l);
  }
  return out;
}

Mat2 evaluate(const SL2Word& w) {
  Mat2 m;
  for (Letter l : w.letters) m = mat_mul(m, letter_matrix(l));
  return m;
}

Mat2 evaluate_mod(const SL2Word& w, Int e) {
  Mat2 m = mat_mod(Mat2{}, e);
  for (Letter l : w.letters) m = mat_mul_mod(m, letter_matrix(l), e);
  return m;
}

namespace {

void append(std::vector<Letter>& w, Letter l, Int k) {
  for (Int i = 0; i < k; ++i) w.push_back(l);
}

// Nearest-integer quotient.
Int round_div(Int x, Int y) {
  Int q = x / y, r = x - q * y;
  if (2 * std::abs(r) > std::abs(y)) q += ((r < 0) == (y < 0)) ? 1 : -1;
  return q;
}

}  // namespace

SL2Word word_from_matrix(const Mat2& m) {
  if (mat_det(m) != 1) throw std::invalid_argument("word_from_matrix: determinant is not 1");
  // Left-multiply by elementary matrices until upper unitriangular up to
  // sign; `ops` records them in application order.
  //   T^k:           row2 += k row1
  //   S T^-k S^-1:   row1 += k row2
  std::vector<Letter> ops;
  Mat2 x = m;
  auto add_row2 = [&](Int k) {  // row2 += k row1
    append(ops, k > 0 ? Letter::T : Letter::TInv, std::abs(k));
    x.c += k * x.a;
    x.d += k * x.b;
  };
  auto add_row1 = [&](Int k) {  // row1 += k row2
    // Applied in order: S^-1 first, then T^-k, then S (ops are left factors).
    ops.push_back(Letter::SInv);
    append(ops, k > 0 ? Letter::TInv : Letter::T, std::abs(k));
    ops.push_back(Letter::S);
    x.a += k * x.c;
    x.b += k * x.d;
  };
  while (x.a != 0 && x.c != 0) {
    if (std::abs(x.a) > std::abs(x.c)) add_row1(-round_div(x.a, x.c));
    else add_row2(-round_div(x.c, x.a));
  }
  if (x.a == 0) {
    // S^-1 [[0,b],[c,d]] = [[c,d],[0,-b]].
    ops.push_back(Letter::SInv);
    x = mat_mul(letter_matrix(Letter::SInv), x);
  }
  // Now x = [[s, b], [0, s]] with s = +-1, and x = s^? * [[1, s b], [0, 1]].
  std::vector<Letter> tail;
  if (x.a == -1) {
    tail = {Letter::S, Letter::S};
    x = {1, -x.b, 0, 1};
  }
  // [[1, k], [0, 1]] = S T^-k S^-1.
  tail.push_back(Letter::S);
  append(tail, x.b > 0 ? Letter::TInv : Letter::T, std::abs(x.b));
  tail.push_back(Letter::SInv);
  // ops_k ... ops_1 m = tail, so m = ops_1^-1 ... ops_k^-1 tail.
  SL2Word w;
  for (Letter l : ops) w.letters.push_back(inverse(l));
  w.letters.insert(w.letters.end(), tail.begin(), tail.end());
  return free_reduce(w);
}

std::uint64_t sl2_order(Int e) {
  if (e == 1) return 1;
  std::uint64_t n = static_cast<std::uint64_t>(e) * static_cast<std::uint64_t>(e) * static_cast<std::uint64_t>(e);
  for (const auto& [p, k] : factorize(e)) n = n / static_cast<std::uint64_t>(p * p) * static_cast<std::uint64_t>(p * p - 1);
  return n;
}

std::uint64_t gl2_order(Int e) { return sl2_order(e) * units_mod(e).size(); }

}  // namespace metab
