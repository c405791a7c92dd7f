#include <random>
#include <stdexcept>

#include "doctest.h"
#include "metab/sl2.hpp"

using namespace metab;

namespace {

SL2Word random_word(std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, 3);
  SL2Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) w.letters.push_back(static_cast<Letter>(letter(rng)));
  return w;
}

Mat2 neg_identity() { return {-1, 0, 0, -1}; }

}  // namespace

TEST_CASE("matrix conventions") {
  CHECK(mat_mul(mat_S(), mat_S()) == neg_identity());
  Mat2 st = mat_mul(mat_S(), mat_T());
  CHECK(mat_mul(st, mat_mul(st, st)) == Mat2{});
  Mat2 sti = mat_mul(mat_S(), letter_matrix(Letter::TInv));
  CHECK(mat_mul(sti, mat_mul(sti, sti)) == neg_identity());
  CHECK(mat_det(mat_U(5)) == 5);
  for (Letter l : {Letter::S, Letter::SInv, Letter::T, Letter::TInv})
    CHECK(mat_mul(letter_matrix(l), letter_matrix(inverse(l))) == Mat2{});
}

TEST_CASE("modular inverse and reduction") {
  for (Int e : {2, 5, 6, 12}) {
    Mat2 m = mat_mod({7, 3, 2, 1}, e);
    CHECK(mat_mul_mod(m, mat_inv_mod(m, e), e) == mat_mod(Mat2{}, e));
  }
  CHECK(mat_mod({-1, 5, 7, -13}, 6) == Mat2{5, 5, 1, 5});
  CHECK(mat_mod({3, 4, 5, 6}, 1) == Mat2{0, 0, 0, 0});
}

TEST_CASE("word printing and algebra") {
  CHECK(SL2Word{}.to_string() == "1");
  SL2Word w{{Letter::S, Letter::TInv, Letter::TInv}};
  CHECK(w.to_string() == "S T^-1 T^-1");
  CHECK(free_reduce(w * w.inverse()).size() == 0);
  CHECK(evaluate(w * w.inverse()) == Mat2{});
}

TEST_CASE("word_from_matrix reconstructs random words") {
  std::mt19937 rng(7);
  for (int k = 0; k < 1000; ++k) {
    Mat2 m = evaluate(random_word(rng, 30));
    SL2Word w = word_from_matrix(m);
    CHECK(evaluate(w) == m);
    CHECK(free_reduce(w) == w);
  }
}

TEST_CASE("word_from_matrix small cases") {
  CHECK(word_from_matrix(Mat2{}).size() == 0);
  CHECK(word_from_matrix(mat_T()).to_string() == "T");
  CHECK(evaluate(word_from_matrix(neg_identity())) == neg_identity());
  CHECK(evaluate(word_from_matrix(mat_S())) == mat_S());
  CHECK_THROWS_AS(word_from_matrix(Mat2{2, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("group orders") {
  // Brute-force counts of determinant-one and unit-determinant matrices.
  for (Int e = 1; e <= 12; ++e) {
    std::uint64_t sl = 0, gl = 0;
    for (Int a = 0; a < e; ++a)
      for (Int b = 0; b < e; ++b)
        for (Int c = 0; c < e; ++c)
          for (Int d = 0; d < e; ++d) {
            Int det = mod(a * d - b * c, e);
            if (det == mod(1, e)) ++sl;
            if (gcd(det, e) == 1) ++gl;
          }
    CHECK(sl2_order(e) == sl);
    CHECK(gl2_order(e) == gl);
  }
}
