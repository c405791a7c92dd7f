#include <random>
#include <set>

#include "doctest.h"
#include "metab/errors.hpp"
#include "metab/zmod.hpp"

using namespace metab;

namespace {

// All Z-combinations of the generators, by exhaustive sums.
std::set<ZVec> brute_span(Int n, std::size_t w, const std::vector<ZVec>& gens) {
  std::set<ZVec> span{ZVec(w, 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ZVec> cur(span.begin(), span.end());
    for (const auto& v : cur)
      for (const auto& g : gens) {
        ZVec s(w);
        for (std::size_t i = 0; i < w; ++i) s[i] = mod(v[i] + g[i], n);
        if (span.insert(s).second) grew = true;
      }
  }
  return span;
}

std::vector<ZVec> random_gens(std::mt19937& rng, Int n, std::size_t w, int count) {
  std::uniform_int_distribution<Int> d(0, n - 1);
  std::vector<ZVec> gens(static_cast<std::size_t>(count), ZVec(w));
  for (auto& g : gens)
    for (auto& x : g) x = d(rng);
  return gens;
}

}  // namespace

TEST_CASE("gcd helpers") {
  auto e = ext_gcd(12, 18);
  CHECK(e.g == 6);
  CHECK(e.s * 12 + e.t * 18 == 6);
  CHECK(inv_mod(3, 7) == 5);
  CHECK_FALSE(inv_mod(4, 8).has_value());
  for (Int n : {2, 6, 12, 36})
    for (Int a = 0; a < n; ++a) {
      Int w = unit_normalizer(a, n);
      CHECK(gcd(w, n) == 1);
      CHECK(mod(a * w, n) == gcd(a, n) % n);
    }
  CHECK(units_mod(12) == std::vector<Int>{1, 5, 7, 11});
  CHECK(units_mod(1) == std::vector<Int>{0});
  CHECK(factorize(360) == std::vector<std::pair<Int, int>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("Howell form agrees with brute-force span") {
  std::mt19937 rng(7);
  for (Int n : {2, 4, 6, 8, 9, 12}) {
    for (int trial = 0; trial < 15; ++trial) {
      std::size_t w = 1 + trial % 3;
      auto gens = random_gens(rng, n, w, 1 + trial % 4);
      HowellForm h(n, w, gens, true);
      auto span = brute_span(n, w, gens);
      CHECK(static_cast<std::size_t>(h.span_size()) == span.size());
      auto listed = h.enumerate(100000);
      CHECK(std::set<ZVec>(listed.begin(), listed.end()) == span);
      // Canonical reduction: equal exactly on cosets.
      std::set<ZVec> reps;
      auto all = brute_span(n, w, [&] {
        std::vector<ZVec> e;
        for (std::size_t i = 0; i < w; ++i) {
          ZVec u(w, 0);
          u[i] = 1;
          e.push_back(u);
        }
        return e;
      }());
      for (const auto& v : all) {
        reps.insert(h.reduce(v));
        CHECK(h.contains(v) == (span.count(v) == 1));
        auto x = h.solve(v);
        CHECK(x.has_value() == h.contains(v));
        if (x) {
          ZVec s(w, 0);
          for (std::size_t g = 0; g < gens.size(); ++g)
            for (std::size_t i = 0; i < w; ++i) s[i] = mod(s[i] + (*x)[g] * gens[g][i], n);
          CHECK(s == v);
        }
      }
      CHECK(reps.size() * span.size() == all.size());
    }
  }
}

TEST_CASE("left kernel is exactly the relation module") {
  std::mt19937 rng(11);
  for (Int n : {4, 6, 9}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::size_t w = 1 + trial % 2;
      int k = 1 + trial % 3;
      auto gens = random_gens(rng, n, w, k);
      HowellForm h(n, w, gens, true);
      HowellForm ker = h.left_kernel();
      // |relations| * |span| = n^k
      Int total = 1;
      for (int i = 0; i < k; ++i) total *= n;
      CHECK(ker.span_size() * h.span_size() == total);
      for (const auto& x : ker.enumerate(100000)) {
        ZVec s(w, 0);
        for (std::size_t g = 0; g < gens.size(); ++g)
          for (std::size_t i = 0; i < w; ++i) s[i] = mod(s[i] + x[g] * gens[g][i], n);
        CHECK(s == ZVec(w, 0));
      }
    }
  }
}

TEST_CASE("enumerate respects budget") {
  HowellForm h(2, 12, {{1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}}, false);
  CHECK(h.enumerate(2).size() == 2);
  HowellForm full(7, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK_THROWS_AS(full.enumerate(100), BudgetExceeded);
}
