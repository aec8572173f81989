#include "support.hpp"

#include "stringlink/errors.hpp"

#include <catch_amalgamated.hpp>

using namespace stringlink;
using testing::A;

namespace {

BraidWord inv(const BraidWord& b) { return b.inverse(); }

void require_same_action(const BraidWord& lhs, const BraidWord& rhs) {
  const auto a = artin(lhs), b = artin(rhs);
  for (int k = 1; k <= lhs.strands(); ++k) {
    INFO("generator x" << k << ": " << a.image(k).to_string() << " vs " << b.image(k).to_string());
    REQUIRE(a.image(k) == b.image(k));
  }
}

}  // namespace

TEST_CASE("free reduction cancels inverse pairs", "[freegroup]") {
  const FreeGroupWord w(3, {{1, 1}, {2, 1}, {2, -1}, {1, -1}, {3, 1}});
  CHECK(w.to_signed() == std::vector<int>{3});
  const auto x = FreeGroupWord::from_signed(3, std::vector<int>{1, -2, 3});
  CHECK((x * x.inverse()).empty());
  CHECK(x.to_string() == "x1 x2^-1 x3");
  CHECK(FreeGroupWord(2).to_string() == "1");
  CHECK_THROWS_AS(FreeGroupWord::from_signed(2, std::vector<int>{3}), PreconditionError);
}

TEST_CASE("pure braid relations hold on n = 4", "[freegroup]") {
  const int n = 4;
  int checked = 0;
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s)
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const BraidWord lhs = A(n, r, s) * A(n, i, j) * inv(A(n, r, s));
          std::optional<BraidWord> rhs;
          if (s < i || (i < r && s < j)) {
            rhs = A(n, i, j);
          } else if (s == i) {
            rhs = inv(A(n, r, j)) * A(n, i, j) * A(n, r, j);
          } else if (i == r && s < j) {
            rhs = inv(A(n, r, j)) * inv(A(n, s, j)) * A(n, i, j) * A(n, s, j) * A(n, r, j);
          } else if (r < i && i < s && s < j) {
            rhs = inv(A(n, r, j)) * inv(A(n, s, j)) * A(n, r, j) * A(n, s, j) * A(n, i, j) * inv(A(n, s, j)) *
                  inv(A(n, r, j)) * A(n, s, j) * A(n, r, j);
          }
          if (!rhs) continue;
          INFO("r=" << r << " s=" << s << " i=" << i << " j=" << j);
          require_same_action(lhs, *rhs);
          ++checked;
        }
  CHECK(checked > 0);
}

TEST_CASE("Art is multiplicative and fixes the boundary word", "[freegroup]") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const BraidWord a = testing::random_braid(rng, 4, 5), b = testing::random_braid(rng, 4, 5);
    CHECK(artin(a * b) == artin(a).compose(artin(b)));
    CHECK(artin(a * a.inverse()) == FreeGroupEndomorphism(4));
    CHECK(artin(a).apply(boundary_word(4)) == boundary_word(4));
  }
}

TEST_CASE("longitudes reconstruct the action with normalized exponents", "[freegroup]") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const BraidWord b = testing::random_braid(rng, 3, 6);
    const LongitudeTuple y = longitudes(b);
    const auto art = artin(b);
    for (int i = 1; i <= 3; ++i) {
      CHECK(y.image(i) == art.image(i));
      CHECK(y.word(i).exponent_sum(i) == 0);
    }
  }
}

TEST_CASE("linking numbers of A(i,j) are read off the longitudes", "[freegroup]") {
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      const LongitudeTuple y = longitudes(A(4, i, j));
      for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) {
          if (a == b) continue;
          const int expected = ((a == i && b == j) || (a == j && b == i)) ? 1 : 0;
          CHECK(y.word(a).exponent_sum(b) == expected);
        }
    }
}

TEST_CASE("conjugating_word rejects non-conjugates", "[freegroup]") {
  const auto w = FreeGroupWord::from_signed(2, std::vector<int>{1, 2});
  CHECK_FALSE(conjugating_word(w, 1).has_value());
  const auto c = FreeGroupWord::from_signed(2, std::vector<int>{2, 1, -2});
  const auto y = conjugating_word(c, 1);
  REQUIRE(y.has_value());
  CHECK(*y * FreeGroupWord::generator(2, 1) * y->inverse() == c);
}

TEST_CASE("milnor_level of iterated commutators", "[freegroup]") {
  const BraidWord a = A(3, 1, 2), b = A(3, 1, 3);
  CHECK(milnor_level(BraidWord(3), 6) == 6);
  CHECK(milnor_level(a, 6) == 1);
  CHECK(milnor_level(commutator(a, b), 6) == 2);
  CHECK(milnor_level(commutator(a, commutator(a, b)), 6) == 3);
}

TEST_CASE("longitude tuples are validated", "[freegroup]") {
  const LongitudeTuple y = longitudes(A(2, 1, 2));
  CHECK(LongitudeTuple::from_words(2, y.words()) == y);
  std::vector<FreeGroupWord> bad{FreeGroupWord::generator(2, 2), FreeGroupWord(2)};
  CHECK_THROWS_AS(LongitudeTuple::from_words(2, bad), PreconditionError);
  // Not normalized: exponent sum of x1 in y_1 is nonzero.
  std::vector<FreeGroupWord> unnormalized{FreeGroupWord::generator(2, 1), FreeGroupWord(2)};
  CHECK_THROWS_AS(LongitudeTuple::from_words(2, unnormalized), PreconditionError);
}
