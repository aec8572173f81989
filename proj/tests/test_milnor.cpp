#include "support.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/milnor.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace stringlink;
using testing::A;

namespace {

// sum_i X_i (x) Y_i as polynomials, Y_i in degree d from the Magnus
// expansion of the longitude words.
std::vector<testing::Poly> magnus_milnor(const BraidWord& b, int d) {
  const LongitudeTuple y = longitudes(b);
  std::vector<testing::Poly> out;
  for (int i = 1; i <= b.strands(); ++i) out.push_back(testing::degree_part(testing::magnus_oracle(y.word(i), d), d));
  return out;
}

std::vector<testing::Poly> as_polys(const HTensorLie& x) {
  std::vector<testing::Poly> out;
  for (int i = 1; i <= x.rank(); ++i) out.push_back(testing::to_poly(x.entry(i)));
  return out;
}

}  // namespace

TEST_CASE("conjugator recovers Y from exp(Y) X_i exp(-Y)", "[milnor]") {
  std::mt19937_64 rng(51);
  const int n = 3, N = 5;
  for (int t = 0; t < 10; ++t) {
    const int i = static_cast<int>(rng() % n) + 1;
    LieElement y(n, N - 1);
    for (int d = 1; d < N; ++d)
      for (const Word& w : lyndon_basis(n, d))
        if (w != Word::letter(i) && rng() % 2) y.add_term(w, Rational(static_cast<long>(rng() % 5) - 2));
    const TensorSeries ey = exp(to_tensor(y, N));
    const TensorSeries w = ey * exp(TensorSeries::generator(n, N, i)) * inverse(ey);
    CHECK(conjugator(w, i) == y);
  }
  const TensorSeries x2 = exp(TensorSeries::generator(2, 3, 2));
  CHECK_THROWS_AS(conjugator(x2, 1), PreconditionError);
}

TEST_CASE("degree-1 invariant of A(i,j) is the linking form", "[milnor]") {
  const Expansion theta = build_special(4, 2);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      HTensorLie expected(4, 1);
      expected.add_term(i, Word{j}, Rational(1));
      expected.add_term(j, Word{i}, Rational(1));
      CHECK(milnor_degree_k(A(4, i, j), theta, 1) == expected);
    }
}

TEST_CASE("lowest-degree invariant matches the Magnus oracle", "[milnor]") {
  std::mt19937_64 rng(52);
  const Expansion theta = build_special(3, 4, BuildStrategy::randomized(9));
  // Longitudes grow quickly with nesting, so level 3 uses single letters.
  for (int level = 1; level <= 3; ++level)
    for (int t = 0; t < 3; ++t) {
      const BraidWord b = testing::random_commutator_braid(rng, 3, level, level == 3 ? 1 : 2);
      INFO(b.to_string());
      CHECK(as_polys(milnor_degree_k(b, theta, level)) == magnus_milnor(b, level));
    }
  const BraidWord c = commutator(A(3, 1, 2), commutator(A(3, 1, 2), A(3, 1, 3)));
  const auto expected = magnus_milnor(c, 3);
  CHECK(std::any_of(expected.begin(), expected.end(), [](const auto& p) { return !p.empty(); }));
  CHECK(as_polys(milnor_degree_k(c, theta, 3)) == expected);
}

TEST_CASE("braid route and longitude route agree", "[milnor]") {
  std::mt19937_64 rng(53);
  const Expansion theta = build_special(3, 4, BuildStrategy::randomized(4));
  for (int t = 0; t < 5; ++t) {
    const BraidWord b = testing::random_braid(rng, 3, 4);
    CHECK(art_theta(b, theta, 4) == art_theta(longitudes(b), theta, 4));
    const auto images = artin_images(b, theta);
    const LongitudeTuple y = longitudes(b);
    for (int j = 1; j <= 3; ++j) CHECK(images[j - 1] == evaluate(theta, y.image(j)));
  }
}

TEST_CASE("Art^theta is special and functorial", "[milnor]") {
  std::mt19937_64 rng(54);
  const Expansion theta = build_special(3, 4);
  for (int t = 0; t < 5; ++t) {
    const BraidWord a = testing::random_braid(rng, 3, 3), b = testing::random_braid(rng, 3, 3);
    const SpecialAutData fa = art_theta(a, theta, 4), fb = art_theta(b, theta, 4);
    CHECK(fa.normalized());
    CHECK(fa.fixes_boundary());
    CHECK(art_theta(a * b, theta, 4) == fa.compose(fb));
    // psi(theta(w)) = theta(Art(w)) on a sample word.
    const auto w = FreeGroupWord::from_signed(3, std::vector<int>{1, -2, 3, 2});
    CHECK(fa.apply(evaluate(theta, w)) == evaluate(theta, artin_action(a, w)));
  }
}

TEST_CASE("filtration violations are reported", "[milnor]") {
  const Expansion theta = build_special(2, 4);
  CHECK_THROWS_AS(milnor_degree_k(A(2, 1, 2), theta, 2), FiltrationError);
  try {
    truncated_milnor(A(2, 1, 2), theta, 2);
    FAIL("expected a filtration error");
  } catch (const FiltrationError& e) {
    CHECK(e.required_level() == 2);
    CHECK(e.first_nonzero_degree() == 1);
  }
  CHECK(total_milnor(BraidWord(2), theta, 4).is_zero());
}

TEST_CASE("non-special and undersized expansions are rejected", "[milnor]") {
  CHECK_THROWS_AS(art_theta(A(2, 1, 2), Expansion::exponential(2, 3), 3), PreconditionError);
  CHECK_THROWS_AS(art_theta(A(2, 1, 2), build_special(2, 2), 3), PreconditionError);
  const LongitudeTuple y = longitudes(A(2, 1, 2));
  const LongitudeTuple truncated = LongitudeTuple::from_words(2, y.words(), 2);
  CHECK_NOTHROW(art_theta(truncated, build_special(2, 3), 2));
  CHECK_THROWS_AS(art_theta(truncated, build_special(2, 3), 3), PreconditionError);
}
