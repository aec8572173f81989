#include "support.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/expansion.hpp"

#include <catch_amalgamated.hpp>

using namespace stringlink;

namespace {

FreeGroupWord random_word(std::mt19937_64& rng, int n, int length) {
  std::vector<int> s;
  for (int t = 0; t < length; ++t) s.push_back((static_cast<int>(rng() % n) + 1) * (rng() % 2 ? 1 : -1));
  return FreeGroupWord::from_signed(n, s);
}

TensorSeries naive_evaluate(const Expansion& theta, const FreeGroupWord& w) {
  TensorSeries acc = TensorSeries::one(theta.rank(), theta.truncation());
  for (const Letter& l : w.letters())
    acc = acc * (l.exponent > 0 ? theta.value(l.generator) : inverse(theta.value(l.generator)));
  return acc;
}

}  // namespace

TEST_CASE("Magnus expansion is not group-like", "[expansion]") {
  const Expansion m = Expansion::magnus(2, 3);
  CHECK_FALSE(is_grouplike_expansion(m));
  const SpecialReport r = is_special(m);
  CHECK_FALSE(r.grouplike);
  CHECK_FALSE(r.special());
}

TEST_CASE("exponential expansion fails only the normalized condition", "[expansion]") {
  for (int n = 2; n <= 3; ++n) {
    const SpecialReport r = is_special(Expansion::exponential(n, 4));
    CHECK(r.grouplike);
    CHECK(r.tangential);
    CHECK_FALSE(r.normalized);
    CHECK(r.failing_degree == 2);
  }
  CHECK(is_special(Expansion::exponential(1, 4)).special());
}

TEST_CASE("built expansions are special", "[expansion]") {
  for (auto [n, N] : {std::pair{2, 4}, {3, 4}, {2, 6}}) {
    INFO("n=" << n << " N=" << N);
    CHECK(is_special(build_special(n, N)).special());
    CHECK(is_special(build_special(n, N, BuildStrategy::randomized(7))).special());
  }
}

TEST_CASE("randomized builds depend on the seed and are reproducible", "[expansion]") {
  const Expansion a = build_special(3, 4, BuildStrategy::randomized(1));
  CHECK(a == build_special(3, 4, BuildStrategy::randomized(1)));
  CHECK_FALSE(a == build_special(3, 4, BuildStrategy::randomized(2)));
  CHECK_FALSE(a == build_special(3, 4));
}

TEST_CASE("word evaluation matches the naive product", "[expansion]") {
  std::mt19937_64 rng(41);
  const Expansion theta = build_special(3, 5, BuildStrategy::randomized(3));
  for (int t = 0; t < 10; ++t) {
    const auto u = random_word(rng, 3, 12), v = random_word(rng, 3, 9);
    CHECK(evaluate(theta, u) == naive_evaluate(theta, u));
    CHECK(evaluate(theta, u * v) == evaluate(theta, u) * evaluate(theta, v));
  }
}

TEST_CASE("Magnus evaluation matches the independent oracle", "[expansion]") {
  std::mt19937_64 rng(42);
  const Expansion m = Expansion::magnus(3, 4);
  for (int t = 0; t < 10; ++t) {
    const auto w = random_word(rng, 3, 10);
    const TensorSeries value = evaluate(m, w);
    testing::Poly lib;
    for (const auto& [word, c] : value.terms()) lib[word.letters()] = c;
    CHECK(lib == testing::magnus_oracle(w, 4));
  }
}

TEST_CASE("expansion JSON round trip", "[expansion]") {
  const Expansion theta = build_special(2, 4, BuildStrategy::randomized(5));
  CHECK(expansion_from_json(expansion_to_json(theta)) == theta);
  CHECK_THROWS_AS(expansion_from_json("{"), ParseError);
  CHECK_THROWS_AS(expansion_from_json(R"({"n":2,"N":2,"values":[]})"), ParseError);
}

TEST_CASE("expansion values must start with 1 + X_i", "[expansion]") {
  std::vector<TensorSeries> bad{TensorSeries::one(2, 2) + TensorSeries::generator(2, 2, 2),
                                TensorSeries::one(2, 2) + TensorSeries::generator(2, 2, 2)};
  CHECK_THROWS_AS(Expansion(bad), PreconditionError);
}
