#include "support.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/koszul.hpp"

#include <catch_amalgamated.hpp>

using namespace stringlink;

namespace {

ExteriorChain random_chain(std::mt19937_64& rng, const BasisPtr& basis, int p) {
  ExteriorChain x(basis, p);
  for (int t = 0; t < 8; ++t) {
    std::vector<int> idx;
    for (int k = 0; k < p; ++k) idx.push_back(static_cast<int>(rng() % basis->size()));
    x.add_term(idx, Rational(static_cast<long>(rng() % 7) - 3));
  }
  return x;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("nilpotent basis sizes are Witt sums", "[koszul]") {
  for (int n = 2; n <= 3; ++n)
    for (int c = 1; c <= 5; ++c) {
      long long expected = 0;
      for (int d = 1; d <= c; ++d) expected += witt_dim(n, d);
      CHECK(NilpotentBasis::get(n, c)->size() == expected);
    }
}

TEST_CASE("exterior chains are alternating", "[koszul]") {
  const BasisPtr b = NilpotentBasis::get(2, 2);
  ExteriorChain x(b, 2);
  x.add_term({1, 0}, Rational(1));
  CHECK(x.coefficient({0, 1}) == Rational(-1));
  ExteriorChain y(b, 2);
  y.add_term({1, 1}, Rational(1));
  CHECK(y.is_zero());
}

TEST_CASE("boundary of a 2-chain is minus the bracket", "[koszul]") {
  const BasisPtr b = NilpotentBasis::get(2, 2);
  const auto x1 = LieElement::generator(2, 2, 1), x2 = LieElement::generator(2, 2, 2);
  const ExteriorChain d = boundary(ExteriorChain::wedge(b, {x1, x2}));
  CHECK(d == ExteriorChain::wedge(b, {bracket(x1, x2)}) * Rational(-1));
}

TEST_CASE("boundary squares to zero", "[koszul]") {
  std::mt19937_64 rng(71);
  for (int n = 2; n <= 3; ++n)
    for (int c = 1; c <= 4; ++c)
      for (int p = 2; p <= 4; ++p) {
        const BasisPtr b = NilpotentBasis::get(n, c);
        const ExteriorChain x = random_chain(rng, b, p);
        CHECK(boundary(boundary(x)).is_zero());
      }
}

TEST_CASE("homology of the abelian quotient is the exterior algebra", "[koszul]") {
  for (int n = 2; n <= 4; ++n)
    for (int p = 1; p <= 3; ++p) CHECK(Homology::get(p, n, 1)->dim() == binomial(n, p));
}

TEST_CASE("H_3 dimensions of small free nilpotent quotients", "[koszul]") {
  // (n, k) -> dim H_3(L / L_{>=k}) = sum_{l=k}^{2k-2} (n W(n,l) - W(n,l+1)).
  for (auto [n, k] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    long long expected = 0;
    for (int l = k; l <= 2 * k - 2; ++l) expected += n * witt_dim(n, l) - witt_dim(n, l + 1);
    CHECK(Homology::get(3, n, k - 1)->dim() == expected);
  }
}

TEST_CASE("projection of cycles and representatives", "[koszul]") {
  const HomologyPtr h = Homology::get(3, 2, 2);
  REQUIRE(h->dim() == 1);
  const ExteriorChain rep = h->representative(0);
  CHECK(boundary(rep).is_zero());
  const HomologyClass cls = h->project(rep);
  CHECK(cls.coordinates() == std::vector<Rational>{Rational(1)});
  // Adding a boundary does not change the class.
  std::mt19937_64 rng(72);
  const ExteriorChain b4 = boundary(random_chain(rng, h->basis(), 4));
  CHECK(h->project(rep + b4) == cls);
  // X1 ^ X2 ^ X3 has boundary with a [X1,X2] ^ X3 term.
  const HomologyPtr h3 = Homology::get(3, 3, 2);
  ExteriorChain not_cycle(h3->basis(), 3);
  not_cycle.add_term({0, 1, 2}, Rational(1));
  REQUIRE_FALSE(boundary(not_cycle).is_zero());
  CHECK_THROWS_AS(h3->project(not_cycle), PreconditionError);
}

TEST_CASE("fingerprints identify homology bases", "[koszul]") {
  CHECK(Homology::get(3, 3, 2)->fingerprint() == Homology::get(3, 3, 2)->fingerprint());
  CHECK(Homology::get(3, 3, 2)->fingerprint() != Homology::get(3, 2, 2)->fingerprint());
}
