#include "support.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/morita.hpp"

#include <catch_amalgamated.hpp>

using namespace stringlink;
using testing::A;

TEST_CASE("Morita class of [A12,A13] at k = 1", "[morita]") {
  // sigma() lives in class 2k+1 and needs truncation 2k+2.
  const Expansion theta = build_special(3, 4);
  const BraidWord l = commutator(A(3, 1, 2), A(3, 1, 3));
  const MoritaInput in = make_morita_input(l, theta, 1);
  CHECK(boundary(sigma(in)).is_zero());
  const HomologyClass cls = morita_milnor(in);
  CHECK_FALSE(cls.is_zero());
  CHECK(morita_milnor(in, PivotOrder::Reverse) == cls);
  CHECK(verify_commutative_diagram(in).commutes);
  CHECK(d2_composition(cls, 1) == total_milnor(l, theta, 3).degree_part(2));
}

TEST_CASE("Morita class is additive", "[morita]") {
  const Expansion theta = build_special(3, 3, BuildStrategy::randomized(3));
  std::mt19937_64 rng(81);
  for (int t = 0; t < 3; ++t) {
    const BraidWord a = testing::random_commutator_braid(rng, 3, 2), b = testing::random_commutator_braid(rng, 3, 2);
    const HomologyClass ca = morita_milnor(make_morita_input(a, theta, 1));
    const HomologyClass cb = morita_milnor(make_morita_input(b, theta, 1));
    CHECK(morita_milnor(make_morita_input(a * b, theta, 1)) == ca + cb);
  }
}

TEST_CASE("deeper braids give the zero class", "[morita]") {
  const Expansion theta = build_special(3, 3);
  const BraidWord l = commutator(A(3, 1, 2), commutator(A(3, 1, 2), A(3, 1, 3)));
  CHECK(morita_milnor(make_morita_input(l, theta, 1)).is_zero());
}

TEST_CASE("Morita preconditions", "[morita]") {
  const Expansion theta = build_special(3, 3);
  CHECK_THROWS_AS(make_morita_input(A(3, 1, 2), theta, 1), FiltrationError);
  CHECK_THROWS_AS(make_morita_input(commutator(A(3, 1, 2), A(3, 1, 3)), build_special(3, 2), 1), PreconditionError);
  const BasisPtr b = NilpotentBasis::get(2, 2);
  ExteriorChain not_cycle(b, 2);
  not_cycle.add_term({0, 1}, Rational(1));
  CHECK_THROWS_AS(solve_boundary(not_cycle), PreconditionError);
}

TEST_CASE("solve_boundary inverts the boundary on boundaries", "[morita]") {
  const BasisPtr b = NilpotentBasis::get(3, 3);
  std::mt19937_64 rng(82);
  for (int t = 0; t < 5; ++t) {
    ExteriorChain x(b, 3);
    for (int s = 0; s < 4; ++s)
      x.add_term({static_cast<int>(rng() % b->size()), static_cast<int>(rng() % b->size()),
                  static_cast<int>(rng() % b->size())},
                 Rational(static_cast<long>(rng() % 5) - 2));
    const ExteriorChain target = boundary(x);
    for (PivotOrder order : {PivotOrder::Forward, PivotOrder::Reverse})
      CHECK(boundary(solve_boundary(target, order)) == target);
  }
}
