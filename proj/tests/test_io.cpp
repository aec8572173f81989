#include "support.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/io.hpp"

#include <catch_amalgamated.hpp>

using namespace stringlink;
using testing::A;

TEST_CASE("braid grammar", "[io]") {
  CHECK(parse_braid("", 3) == BraidWord(3));
  CHECK(parse_braid("  A(1,2)  A(2, 3)^-1 ", 3) == A(3, 1, 2) * A(3, 2, 3).inverse());
  CHECK(parse_braid("A(1,2)^3", 2) == A(2, 1, 2).power(3));
  CHECK(parse_braid("A(1,2)^-2", 2) == A(2, 1, 2).power(-2));
  CHECK(parse_braid("[A(1,2),A(1,3)]", 3) == commutator(A(3, 1, 2), A(3, 1, 3)));
  CHECK(parse_braid("[A(1,2), [A(1,2), A(1,3)]]^2", 3) ==
        commutator(A(3, 1, 2), commutator(A(3, 1, 2), A(3, 1, 3))).power(2));
}

TEST_CASE("braid syntax errors", "[io]") {
  for (const char* bad : {"A(1,2", "A(2,1)", "A(1,4)", "B(1,2)", "[A(1,2)]", "A(1,2)^", "A(1,2)^5000", "A(1,1)"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_braid(bad, 3), ParseError);
  }
}

TEST_CASE("longitude tuple JSON", "[io]") {
  const LongitudeTuple y = longitudes(commutator(A(3, 1, 2), A(3, 1, 3)));
  CHECK(parse_longitude_tuple(longitude_tuple_to_json(y)) == y);
  CHECK_THROWS_AS(parse_longitude_tuple("{\"n\": 2"), ParseError);
  CHECK_THROWS_AS(parse_longitude_tuple(R"({"n": 2, "words": [[2], []]})"), PreconditionError);
  const LongitudeTuple t = parse_longitude_tuple(R"({"n": 2, "K": 1, "words": [[2], []]})");
  CHECK(t.truncation() == 1);
}

TEST_CASE("rationals print in lowest terms", "[io]") {
  CHECK(to_string(testing::q(6, -4)) == "-3/2");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(to_string(Rational(5)) == "5/1");
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}
