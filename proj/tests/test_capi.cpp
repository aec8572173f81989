// Exercises the shared library through the C interface only.
#include "stringlink.h"

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <regex>
#include <string>

using json = nlohmann::ordered_json;

namespace {

struct Input {
  sl_input* p = nullptr;
  ~Input() { sl_input_free(p); }
};
struct Exp {
  sl_expansion* p = nullptr;
  ~Exp() { sl_expansion_free(p); }
};

std::string take(char* raw) {
  std::string s(raw);
  sl_free_string(raw);
  return s;
}

// Every rational in the document is "p/q" in lowest terms with q > 0.
void check_rationals(const json& j) {
  static const std::regex pattern("^-?(0|[1-9][0-9]*)/[1-9][0-9]*$");
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if ((key == "coefficient" || key == "value") && value.is_string()) {
        const std::string s = value.get<std::string>();
        INFO(s);
        REQUIRE(std::regex_match(s, pattern));
        const auto slash = s.find('/');
        const long long p = std::stoll(s.substr(0, slash)), q = std::stoll(s.substr(slash + 1));
        long long a = p < 0 ? -p : p, b = q;
        while (b) {
          a %= b;
          std::swap(a, b);
        }
        CHECK((p == 0 ? q == 1 : a == 1));
      } else {
        check_rationals(value);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) check_rationals(v);
  }
}

json milnor(const char* braid, int n, sl_milnor_mode mode, int k, int N) {
  Input in;
  REQUIRE(sl_input_from_braid(braid, n, &in.p) == SL_OK);
  char* raw = nullptr;
  REQUIRE(sl_milnor(in.p, nullptr, mode, k, N, &raw) == SL_OK);
  json doc = json::parse(take(raw));
  check_rationals(doc);
  return doc;
}

}  // namespace

TEST_CASE("linking invariant of A(1,2)", "[capi]") {
  const json doc = milnor("A(1,2)", 2, SL_MILNOR_DEGREE, 1, 0);
  REQUIRE(doc["entries"].size() == 2);
  CHECK(doc["entries"][0]["i"] == 1);
  CHECK(doc["entries"][0]["bracketing"] == "X2");
  CHECK(doc["entries"][0]["coefficient"] == "1/1");
  CHECK(doc["entries"][1]["i"] == 2);
  CHECK(doc["entries"][1]["bracketing"] == "X1");
  CHECK(doc["entries"][1]["coefficient"] == "1/1");
  CHECK(doc["expansion"]["strategy"] == "canonical");
}

TEST_CASE("trivial braid has zero invariant", "[capi]") {
  const json doc = milnor("", 2, SL_MILNOR_TOTAL, 0, 4);
  CHECK(doc["zero"] == true);
  CHECK(doc["entries"].empty());
}

TEST_CASE("error codes and messages", "[capi]") {
  Input in;
  CHECK(sl_input_from_braid("A(1,2", 2, &in.p) == SL_ERR_PARSE);
  CHECK(std::string(sl_last_error()).find("column") != std::string::npos);
  CHECK(sl_input_from_braid(nullptr, 2, &in.p) == SL_ERR_INVALID_ARGUMENT);
  REQUIRE(sl_input_from_braid("A(1,2)", 2, &in.p) == SL_OK);
  char* raw = nullptr;
  CHECK(sl_milnor(in.p, nullptr, SL_MILNOR_DEGREE, 2, 0, &raw) == SL_ERR_PRECONDITION);
  CHECK(std::string(sl_last_error()).find("filtration") != std::string::npos);
  CHECK(sl_morita(in.p, nullptr, 1, &raw) == SL_ERR_PRECONDITION);
  CHECK(sl_homology(2, 1, &raw) == SL_ERR_PRECONDITION);
}

TEST_CASE("expansion documents round trip", "[capi]") {
  Exp e;
  REQUIRE(sl_expansion_build(2, 4, SL_STRATEGY_RANDOMIZED, 9, &e.p) == SL_OK);
  CHECK(sl_expansion_truncation(e.p) == 4);
  char* raw = nullptr;
  REQUIRE(sl_expansion_to_json(e.p, &raw) == SL_OK);
  const std::string text = take(raw);
  const json doc = json::parse(text);
  check_rationals(doc);
  CHECK(doc["expansion"]["seed"] == 9);
  Exp back;
  REQUIRE(sl_expansion_from_json(text.c_str(), &back.p) == SL_OK);
  REQUIRE(sl_expansion_to_json(back.p, &raw) == SL_OK);
  json again = json::parse(take(raw));
  CHECK(again["values"] == doc["values"]);
  REQUIRE(sl_expansion_check(back.p, &raw) == SL_OK);
  CHECK(json::parse(take(raw))["special"] == true);
  CHECK(sl_expansion_from_json("{\"n\":", &back.p) == SL_ERR_PARSE);
}

TEST_CASE("user expansion must be large enough", "[capi]") {
  Exp e;
  REQUIRE(sl_expansion_build(3, 2, SL_STRATEGY_CANONICAL, 0, &e.p) == SL_OK);
  Input in;
  REQUIRE(sl_input_from_braid("[A(1,2),A(1,3)]", 3, &in.p) == SL_OK);
  char* raw = nullptr;
  CHECK(sl_milnor(in.p, e.p, SL_MILNOR_DEGREE, 2, 0, &raw) == SL_ERR_PRECONDITION);
  Exp wrong_rank;
  REQUIRE(sl_expansion_build(2, 4, SL_STRATEGY_CANONICAL, 0, &wrong_rank.p) == SL_OK);
  CHECK(sl_milnor(in.p, wrong_rank.p, SL_MILNOR_DEGREE, 2, 0, &raw) == SL_ERR_PRECONDITION);
}

TEST_CASE("longitudes round trip through the tuple format", "[capi]") {
  Input in;
  REQUIRE(sl_input_from_braid("[A(1,2),A(1,3)]", 3, &in.p) == SL_OK);
  char* raw = nullptr;
  REQUIRE(sl_longitudes(in.p, &raw) == SL_OK);
  const json doc = json::parse(take(raw));
  Input tuple;
  REQUIRE(sl_input_from_longitudes(doc["tuple"].dump().c_str(), &tuple.p) == SL_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(sl_milnor(in.p, nullptr, SL_MILNOR_TRUNCATED, 2, 0, &a) == SL_OK);
  REQUIRE(sl_milnor(tuple.p, nullptr, SL_MILNOR_TRUNCATED, 2, 0, &b) == SL_OK);
  CHECK(json::parse(take(a))["entries"] == json::parse(take(b))["entries"]);
  int level = 0;
  REQUIRE(sl_milnor_level(tuple.p, 5, &level) == SL_OK);
  CHECK(level == 2);
}

TEST_CASE("homology table", "[capi]") {
  char* raw = nullptr;
  REQUIRE(sl_homology(3, 2, &raw) == SL_OK);
  const json doc = json::parse(take(raw));
  int total = 0;
  for (const auto& r : doc["rows"]) total += r["dimH"].get<int>();
  CHECK(total == 1);
  CHECK(doc["homology"]["dim"] == 1);
  CHECK(doc["sumDimD"] == 1);
  CHECK(doc["phiRank"] == 1);
  CHECK(doc["homology"]["fingerprint"].get<std::string>().size() == 16);
}

TEST_CASE("Morita report and verify suite", "[capi]") {
  Input in;
  REQUIRE(sl_input_from_braid("[A(1,2),A(1,3)]", 3, &in.p) == SL_OK);
  char* raw = nullptr;
  REQUIRE(sl_morita(in.p, nullptr, 1, &raw) == SL_OK);
  const json doc = json::parse(take(raw));
  check_rationals(doc);
  CHECK(doc["zero"] == false);
  CHECK(doc["sigmaIsCycle"] == true);
  CHECK(doc["pivotIndependent"] == true);
  CHECK(doc["diagramCommutes"] == true);
  CHECK(doc["d2MatchesMilnor"] == true);
  int passed = 0;
  REQUIRE(sl_verify(in.p, 2, 5, &passed, &raw) == SL_OK);
  const json v = json::parse(take(raw));
  CHECK(passed == 1);
  CHECK(v["passed"] == true);
  CHECK(v["checks"].size() >= 10);
}

TEST_CASE("trees output carries DOT text", "[capi]") {
  Input in;
  REQUIRE(sl_input_from_braid("[A(1,2),A(1,3)]", 3, &in.p) == SL_OK);
  char* raw = nullptr;
  REQUIRE(sl_trees(in.p, nullptr, 2, &raw) == SL_OK);
  const json doc = json::parse(take(raw));
  check_rationals(doc);
  REQUIRE_FALSE(doc["trees"].empty());
  for (const auto& t : doc["trees"]) CHECK(t["dot"].get<std::string>().rfind("digraph", 0) == 0);
}

TEST_CASE("outputs are deterministic", "[capi]") {
  Input in;
  REQUIRE(sl_input_from_braid("[A(1,2),[A(1,2),A(1,3)]]", 3, &in.p) == SL_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(sl_milnor(in.p, nullptr, SL_MILNOR_TRUNCATED, 3, 0, &a) == SL_OK);
  REQUIRE(sl_milnor(in.p, nullptr, SL_MILNOR_TRUNCATED, 3, 0, &b) == SL_OK);
  CHECK(take(a) == take(b));
}
