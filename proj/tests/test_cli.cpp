// Runs the command-line tool as a subprocess.
#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " STRINGLINK_CLI " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("stringlink_cli_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("milnor on A(1,2) gives the linking form", "[cli]") {
  const Result r = run("milnor --braid 'A(1,2)' --n 2 --k 1");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  bool x1x2 = false, x2x1 = false;
  for (const auto& e : doc["entries"]) {
    if (e["i"] == 1 && e["bracketing"] == "X2" && e["coefficient"] == "1/1") x1x2 = true;
    if (e["i"] == 2 && e["bracketing"] == "X1" && e["coefficient"] == "1/1") x2x1 = true;
  }
  CHECK(x1x2);
  CHECK(x2x1);
}

TEST_CASE("empty braid gives the zero invariant", "[cli]") {
  const Result r = run("milnor --braid ''");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["zero"] == true);
}

TEST_CASE("homology table matches dim D_2", "[cli]") {
  const Result r = run("homology --n 3 --k 2");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() >= 1);
  int total = 0;
  for (const auto& row : doc["rows"]) total += row["dimH"].get<int>();
  CHECK(total == doc["sumDimD"].get<int>());
  CHECK(total == 1);
  const Result text = run("homology --n 3 --k 2 --format text");
  CHECK(text.out.find("total dim H_3 = 1") != std::string::npos);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(run("milnor --braid 'A(1,2' --n 2").code == 2);
  CHECK(run("milnor --braid 'A(1,2)' --n 2 --k 2").code == 3);
  CHECK(run("morita --braid '[A(1,2),A(1,3)]' --n 3 --k 1 --N 2").code == 3);
  CHECK(run("milnor --bogus").code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("expansion files feed later jobs", "[cli]") {
  const auto dir = scratch("expansion");
  const std::string file = (dir / "theta.json").string();
  REQUIRE(run("expansion build --n 3 --N 4 --expansion random --seed 11 --output " + file).code == 0);
  CHECK(run("expansion check --file " + file).code == 0);
  const Result r = run("milnor --braid '[A(1,2),A(1,3)]' --n 3 --k 2 --expansion " + file);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["expansion"]["strategy"] == "file");
  const Result random = run("milnor --braid '[A(1,2),A(1,3)]' --n 3 --k 2 --expansion random --seed 4");
  REQUIRE(random.code == 0);
  CHECK(json::parse(random.out)["expansion"]["seed"] == 4);
  CHECK(json::parse(random.out)["entries"] == json::parse(r.out)["entries"]);
}

TEST_CASE("trees writes DOT files to the output directory", "[cli]") {
  const auto dir = scratch("trees");
  const Result r = run("trees --braid '[A(1,2),A(1,3)]' --n 3 --k 2", "STRINGLINK_OUTPUT_DIR=" + dir.string());
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE_FALSE(doc["trees"].empty());
  for (const auto& t : doc["trees"]) CHECK(std::filesystem::exists(dir / (t["name"].get<std::string>() + ".dot")));
  const Result dot = run("trees --braid '[A(1,2),A(1,3)]' --n 3 --k 2 --format dot");
  CHECK(dot.out.rfind("digraph", 0) == 0);
}

TEST_CASE("longitudes, level, morita and verify", "[cli]") {
  const auto dir = scratch("tuple");
  const Result l = run("longitudes --braid '[A(1,2),A(1,3)]' --n 3");
  REQUIRE(l.code == 0);
  const std::string file = (dir / "tuple.json").string();
  {
    FILE* f = std::fopen(file.c_str(), "w");
    REQUIRE(f != nullptr);
    const std::string tuple = json::parse(l.out)["tuple"].dump();
    std::fwrite(tuple.data(), 1, tuple.size(), f);
    std::fclose(f);
  }
  const Result level = run("level --longitudes " + file + " --format text");
  REQUIRE(level.code == 0);
  CHECK(level.out == "2\n");
  const Result m = run("morita --longitudes " + file + " --k 1");
  REQUIRE(m.code == 0);
  CHECK(json::parse(m.out)["diagramCommutes"] == true);
  const Result v = run("verify --braid '[A(1,2),A(1,3)]' --n 3 --k 2 --format text");
  CHECK(v.code == 0);
  CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("output is byte-for-byte reproducible", "[cli]") {
  const std::string args = "milnor --braid '[A(1,2),[A(1,2),A(1,3)]]' --n 3 --k 3 --mode truncated --expansion random --seed 8";
  const Result a = run(args), b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}
