// Command-line front end. Talks to the library through the C API only.
#include "stringlink.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kPrecondition = 3, kInternal = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_code(sl_status s) {
  switch (s) {
    case SL_OK: return kOk;
    case SL_ERR_PARSE: return kParse;
    case SL_ERR_PRECONDITION: return kPrecondition;
    case SL_ERR_INVALID_ARGUMENT: return kUsage;
    default: return kInternal;
  }
}

void check(sl_status s) {
  if (s != SL_OK) throw Failure{exit_code(s), sl_last_error()};
}

struct InputDeleter {
  void operator()(sl_input* p) const { sl_input_free(p); }
};
struct ExpansionDeleter {
  void operator()(sl_expansion* p) const { sl_expansion_free(p); }
};
using InputPtr = std::unique_ptr<sl_input, InputDeleter>;
using ExpansionPtr = std::unique_ptr<sl_expansion, ExpansionDeleter>;

json take_json(char* raw) {
  std::string text(raw);
  sl_free_string(raw);
  return json::parse(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Config {
  std::optional<std::string> braid;
  std::string longitudes_file;
  int n = 2;
  int k = 1;
  std::optional<int> N;
  std::string mode;
  std::string expansion = "canonical";
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_dir;
  std::string expansion_file;
  int max_k = 8;
};

InputPtr load_input(const Config& c) {
  sl_input* raw = nullptr;
  if (!c.longitudes_file.empty()) {
    check(sl_input_from_longitudes(read_file(c.longitudes_file).c_str(), &raw));
  } else if (c.braid) {
    check(sl_input_from_braid(c.braid->c_str(), c.n, &raw));
  } else {
    throw Failure{kUsage, "one of --braid or --longitudes is required"};
  }
  return InputPtr(raw);
}

// nullptr means "canonical, built at whatever truncation the job needs".
ExpansionPtr load_expansion(const Config& c, int n, int required_N) {
  sl_expansion* raw = nullptr;
  if (c.expansion == "canonical") {
    if (!c.N) return nullptr;
    check(sl_expansion_build(n, *c.N, SL_STRATEGY_CANONICAL, 0, &raw));
  } else if (c.expansion == "random") {
    check(sl_expansion_build(n, c.N.value_or(required_N), SL_STRATEGY_RANDOMIZED, c.seed, &raw));
  } else {
    check(sl_expansion_from_json(read_file(c.expansion).c_str(), &raw));
  }
  return ExpansionPtr(raw);
}

std::string render_entries(const json& entries) {
  if (entries.empty()) return "0\n";
  std::string out;
  for (const auto& e : entries)
    out += "X" + std::to_string(e["i"].get<int>()) + " (x) " + e["coefficient"].get<std::string>() + " " +
           e["bracketing"].get<std::string>() + "\n";
  return out;
}

std::string render_text(const json& doc) {
  const std::string cmd = doc.value("command", "");
  std::ostringstream out;
  if (cmd == "milnor") {
    out << "# milnor " << doc["mode"].get<std::string>() << " n=" << doc["n"] << " expansion="
        << doc["expansion"].dump() << "\n";
    out << render_entries(doc["entries"]);
  } else if (cmd == "longitudes") {
    for (const auto& w : doc["longitudes"]) out << "y" << w["i"] << " = " << w["text"].get<std::string>() << "\n";
  } else if (cmd == "homology") {
    out << "# H_3(L/L_{>=" << doc["k"] << "}) n=" << doc["n"] << " fingerprint="
        << doc["homology"]["fingerprint"].get<std::string>() << "\n";
    out << "degree\tchains\tkernel\timage\tdimH\n";
    for (const auto& r : doc["rows"])
      out << r["degree"] << "\t" << r["dimChains"] << "\t" << r["dimKernel"] << "\t" << r["dimImage"] << "\t"
          << r["dimH"] << "\n";
    out << "total dim H_3 = " << doc["homology"]["dim"] << "\n";
    out << "sum dim D_l = " << doc["sumDimD"] << "\n";
    if (!doc["phiRank"].is_null()) out << "rank Phi = " << doc["phiRank"] << "\n";
  } else if (cmd == "trees") {
    for (const auto& t : doc["trees"])
      out << t["coefficient"].get<std::string>() << " * " << t["code"].dump() << " (degree " << t["degree"]
          << ")\n";
    if (doc["trees"].empty()) out << "0\n";
  } else if (cmd == "morita") {
    out << "# homology fingerprint=" << doc["homology"]["fingerprint"].get<std::string>() << " dim="
        << doc["homology"]["dim"] << "\n";
    for (const auto& c : doc["coordinates"])
      if (c["value"].get<std::string>() != "0/1")
        out << "e" << c["index"] << " (degree " << c["degree"] << ") : " << c["value"].get<std::string>() << "\n";
    if (doc["zero"].get<bool>()) out << "zero class\n";
    out << "sigma cycle: " << doc["sigmaIsCycle"] << "\n";
    out << "pivot independent: " << doc["pivotIndependent"] << "\n";
    out << "diagram commutes: " << doc["diagramCommutes"] << "\n";
    out << "d2 = mu_{k+1}: " << doc["d2MatchesMilnor"] << "\n";
  } else if (cmd == "verify") {
    for (const auto& c : doc["checks"]) {
      out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
      if (c.contains("detail")) out << " : " << c["detail"].get<std::string>();
      out << "\n";
    }
  } else if (cmd == "expansion check") {
    out << "grouplike: " << doc["grouplike"] << "\ntangential: " << doc["tangential"]
        << "\nnormalized: " << doc["normalized"] << "\nspecial: " << doc["special"] << "\n";
    if (!doc["special"].get<bool>()) out << "diagnostic: " << doc["diagnostic"].get<std::string>() << "\n";
  } else {
    out << doc.dump(2) << "\n";
  }
  return out.str();
}

void print(const json& doc, const std::string& format) {
  if (format == "text") std::cout << render_text(doc);
  else std::cout << doc.dump(2) << "\n";
}

std::string output_dir(const Config& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("STRINGLINK_OUTPUT_DIR")) return env;
  return {};
}

int run_milnor(const Config& c) {
  InputPtr in = load_input(c);
  const int n = sl_input_rank(in.get());
  std::string mode = c.mode.empty() ? (c.N ? "total" : "degree") : c.mode;
  sl_milnor_mode m;
  int required;
  if (mode == "total") {
    if (!c.N) throw Failure{kUsage, "--mode total needs --N"};
    m = SL_MILNOR_TOTAL;
    required = *c.N;
  } else if (mode == "degree") {
    m = SL_MILNOR_DEGREE;
    required = c.k + 1;
  } else {
    m = SL_MILNOR_TRUNCATED;
    required = 2 * c.k;
  }
  ExpansionPtr e = load_expansion(c, n, required);
  char* raw = nullptr;
  check(sl_milnor(in.get(), e.get(), m, c.k, c.N.value_or(0), &raw));
  print(take_json(raw), c.format);
  return kOk;
}

int run_trees(const Config& c) {
  InputPtr in = load_input(c);
  ExpansionPtr e = load_expansion(c, sl_input_rank(in.get()), 2 * c.k);
  char* raw = nullptr;
  check(sl_trees(in.get(), e.get(), c.k, &raw));
  const json doc = take_json(raw);
  const std::string dir = output_dir(c);
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    for (const auto& t : doc["trees"]) {
      const auto path = std::filesystem::path(dir) / (t["name"].get<std::string>() + ".dot");
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Failure{kUsage, "cannot write " + path.string()};
      f << t["dot"].get<std::string>();
    }
  }
  if (c.format == "dot") {
    for (const auto& t : doc["trees"]) std::cout << t["dot"].get<std::string>();
  } else {
    print(doc, c.format);
  }
  return kOk;
}

int run_morita(const Config& c) {
  if (c.N && *c.N < 2 * c.k + 1) throw Failure{kPrecondition, "morita needs --N >= 2k+1"};
  InputPtr in = load_input(c);
  ExpansionPtr e = load_expansion(c, sl_input_rank(in.get()), 2 * c.k + 1);
  char* raw = nullptr;
  check(sl_morita(in.get(), e.get(), c.k, &raw));
  print(take_json(raw), c.format);
  return kOk;
}

int run_verify(const Config& c) {
  InputPtr in = load_input(c);
  int passed = 0;
  char* raw = nullptr;
  check(sl_verify(in.get(), c.k, c.seed, &passed, &raw));
  print(take_json(raw), c.format);
  return passed ? kOk : kInternal;
}

int run_expansion_build(const Config& c) {
  if (!c.N) throw Failure{kUsage, "expansion build needs --N"};
  sl_expansion* raw_e = nullptr;
  if (c.expansion != "canonical" && c.expansion != "random")
    throw Failure{kUsage, "expansion build takes --expansion canonical|random"};
  check(sl_expansion_build(c.n, *c.N,
                           c.expansion == "random" ? SL_STRATEGY_RANDOMIZED : SL_STRATEGY_CANONICAL, c.seed,
                           &raw_e));
  ExpansionPtr e(raw_e);
  char* raw = nullptr;
  check(sl_expansion_to_json(e.get(), &raw));
  const json doc = take_json(raw);
  if (!c.expansion_file.empty()) {
    std::ofstream f(c.expansion_file, std::ios::binary);
    if (!f) throw Failure{kUsage, "cannot write " + c.expansion_file};
    f << doc.dump(2) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return kOk;
}

int run_expansion_check(const Config& c) {
  sl_expansion* raw_e = nullptr;
  if (!c.expansion_file.empty()) {
    check(sl_expansion_from_json(read_file(c.expansion_file).c_str(), &raw_e));
  } else {
    if (!c.N) throw Failure{kUsage, "expansion check needs --file or --N"};
    check(sl_expansion_build(c.n, *c.N,
                             c.expansion == "random" ? SL_STRATEGY_RANDOMIZED : SL_STRATEGY_CANONICAL, c.seed,
                             &raw_e));
  }
  ExpansionPtr e(raw_e);
  char* raw = nullptr;
  check(sl_expansion_check(e.get(), &raw));
  const json doc = take_json(raw);
  print(doc, c.format);
  return doc["special"].get<bool>() ? kOk : kPrecondition;
}

void add_input_options(CLI::App* app, Config& c) {
  app->add_option("--braid", c.braid, "Pure braid word, e.g. \"[A(1,2),A(1,3)]\"");
  app->add_option("--longitudes", c.longitudes_file, "Longitude tuple JSON file")->check(CLI::ExistingFile);
  app->add_option("--n", c.n, "Number of strands")->check(CLI::Range(1, 15));
}

void add_expansion_options(CLI::App* app, Config& c) {
  app->add_option("--expansion", c.expansion, "canonical | random | path to an expansion JSON file");
  app->add_option("--seed", c.seed, "Seed for --expansion random");
  app->add_option("--N", c.N, "Truncation degree")->check(CLI::PositiveNumber);
}

void add_format_option(CLI::App* app, Config& c, bool dot) {
  auto* opt = app->add_option("--format", c.format, "Output format");
  opt->check(dot ? CLI::IsMember({"text", "json", "dot"}) : CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor invariants, tree diagrams and Koszul homology of string links"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sl_version()));
  Config c;

  auto* milnor = app.add_subcommand("milnor", "Total, degree-k or truncated Milnor invariant");
  add_input_options(milnor, c);
  add_expansion_options(milnor, c);
  add_format_option(milnor, c, false);
  milnor->add_option("--k", c.k, "Filtration degree")->check(CLI::PositiveNumber);
  milnor->add_option("--mode", c.mode, "total | degree | truncated")
      ->check(CLI::IsMember({"total", "degree", "truncated"}));

  auto* longitudes = app.add_subcommand("longitudes", "Longitude words of a pure braid");
  add_input_options(longitudes, c);
  add_format_option(longitudes, c, false);

  auto* level = app.add_subcommand("level", "Largest k with the input in filtration level k");
  add_input_options(level, c);
  level->add_option("--max-k", c.max_k, "Upper bound for the search")->check(CLI::PositiveNumber);
  add_format_option(level, c, false);

  auto* expansion = app.add_subcommand("expansion", "Build or check special expansions");
  expansion->require_subcommand(1);
  auto* build = expansion->add_subcommand("build", "Build a special expansion");
  build->add_option("--n", c.n, "Rank")->check(CLI::Range(1, 15));
  add_expansion_options(build, c);
  build->add_option("--output", c.expansion_file, "Write the JSON document here");
  auto* chk = expansion->add_subcommand("check", "Check the special conditions");
  chk->add_option("--file", c.expansion_file, "Expansion JSON file")->check(CLI::ExistingFile);
  chk->add_option("--n", c.n, "Rank")->check(CLI::Range(1, 15));
  add_expansion_options(chk, c);
  add_format_option(chk, c, false);

  auto* trees = app.add_subcommand("trees", "Tree diagrams of the truncated invariant");
  add_input_options(trees, c);
  add_expansion_options(trees, c);
  add_format_option(trees, c, true);
  trees->add_option("--k", c.k, "Filtration degree")->check(CLI::PositiveNumber);
  trees->add_option("--out-dir", c.out_dir, "Directory for DOT files (default: $STRINGLINK_OUTPUT_DIR)");

  auto* homology = app.add_subcommand("homology", "Dimensions of H_3(L/L_{>=k})");
  homology->add_option("--n", c.n, "Rank")->check(CLI::Range(1, 15));
  homology->add_option("--k", c.k, "Quotient index, k >= 2")->check(CLI::PositiveNumber);
  add_format_option(homology, c, false);

  auto* morita = app.add_subcommand("morita", "Morita-Milnor class of an input in level k+1");
  add_input_options(morita, c);
  add_expansion_options(morita, c);
  add_format_option(morita, c, false);
  morita->add_option("--k", c.k, "The input lies in level k+1")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Property suite on an input in level k");
  add_input_options(verify, c);
  add_format_option(verify, c, false);
  verify->add_option("--k", c.k, "Filtration level of the input")->check(CLI::PositiveNumber);
  verify->add_option("--seed", c.seed, "Seed for the randomized expansions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (milnor->parsed()) return run_milnor(c);
    if (longitudes->parsed()) {
      InputPtr in = load_input(c);
      char* raw = nullptr;
      check(sl_longitudes(in.get(), &raw));
      print(take_json(raw), c.format);
      return kOk;
    }
    if (level->parsed()) {
      InputPtr in = load_input(c);
      int lv = 0;
      check(sl_milnor_level(in.get(), c.max_k, &lv));
      if (c.format == "text") std::cout << lv << "\n";
      else std::cout << json{{"command", "level"}, {"n", sl_input_rank(in.get())}, {"maxK", c.max_k}, {"level", lv}}.dump(2) << "\n";
      return kOk;
    }
    if (build->parsed()) return run_expansion_build(c);
    if (chk->parsed()) return run_expansion_check(c);
    if (trees->parsed()) return run_trees(c);
    if (homology->parsed()) {
      char* raw = nullptr;
      check(sl_homology(c.n, c.k, &raw));
      print(take_json(raw), c.format);
      return kOk;
    }
    if (morita->parsed()) return run_morita(c);
    if (verify->parsed()) return run_verify(c);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
