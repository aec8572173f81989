#include "stringlink.h"

#include "stringlink/errors.hpp"
#include "stringlink/expansion.hpp"
#include "stringlink/io.hpp"
#include "stringlink/koszul.hpp"
#include "stringlink/milnor.hpp"
#include "stringlink/morita.hpp"
#include "stringlink/tree_diagram.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <mutex>
#include <new>
#include <string>
#include <variant>

using json = nlohmann::ordered_json;
namespace sl = stringlink;

struct sl_input {
  sl::LinkData data;
  json descriptor;

  int rank() const { return sl::rank(data); }
  const sl::BraidWord* braid() const { return std::get_if<sl::BraidWord>(&data); }
  sl::LongitudeTuple tuple() const {
    if (const auto* b = braid()) return sl::longitudes(*b);
    return std::get<sl::LongitudeTuple>(data);
  }
};

struct sl_expansion {
  sl::Expansion theta;
  json descriptor;
};

namespace {

thread_local std::string g_last_error;

template <class F>
sl_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const sl::ParseError& e) {
    g_last_error = e.what();
    return SL_ERR_PARSE;
  } catch (const sl::PreconditionError& e) {
    g_last_error = e.what();
    return SL_ERR_PRECONDITION;
  } catch (const sl::InternalError& e) {
    g_last_error = std::string("internal invariant failed: ") + e.what();
    return SL_ERR_INTERNAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return SL_ERR_INTERNAL;
  }
}

sl_status invalid(const char* what) {
  g_last_error = what;
  return SL_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sl_status emit(const json& doc, char** out) {
  *out = dup_string(doc.dump(2) + "\n");
  return SL_OK;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json canonical_descriptor() { return json{{"strategy", "canonical"}}; }

std::mutex g_canonical_mutex;
std::map<std::pair<int, int>, sl::Expansion> g_canonical;

sl::Expansion canonical(int n, int N) {
  {
    std::lock_guard lock(g_canonical_mutex);
    if (auto it = g_canonical.find({n, N}); it != g_canonical.end()) return it->second;
  }
  sl::Expansion e = sl::build_special(n, N);
  std::lock_guard lock(g_canonical_mutex);
  return g_canonical.try_emplace({n, N}, std::move(e)).first->second;
}

// The given expansion, or a canonical one of truncation N.
std::pair<sl::Expansion, json> resolve(const sl_expansion* e, int n, int N) {
  if (!e) return {canonical(n, N), canonical_descriptor()};
  if (e->theta.rank() != n)
    throw sl::PreconditionError("expansion has rank " + std::to_string(e->theta.rank()) + " but the input has " +
                                std::to_string(n) + " strands");
  if (e->theta.truncation() < N)
    throw sl::PreconditionError("expansion truncation " + std::to_string(e->theta.truncation()) +
                                " is below the required " + std::to_string(N));
  return {e->theta, e->descriptor};
}

json lie_entries(const sl::HTensorLie& x) {
  json out = json::array();
  for (int i = 1; i <= x.rank(); ++i) {
    for (const auto& [w, c] : x.entry(i).terms()) {
      out.push_back(json{{"i", i},
                         {"lyndonWord", w.letters()},
                         {"bracketing", sl::bracketing(w)},
                         {"coefficient", sl::to_string(c)}});
    }
  }
  return out;
}

json homology_descriptor(const sl::Homology& h) {
  return json{{"power", h.power()},
              {"n", h.basis()->rank()},
              {"class", h.basis()->nilpotency_class()},
              {"dim", h.dim()},
              {"fingerprint", hex64(h.fingerprint())}};
}

json class_coordinates(const sl::HomologyClass& x) {
  json out = json::array();
  const auto& coords = x.coordinates();
  for (std::size_t c = 0; c < coords.size(); ++c) {
    out.push_back(json{{"index", c},
                       {"degree", x.homology()->coordinate_degree(static_cast<int>(c))},
                       {"value", sl::to_string(coords[c])}});
  }
  return out;
}


void require_positive(int v, const char* name) {
  if (v < 1) throw sl::PreconditionError(std::string(name) + " must be >= 1");
}

}  // namespace

extern "C" {

const char* sl_version(void) { return "1.0.0"; }

const char* sl_last_error(void) { return g_last_error.c_str(); }

void sl_free_string(char* s) { std::free(s); }

sl_status sl_input_from_braid(const char* text, int strands, sl_input** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    if (strands < 1 || strands > sl::Word::kMaxLetter)
      throw sl::PreconditionError("number of strands must lie in 1.." + std::to_string(sl::Word::kMaxLetter));
    sl::BraidWord b = sl::parse_braid(text, strands);
    json d{{"kind", "braid"}, {"n", strands}, {"text", b.to_string()}};
    *out = new sl_input{std::move(b), std::move(d)};
    return SL_OK;
  });
}

sl_status sl_input_from_longitudes(const char* text, sl_input** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    sl::LongitudeTuple t = sl::parse_longitude_tuple(text);
    json d{{"kind", "longitudes"}, {"n", t.rank()}};
    if (t.truncation()) d["K"] = *t.truncation();
    *out = new sl_input{std::move(t), std::move(d)};
    return SL_OK;
  });
}

void sl_input_free(sl_input* input) { delete input; }

int sl_input_rank(const sl_input* input) { return input ? input->rank() : 0; }

sl_status sl_input_product(const sl_input* a, const sl_input* b, sl_input** out) {
  if (!a || !b || !out) return invalid("null argument");
  return guarded([&] {
    if (!a->braid() || !b->braid()) throw sl::PreconditionError("products are defined for braid inputs only");
    if (a->rank() != b->rank()) throw sl::PreconditionError("braids have different numbers of strands");
    sl::BraidWord p = *a->braid() * *b->braid();
    json d{{"kind", "braid"}, {"n", a->rank()}, {"text", p.to_string()}};
    *out = new sl_input{std::move(p), std::move(d)};
    return SL_OK;
  });
}

sl_status sl_expansion_build(int n, int N, sl_strategy strategy, uint64_t seed, sl_expansion** out) {
  if (!out) return invalid("null argument");
  if (strategy != SL_STRATEGY_CANONICAL && strategy != SL_STRATEGY_RANDOMIZED) return invalid("unknown strategy");
  return guarded([&] {
    require_positive(n, "n");
    require_positive(N, "N");
    if (strategy == SL_STRATEGY_CANONICAL) {
      *out = new sl_expansion{canonical(n, N), canonical_descriptor()};
    } else {
      *out = new sl_expansion{sl::build_special(n, N, sl::BuildStrategy::randomized(seed)),
                              json{{"strategy", "randomized"}, {"seed", seed}}};
    }
    return SL_OK;
  });
}

sl_status sl_expansion_from_json(const char* text, sl_expansion** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    sl::Expansion theta = sl::expansion_from_json(text);
    json descriptor{{"strategy", "file"}};
    // Files written by sl_expansion_to_json remember how they were built.
    const json doc = json::parse(text);
    if (auto it = doc.find("expansion"); it != doc.end() && it->is_object()) {
      descriptor = it->contains("origin") ? *it : json{{"strategy", "file"}, {"origin", *it}};
    }
    *out = new sl_expansion{std::move(theta), std::move(descriptor)};
    return SL_OK;
  });
}

sl_status sl_expansion_to_json(const sl_expansion* e, char** out) {
  if (!e || !out) return invalid("null argument");
  return guarded([&] {
    json doc = json::parse(sl::expansion_to_json(e->theta));
    doc["expansion"] = e->descriptor;
    return emit(doc, out);
  });
}

sl_status sl_expansion_check(const sl_expansion* e, char** out) {
  if (!e || !out) return invalid("null argument");
  return guarded([&] {
    const sl::SpecialReport r = sl::is_special(e->theta);
    json conj = json::array();
    for (std::size_t i = 0; i < r.conjugators.size(); ++i) {
      json terms = json::array();
      for (const auto& [w, c] : r.conjugators[i].terms())
        terms.push_back(json{{"lyndonWord", w.letters()}, {"bracketing", sl::bracketing(w)},
                             {"coefficient", sl::to_string(c)}});
      conj.push_back(json{{"i", i + 1}, {"terms", std::move(terms)}});
    }
    json doc{{"command", "expansion check"},
             {"n", e->theta.rank()},
             {"N", e->theta.truncation()},
             {"expansion", e->descriptor},
             {"grouplike", r.grouplike},
             {"tangential", r.tangential},
             {"normalized", r.normalized},
             {"special", r.special()},
             {"failingDegree", r.failing_degree},
             {"diagnostic", r.diagnostic},
             {"conjugators", std::move(conj)}};
    return emit(doc, out);
  });
}

int sl_expansion_truncation(const sl_expansion* e) { return e ? e->theta.truncation() : 0; }

void sl_expansion_free(sl_expansion* e) { delete e; }

sl_status sl_longitudes(const sl_input* input, char** out) {
  if (!input || !out) return invalid("null argument");
  return guarded([&] {
    const sl::LongitudeTuple t = input->tuple();
    json words = json::array();
    for (int i = 1; i <= t.rank(); ++i)
      words.push_back(json{{"i", i}, {"letters", t.word(i).to_signed()}, {"text", t.word(i).to_string()}});
    json doc{{"command", "longitudes"},
             {"n", t.rank()},
             {"input", input->descriptor},
             {"longitudes", std::move(words)},
             {"tuple", json::parse(sl::longitude_tuple_to_json(t))}};
    return emit(doc, out);
  });
}

sl_status sl_milnor_level(const sl_input* input, int max_k, int* level) {
  if (!input || !level) return invalid("null argument");
  return guarded([&] {
    require_positive(max_k, "max_k");
    if (const auto* b = input->braid()) *level = sl::milnor_level(*b, max_k);
    else *level = sl::milnor_level(std::get<sl::LongitudeTuple>(input->data), max_k);
    return SL_OK;
  });
}

sl_status sl_milnor(const sl_input* input, const sl_expansion* e, sl_milnor_mode mode, int k, int N, char** out) {
  if (!input || !out) return invalid("null argument");
  if (mode != SL_MILNOR_TOTAL && mode != SL_MILNOR_DEGREE && mode != SL_MILNOR_TRUNCATED)
    return invalid("unknown mode");
  return guarded([&] {
    const int n = input->rank();
    const sl::LinkData& t = input->data;
    json doc{{"command", "milnor"}, {"n", n}, {"input", input->descriptor}};
    sl::HTensorLie x(n, 1);
    int lo = 1, hi = 1;
    if (mode == SL_MILNOR_TOTAL) {
      require_positive(N, "N");
      auto [theta, desc] = resolve(e, n, N);
      doc["mode"] = "total";
      doc["N"] = N;
      doc["expansion"] = desc;
      x = sl::total_milnor(t, theta, N);
      lo = 1;
      hi = N - 1;
    } else if (mode == SL_MILNOR_DEGREE) {
      require_positive(k, "k");
      auto [theta, desc] = resolve(e, n, k + 1);
      doc["mode"] = "degree";
      doc["k"] = k;
      doc["expansion"] = desc;
      x = sl::milnor_degree_k(t, theta, k);
      lo = hi = k;
    } else {
      require_positive(k, "k");
      auto [theta, desc] = resolve(e, n, 2 * k);
      doc["mode"] = "truncated";
      doc["k"] = k;
      doc["expansion"] = desc;
      x = sl::truncated_milnor(t, theta, k);
      lo = k;
      hi = 2 * k - 1;
    }
    json degrees = json::array();
    for (int d = lo; d <= hi; ++d) {
      const sl::HTensorLie part = x.degree_part(d);
      degrees.push_back(json{{"degree", d}, {"zero", part.is_zero()}, {"inD", sl::in_D(part)}});
    }
    doc["zero"] = x.is_zero();
    doc["degrees"] = std::move(degrees);
    doc["entries"] = lie_entries(x);
    return emit(doc, out);
  });
}

sl_status sl_trees(const sl_input* input, const sl_expansion* e, int k, char** out) {
  if (!input || !out) return invalid("null argument");
  return guarded([&] {
    require_positive(k, "k");
    const int n = input->rank();
    auto [theta, desc] = resolve(e, n, 2 * k);
    const sl::HTensorLie mu = sl::truncated_milnor(input->data, theta, k);
    const sl::TreeCombination b = sl::eta_inverse(mu);
    if (!(sl::eta(b, mu.max_degree()) == mu)) throw sl::InternalError("eta(eta^-1(mu)) differs from mu");
    json trees = json::array();
    int idx = 0;
    for (const auto& [code, c] : b.terms()) {
      const sl::TreeDiagram tree = sl::TreeDiagram::from_code(n, code);
      const std::string name = "tree_" + std::to_string(idx++);
      trees.push_back(json{{"name", name},
                           {"code", code},
                           {"degree", sl::code_degree(code)},
                           {"coefficient", sl::to_string(c)},
                           {"dot", sl::to_dot(tree, name)}});
    }
    json doc{{"command", "trees"},
             {"n", n},
             {"k", k},
             {"input", input->descriptor},
             {"expansion", desc},
             {"invariant", lie_entries(mu)},
             {"trees", std::move(trees)}};
    return emit(doc, out);
  });
}

sl_status sl_homology(int n, int k, char** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    if (n < 1 || n > sl::Word::kMaxLetter) throw sl::PreconditionError("n out of range");
    if (k < 2) throw sl::PreconditionError("k must be >= 2 for H_3(L / L_{>= k})");
    const sl::HomologyPtr h = sl::Homology::get(3, n, k - 1);
    json rows = json::array();
    for (const auto& blk : h->blocks())
      rows.push_back(json{{"degree", blk.degree},
                          {"dimChains", blk.dim_chains},
                          {"dimKernel", blk.dim_kernel},
                          {"dimImage", blk.dim_image},
                          {"dimH", blk.dim()}});
    json d_rows = json::array();
    long long sum_d = 0;
    for (int l = k; l <= 2 * k - 2; ++l) {
      const long long dl = sl::d_dimension(n, l);
      sum_d += dl;
      d_rows.push_back(json{{"degree", l}, {"dimD", dl}});
    }
    json doc{{"command", "homology"},
             {"n", n},
             {"k", k},
             {"homology", homology_descriptor(*h)},
             {"rows", std::move(rows)},
             {"treeDegrees", std::move(d_rows)},
             {"sumDimD", sum_d}};
    if (n <= 4 && 2 * k - 2 <= 5) doc["phiRank"] = sl::phi_rank(n, k);
    else doc["phiRank"] = nullptr;
    return emit(doc, out);
  });
}

sl_status sl_morita(const sl_input* input, const sl_expansion* e, int k, char** out) {
  if (!input || !out) return invalid("null argument");
  return guarded([&] {
    require_positive(k, "k");
    const int n = input->rank();
    auto [theta, desc] = resolve(e, n, 2 * k + 1);
    const sl::MoritaInput mi = sl::make_morita_input(input->data, theta, k);
    const sl::ExteriorChain s = sl::sigma_to_class(mi, 2 * k);
    const bool sigma_cycle = sl::boundary(s).is_zero();
    const sl::HomologyClass forward = sl::morita_milnor(mi, sl::PivotOrder::Forward);
    const sl::HomologyClass reverse = sl::morita_milnor(mi, sl::PivotOrder::Reverse);
    const sl::DiagramCheck diagram = sl::verify_commutative_diagram(mi);
    const sl::HTensorLie d2 = sl::d2_composition(forward, k);
    const sl::HTensorLie mu = sl::total_milnor(mi.data, theta, k + 2).degree_part(k + 1);
    json doc{{"command", "morita"},
             {"n", n},
             {"k", k},
             {"input", input->descriptor},
             {"expansion", desc},
             {"homology", homology_descriptor(*forward.homology())},
             {"zero", forward.is_zero()},
             {"coordinates", class_coordinates(forward)},
             {"sigmaIsCycle", sigma_cycle},
             {"pivotIndependent", forward == reverse},
             {"diagramCommutes", diagram.commutes},
             {"d2MatchesMilnor", d2 == mu},
             {"d2", lie_entries(d2)}};
    return emit(doc, out);
  });
}

sl_status sl_verify(const sl_input* input, int k, uint64_t seed, int* all_passed, char** out) {
  if (!input || !all_passed || !out) return invalid("null argument");
  return guarded([&] {
    require_positive(k, "k");
    const int n = input->rank();
    const sl::LinkData& t = input->data;
    const int N = 2 * k;
    json checks = json::array();
    bool all = true;
    auto record = [&](const std::string& name, auto&& body) {
      bool ok = false;
      std::string detail;
      try {
        ok = body(detail);
      } catch (const sl::InternalError& ex) {
        detail = std::string("internal invariant failed: ") + ex.what();
      }
      all = all && ok;
      json c{{"name", name}, {"passed", ok}};
      if (!detail.empty()) c["detail"] = detail;
      checks.push_back(std::move(c));
    };

    // Filtration level is a precondition of everything below.
    const int first = sl::total_milnor(t, canonical(n, N), k + 1).min_degree();
    if (first >= 1 && first < k) throw sl::FiltrationError(k, first);

    std::vector<std::pair<std::string, sl::Expansion>> thetas;
    thetas.emplace_back("canonical", canonical(n, N));
    thetas.emplace_back("randomized:" + std::to_string(seed),
                        sl::build_special(n, N, sl::BuildStrategy::randomized(seed)));
    thetas.emplace_back("randomized:" + std::to_string(seed + 1),
                        sl::build_special(n, N, sl::BuildStrategy::randomized(seed + 1)));

    for (const auto& [name, theta] : thetas) {
      record("expansion special (" + name + ")", [&](std::string& detail) {
        const auto r = sl::is_special(theta);
        if (!r.special()) detail = r.diagnostic;
        return r.special();
      });
    }
    for (const auto& [name, theta] : thetas) {
      record("art_theta special (" + name + ")", [&](std::string&) {
        const sl::SpecialAutData a = sl::art_theta(t, theta, N);
        return a.normalized() && a.fixes_boundary();
      });
    }
    const sl::HTensorLie mu_k = sl::milnor_degree_k(t, thetas[0].second, k);
    record("milnor_degree_k independent of expansion", [&](std::string& detail) {
      for (std::size_t j = 1; j < thetas.size(); ++j) {
        if (!(sl::milnor_degree_k(t, thetas[j].second, k) == mu_k)) {
          detail = "differs for " + thetas[j].first;
          return false;
        }
      }
      return true;
    });
    const sl::HTensorLie trunc = sl::truncated_milnor(t, thetas[0].second, k);
    record("truncated invariant in D", [&](std::string& detail) {
      for (int m = k; m <= 2 * k - 1; ++m) {
        if (!sl::in_D(trunc.degree_part(m))) {
          detail = "degree " + std::to_string(m) + " misses D";
          return false;
        }
      }
      return true;
    });
    if (const auto* b = input->braid()) {
      const sl::BraidWord sq = *b * *b;
      record("truncated invariant additive on L*L", [&](std::string&) {
        const sl::HTensorLie lhs = sl::truncated_milnor(sq, thetas[0].second, k);
        return lhs == trunc + trunc;
      });
      record("art_theta functorial on L*L", [&](std::string&) {
        const sl::SpecialAutData a = sl::art_theta(*b, thetas[1].second, N);
        return sl::art_theta(sq, thetas[1].second, N) == a.compose(a);
      });
    }
    const bool trees_supported = n <= 4 && 2 * k - 1 <= 5;
    if (trees_supported) {
      record("eta(eta^-1(mu)) = mu", [&](std::string&) {
        return sl::eta(sl::eta_inverse(trunc), trunc.max_degree()) == trunc;
      });
    }
    if (k >= 2 && n <= 4 && 2 * (k - 1) <= 5) {
      const int km = k - 1;
      const sl::Expansion& theta = thetas[0].second;
      const sl::MoritaInput mi = sl::make_morita_input(t, theta, km);
      record("sigma is a cycle", [&](std::string&) {
        return sl::boundary(sl::sigma_to_class(mi, 2 * km)).is_zero();
      });
      const sl::HomologyClass cls = sl::morita_milnor(mi, sl::PivotOrder::Forward);
      record("morita class independent of t_L", [&](std::string&) {
        return sl::morita_milnor(mi, sl::PivotOrder::Reverse) == cls;
      });
      record("tree and morita routes commute (" + thetas[1].first + ")", [&](std::string&) {
        return sl::verify_commutative_diagram(sl::make_morita_input(t, thetas[1].second, km)).commutes;
      });
      record("tree and morita routes commute", [&](std::string&) {
        return sl::verify_commutative_diagram(mi).commutes;
      });
      record("d2 of morita class equals mu_k", [&](std::string&) {
        return sl::d2_composition(cls, km) == mu_k.degree_part(k);
      });
      if (const auto* b = input->braid()) {
        record("morita class additive on L*L", [&](std::string&) {
          const sl::HomologyClass sq = sl::morita_milnor(sl::make_morita_input(*b * *b, theta, km));
          return sq == cls + cls;
        });
      }
    }
    *all_passed = all ? 1 : 0;
    json doc{{"command", "verify"},
             {"n", n},
             {"k", k},
             {"seed", seed},
             {"input", input->descriptor},
             {"passed", all},
             {"checks", std::move(checks)}};
    return emit(doc, out);
  });
}

}  // extern "C"
