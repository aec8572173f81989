#include "stringlink/expansion.hpp"

#include "stringlink/errors.hpp"
#include "stringlink/linalg.hpp"
#include "stringlink/milnor.hpp"

#include <json.hpp>

#include <random>

namespace stringlink {

// Word evaluation in rescaled integer form. Under X_i -> D X_i, with D a
// common denominator of every letter series, the degree-d part of theta(w)
// is an integer multiple of D^-d for every word w, so products can run on
// dense integer arrays and be divided out once at the end.
struct Expansion::ScaledTables {
  struct Entry {
    int degree;
    std::size_t index;
    mpz_class value;
  };
  int n = 0;
  int N = 0;
  mpz_class denominator;
  std::vector<std::size_t> offset;  // start of degree d in the dense layout
  std::vector<std::vector<Entry>> letters;  // 2(i-1): x_i, 2(i-1)+1: x_i^-1

  std::size_t dense_size() const { return offset[N + 1]; }
};

namespace {

std::shared_ptr<const Expansion::ScaledTables> make_scaled(const std::vector<TensorSeries>& values,
                                                           const std::vector<TensorSeries>& inverses) {
  auto t = std::make_shared<Expansion::ScaledTables>();
  t->n = static_cast<int>(values.size());
  t->N = values.front().truncation();
  t->offset.assign(t->N + 2, 0);
  std::size_t block = 1, total = 0;
  for (int d = 0; d <= t->N; ++d) {
    t->offset[d] = total;
    total += block;
    block *= static_cast<std::size_t>(t->n);
  }
  t->offset[t->N + 1] = total;
  mpz_class den = 1;
  for (const auto* group : {&values, &inverses})
    for (const auto& s : *group)
      for (const auto& [w, c] : s.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  t->denominator = den;
  for (int i = 0; i < t->n; ++i) {
    for (const TensorSeries* s : {&values[i], &inverses[i]}) {
      std::vector<Expansion::ScaledTables::Entry> entries;
      for (const auto& [w, c] : s->terms()) {
        std::size_t idx = 0;
        for (int p = 0; p < w.length(); ++p) idx = idx * t->n + static_cast<std::size_t>(w[p] - 1);
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(w.length()));
        mpq_class v = c * scale;
        if (v.get_den() != 1) throw InternalError("rescaled letter series is not integral");
        entries.push_back({w.length(), idx, v.get_num()});
      }
      t->letters.push_back(std::move(entries));
    }
  }
  return t;
}

TensorSeries evaluate_scaled(const Expansion::ScaledTables& t, const FreeGroupWord& w) {
  const std::size_t size = t.dense_size();
  std::vector<mpz_class> acc(size), next(size);
  std::vector<unsigned char> live(size, 0), next_live(size, 0);
  acc[0] = 1;
  live[0] = 1;
  std::vector<std::size_t> powers(t.N + 1, 1);
  for (int d = 1; d <= t.N; ++d) powers[d] = powers[d - 1] * static_cast<std::size_t>(t.n);
  for (const Letter& l : w.letters()) {
    const auto& s = t.letters[2 * (l.generator - 1) + (l.exponent > 0 ? 0 : 1)];
    std::fill(next_live.begin(), next_live.end(), 0);
    for (int a = 0; a <= t.N; ++a) {
      for (std::size_t ia = 0, ea = t.offset[a + 1] - t.offset[a]; ia < ea; ++ia) {
        const std::size_t slot_a = t.offset[a] + ia;
        if (!live[slot_a] || sgn(acc[slot_a]) == 0) continue;
        for (const auto& e : s) {
          const int d = a + e.degree;
          if (d > t.N) break;  // entries are degree-sorted
          const std::size_t slot = t.offset[d] + ia * powers[e.degree] + e.index;
          if (!next_live[slot]) {
            next_live[slot] = 1;
            mpz_mul(next[slot].get_mpz_t(), acc[slot_a].get_mpz_t(), e.value.get_mpz_t());
          } else {
            mpz_addmul(next[slot].get_mpz_t(), acc[slot_a].get_mpz_t(), e.value.get_mpz_t());
          }
        }
      }
    }
    acc.swap(next);
    live.swap(next_live);
  }
  TensorSeries out(t.n, t.N);
  int letters[Word::kMaxLength];
  mpz_class scale = 1;
  for (int d = 0; d <= t.N; ++d) {
    if (d > 0) scale *= t.denominator;
    for (std::size_t idx = 0, e = t.offset[d + 1] - t.offset[d]; idx < e; ++idx) {
      const std::size_t slot = t.offset[d] + idx;
      if (!live[slot] || sgn(acc[slot]) == 0) continue;
      std::size_t rest = idx;
      for (int p = d - 1; p >= 0; --p) {
        letters[p] = static_cast<int>(rest % static_cast<std::size_t>(t.n)) + 1;
        rest /= static_cast<std::size_t>(t.n);
      }
      mpq_class v(acc[slot], scale);
      v.canonicalize();
      out.add_term(Word(std::span<const int>(letters, static_cast<std::size_t>(d))), v);
    }
  }
  return out;
}

}  // namespace

Expansion::Expansion(std::vector<TensorSeries> values) : values_(std::move(values)) {
  if (values_.empty()) throw PreconditionError("an expansion needs at least one generator");
  const int n = static_cast<int>(values_.size());
  const int N = values_.front().truncation();
  inverses_.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const TensorSeries& v = values_[i - 1];
    if (v.rank() != n || v.truncation() != N) throw PreconditionError("expansion values must share (n, N)");
    TensorSeries low = TensorSeries::one(n, N) + TensorSeries::generator(n, N, i);
    for (const auto& [w, c] : v.terms()) {
      if (w.length() >= 2) break;
      if (low.coefficient(w) != c)
        throw PreconditionError("theta(x" + std::to_string(i) + ") is not 1 + X" + std::to_string(i) +
                                " modulo degree 2");
    }
    for (const auto& [w, c] : low.terms())
      if (v.coefficient(w) != c)
        throw PreconditionError("theta(x" + std::to_string(i) + ") is not 1 + X" + std::to_string(i) +
                                " modulo degree 2");
    inverses_.push_back(inverse(v));
  }
  scaled_ = make_scaled(values_, inverses_);
}

Expansion Expansion::magnus(int n, int N) {
  std::vector<TensorSeries> v;
  for (int i = 1; i <= n; ++i) v.push_back(TensorSeries::one(n, N) + TensorSeries::generator(n, N, i));
  return Expansion(std::move(v));
}

Expansion Expansion::exponential(int n, int N) {
  std::vector<TensorSeries> v;
  for (int i = 1; i <= n; ++i) v.push_back(exp(TensorSeries::generator(n, N, i)));
  return Expansion(std::move(v));
}

Expansion Expansion::truncated(int N) const {
  std::vector<TensorSeries> v;
  for (const auto& s : values_) v.push_back(s.truncated(N));
  return Expansion(std::move(v));
}

TensorSeries evaluate(const Expansion& theta, const FreeGroupWord& w) {
  if (w.rank() != theta.rank()) throw PreconditionError("word rank does not match the expansion");
  return evaluate_scaled(theta.scaled(), w);
}

bool is_grouplike_expansion(const Expansion& theta) {
  for (const auto& v : theta.values())
    if (!is_grouplike(v)) return false;
  return true;
}

SpecialReport is_special(const Expansion& theta) {
  SpecialReport r;
  const int n = theta.rank(), N = theta.truncation();
  r.grouplike = is_grouplike_expansion(theta);
  if (!r.grouplike) {
    for (const auto& v : theta.values()) {
      // Group-likeness is homogeneous in degree, so find the first bad one.
      for (int d = 2; d <= N; ++d) {
        if (!is_grouplike(v.truncated(d))) {
          if (r.failing_degree < 0 || d < r.failing_degree) r.failing_degree = d;
          break;
        }
      }
    }
    r.diagnostic = "not group-like at degree " + std::to_string(r.failing_degree);
    return r;
  }

  r.tangential = true;
  for (int i = 1; i <= n; ++i) {
    const LieElement l = from_tensor(log(theta.value(i)));
    ConjugatorResult c = try_conjugator_log(l, i);
    if (!c.y) {
      r.tangential = false;
      if (r.failing_degree < 0 || c.failing_degree < r.failing_degree) r.failing_degree = c.failing_degree;
      r.diagnostic = "theta(x" + std::to_string(i) + ") is not conjugate to exp(X" + std::to_string(i) +
                     ") at degree " + std::to_string(c.failing_degree);
      continue;
    }
    r.conjugators.push_back(std::move(*c.y));
  }
  if (!r.tangential) {
    r.conjugators.clear();
    return r;
  }

  TensorSeries sum(n, N);
  for (int i = 1; i <= n; ++i) sum += TensorSeries::generator(n, N, i);
  const TensorSeries diff = evaluate(theta, boundary_word(n)) - exp(sum);
  r.normalized = diff.is_zero();
  if (!r.normalized) {
    r.failing_degree = diff.min_degree();
    r.diagnostic = "theta(x1...xn) differs from exp(X1+...+Xn) at degree " + std::to_string(r.failing_degree);
  }
  return r;
}

Expansion build_special(int n, int N, BuildStrategy strategy) {
  if (n == 1) return Expansion::exponential(1, N);
  if (n < 2) throw PreconditionError("build_special needs n >= 1");
  std::mt19937_64 rng(strategy.seed);
  std::vector<LieElement> u(n, LieElement(n, N));
  std::vector<LieElement> gens;
  TensorSeries sum(n, N);
  for (int i = 1; i <= n; ++i) {
    gens.push_back(LieElement::generator(n, N, i));
    sum += TensorSeries::generator(n, N, i);
  }
  const LieElement lie_sum = from_tensor(sum);

  auto values_for = [&](const std::vector<LieElement>& us) {
    std::vector<TensorSeries> v;
    for (int i = 1; i <= n; ++i) {
      const TensorSeries t = to_tensor(us[i - 1]);
      v.push_back(exp(t) * exp(TensorSeries::generator(n, N, i)) * exp(-t));
    }
    return v;
  };

  for (int m = 1; m < N; ++m) {
    const Expansion current(values_for(u));
    const LieElement discrepancy = from_tensor(log(evaluate(current, boundary_word(n)))) - lie_sum;
    if (discrepancy.min_degree() >= 0 && discrepancy.min_degree() <= m)
      throw InternalError("special expansion builder lost normalization below degree " + std::to_string(m + 1));
    const LieElement target = discrepancy.degree_part(m + 1);
    if (target.is_zero()) continue;

    // sum_i [v_i, X_i] = -target, i.e. sum_i [X_i, v_i] = target.
    const RationalMatrix a = bracket_matrix(n, m);
    const auto& rows = lyndon_basis(n, m + 1);
    std::vector<Rational> b(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) b[r] = target.coefficient(rows[r]);
    const ExactSolver solver(a);
    auto x = solver.solve(b);
    if (!x) throw InternalError("bracket map is not surjective in degree " + std::to_string(m + 1));
    if (strategy.kind == BuildStrategy::Kind::Randomized) {
      for (const auto& k : solver.nullspace()) {
        const Rational t(static_cast<long>(rng() % 7) - 3);
        if (sgn(t) == 0) continue;
        for (std::size_t c = 0; c < x->size(); ++c) (*x)[c] += t * k[c];
      }
    }
    const auto& cols = lyndon_basis(n, m);
    for (int i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k)
        u[i - 1].add_term(cols[k], (*x)[(i - 1) * cols.size() + k]);
  }
  return Expansion(values_for(u));
}

std::string expansion_to_json(const Expansion& theta) {
  nlohmann::ordered_json doc;
  doc["n"] = theta.rank();
  doc["N"] = theta.truncation();
  auto values = nlohmann::ordered_json::array();
  for (int i = 1; i <= theta.rank(); ++i) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [w, c] : theta.value(i).terms())
      terms.push_back({{"word", w.letters()}, {"coefficient", to_string(c)}});
    values.push_back({{"generator", i}, {"terms", std::move(terms)}});
  }
  doc["values"] = std::move(values);
  return doc.dump(2);
}

Expansion expansion_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("expansion JSON: ") + e.what());
  }
  try {
    const int n = doc.at("n").get<int>();
    const int N = doc.at("N").get<int>();
    if (n < 1 || n > Word::kMaxLetter || N < 1 || N > Word::kMaxLength)
      throw ParseError("expansion JSON: n or N out of range");
    const auto& values = doc.at("values");
    if (!values.is_array() || static_cast<int>(values.size()) != n)
      throw ParseError("expansion JSON: expected one value per generator");
    std::vector<TensorSeries> out(n, TensorSeries(n, N));
    for (const auto& entry : values) {
      const int g = entry.at("generator").get<int>();
      if (g < 1 || g > n) throw ParseError("expansion JSON: generator out of range");
      for (const auto& term : entry.at("terms")) {
        const auto letters = term.at("word").get<std::vector<int>>();
        for (int l : letters)
          if (l < 1 || l > n) throw ParseError("expansion JSON: letter out of range");
        if (static_cast<int>(letters.size()) > N) throw ParseError("expansion JSON: word longer than N");
        out[g - 1].add_term(Word(std::span<const int>(letters)), parse_rational(term.at("coefficient").get<std::string>()));
      }
    }
    return Expansion(std::move(out));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("expansion JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("expansion JSON: ") + e.what());
  }
}

}  // namespace stringlink
