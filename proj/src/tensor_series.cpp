#include "stringlink/tensor_series.hpp"

#include "stringlink/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace stringlink {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Word, Word>& p) const noexcept {
    WordHash h;
    return h(p.first) * 1000003u ^ h(p.second);
  }
};

// Dense scratch space for products: degree d occupies n^d slots.
struct DenseAccumulator {
  int n = 0;
  int cap = 0;
  std::vector<std::size_t> offset;  // start of degree d
  std::vector<Rational> slots;
  std::vector<std::uint8_t> touched;

  void reset(int n_, int cap_) {
    n = n_;
    cap = cap_;
    offset.assign(cap + 2, 0);
    std::size_t total = 0, block = 1;
    for (int d = 0; d <= cap; ++d) {
      offset[d] = total;
      total += block;
      block *= static_cast<std::size_t>(n);
    }
    offset[cap + 1] = total;
    if (slots.size() < total) slots.resize(total);
    touched.assign(total, 0);
  }
};

std::size_t dense_index(const Word& w, int n) {
  std::size_t idx = 0;
  for (int p = 0; p < w.length(); ++p) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(w[p] - 1);
  return idx;
}

Word word_from_index(std::size_t idx, int d, int n) {
  int letters[Word::kMaxLength];
  for (int p = d - 1; p >= 0; --p) {
    letters[p] = static_cast<int>(idx % static_cast<std::size_t>(n)) + 1;
    idx /= static_cast<std::size_t>(n);
  }
  return Word(std::span<const int>(letters, static_cast<std::size_t>(d)));
}

struct IndexedTerm {
  int degree;
  std::size_t index;
  const Rational* coef;
};

std::vector<IndexedTerm> index_terms(const TensorSeries& s, int cap) {
  std::vector<IndexedTerm> out;
  out.reserve(s.terms().size());
  for (const auto& [w, c] : s.terms()) {
    if (w.length() > cap) break;  // terms are degree-major
    out.push_back(IndexedTerm{w.length(), dense_index(w, s.rank()), &c});
  }
  return out;
}

}  // namespace

TensorSeries::TensorSeries(int n, int N) : n_(n), N_(N) {
  if (n < 1 || n > Word::kMaxLetter) throw PreconditionError("tensor series rank must be in 1..15");
  if (N < 0 || N > Word::kMaxLength) throw PreconditionError("truncation degree must be in 0..16");
}

TensorSeries TensorSeries::constant(int n, int N, const Rational& c) {
  TensorSeries s(n, N);
  s.add_term(Word{}, c);
  return s;
}

TensorSeries TensorSeries::generator(int n, int N, int i) {
  if (i < 1 || i > n) throw PreconditionError("generator index out of range");
  TensorSeries s(n, N);
  s.add_term(Word::letter(i), Rational(1));
  return s;
}

TensorSeries TensorSeries::monomial(int n, int N, const Word& w, const Rational& c) {
  if (w.max_letter() > n) throw PreconditionError("monomial letter out of range");
  TensorSeries s(n, N);
  s.add_term(w, c);
  return s;
}

Rational TensorSeries::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorSeries::add_term(const Word& w, const Rational& c) {
  if (w.length() > N_ || sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

TensorSeries TensorSeries::degree_part(int d) const {
  TensorSeries out(n_, N_);
  for (const auto& [w, c] : terms_)
    if (w.length() == d) out.terms_.emplace_hint(out.terms_.end(), w, c);
  return out;
}

TensorSeries TensorSeries::truncated(int N) const {
  if (N > N_) throw PreconditionError("cannot raise the truncation degree of a series");
  TensorSeries out(n_, N);
  for (const auto& [w, c] : terms_) {
    if (w.length() > N) break;
    out.terms_.emplace_hint(out.terms_.end(), w, c);
  }
  return out;
}

int TensorSeries::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.length(); }

void TensorSeries::require_compatible(const TensorSeries& rhs) const {
  if (n_ != rhs.n_ || N_ != rhs.N_)
    throw PreconditionError("tensor series (n, N) mismatch: (" + std::to_string(n_) + "," +
                            std::to_string(N_) + ") vs (" + std::to_string(rhs.n_) + "," +
                            std::to_string(rhs.N_) + ")");
}

TensorSeries& TensorSeries::operator+=(const TensorSeries& rhs) {
  require_compatible(rhs);
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

TensorSeries& TensorSeries::operator-=(const TensorSeries& rhs) {
  require_compatible(rhs);
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

TensorSeries& TensorSeries::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

TensorSeries TensorSeries::operator-() const {
  TensorSeries out = *this;
  for (auto& [w, v] : out.terms_) v = -v;
  return out;
}

TensorSeries multiply_capped(const TensorSeries& a, const TensorSeries& b, int cap) {
  if (a.rank() != b.rank() || a.truncation() != b.truncation())
    throw PreconditionError("tensor series (n, N) mismatch in product");
  const int n = a.rank();
  cap = std::min(cap, a.truncation());
  TensorSeries out(n, a.truncation());
  if (a.is_zero() || b.is_zero() || cap < 0) return out;

  thread_local DenseAccumulator acc;
  acc.reset(n, cap);
  const auto ta = index_terms(a, cap);
  const auto tb = index_terms(b, cap);
  std::vector<std::size_t> powers(cap + 1, 1);
  for (int d = 1; d <= cap; ++d) powers[d] = powers[d - 1] * static_cast<std::size_t>(n);

  Rational prod;
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      const int d = x.degree + y.degree;
      if (d > cap) break;  // tb is degree-sorted
      const std::size_t slot = acc.offset[d] + x.index * powers[y.degree] + y.index;
      mpq_mul(prod.get_mpq_t(), x.coef->get_mpq_t(), y.coef->get_mpq_t());
      if (!acc.touched[slot]) {
        acc.touched[slot] = 1;
        acc.slots[slot] = prod;
      } else {
        acc.slots[slot] += prod;
      }
    }
  }

  auto& terms = out.terms_;
  for (int d = 0; d <= cap; ++d) {
    for (std::size_t idx = 0, e = acc.offset[d + 1] - acc.offset[d]; idx < e; ++idx) {
      const std::size_t slot = acc.offset[d] + idx;
      if (acc.touched[slot] && sgn(acc.slots[slot]) != 0)
        terms.emplace_hint(terms.end(), word_from_index(idx, d, n), acc.slots[slot]);
    }
  }
  return out;
}

TensorSeries operator*(const TensorSeries& a, const TensorSeries& b) {
  return multiply_capped(a, b, a.truncation());
}

TensorSeries power(const TensorSeries& a, int m) {
  if (m < 0) return power(inverse(a), -m);
  TensorSeries acc = TensorSeries::one(a.rank(), a.truncation());
  for (int k = 0; k < m; ++k) acc = acc * a;
  return acc;
}

TensorSeries commutator(const TensorSeries& a, const TensorSeries& b) { return a * b - b * a; }

TensorSeries inverse(const TensorSeries& u) {
  const Rational c = u.constant_term();
  if (sgn(c) == 0) throw PreconditionError("series with zero constant term is not invertible");
  const Rational cinv = 1 / c;
  // u = c (1 + x), u^-1 = c^-1 sum (-x)^m.
  TensorSeries minus_x = TensorSeries::one(u.rank(), u.truncation()) - u * cinv;
  TensorSeries acc = TensorSeries::one(u.rank(), u.truncation());
  TensorSeries term = acc;
  for (int m = 1; m <= u.truncation(); ++m) {
    term = multiply_capped(term, minus_x, u.truncation());
    if (term.is_zero()) break;
    acc += term;
  }
  return acc * cinv;
}

TensorSeries exp(const TensorSeries& a) {
  if (sgn(a.constant_term()) != 0) throw PreconditionError("exp requires zero constant term");
  TensorSeries acc = TensorSeries::one(a.rank(), a.truncation());
  TensorSeries term = acc;
  for (int m = 1; m <= a.truncation(); ++m) {
    term = term * a;
    if (term.is_zero()) break;
    term *= Rational(1, m);
    acc += term;
  }
  return acc;
}

TensorSeries log(const TensorSeries& u) {
  if (u.constant_term() != 1) throw PreconditionError("log requires constant term 1");
  const TensorSeries x = u - TensorSeries::one(u.rank(), u.truncation());
  TensorSeries acc(u.rank(), u.truncation());
  TensorSeries power_x = TensorSeries::one(u.rank(), u.truncation());
  for (int m = 1; m <= u.truncation(); ++m) {
    power_x = power_x * x;
    if (power_x.is_zero()) break;
    acc += power_x * Rational((m % 2 == 1) ? 1 : -1, m);
  }
  return acc;
}

namespace {

// Adds c * Delta(w) restricted to splits with both sides nonempty (if
// proper_only) or all splits.
void accumulate_coproduct(std::unordered_map<std::pair<Word, Word>, Rational, PairHash>& acc,
                          const Word& w, const Rational& c, bool proper_only) {
  const int len = w.length();
  const std::uint32_t full = (len == 32) ? ~0u : ((1u << len) - 1u);
  int left[Word::kMaxLength], right[Word::kMaxLength];
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (proper_only && (mask == 0 || mask == full)) continue;
    int nl = 0, nr = 0;
    for (int p = 0; p < len; ++p) {
      if (mask & (1u << p))
        left[nl++] = w[p];
      else
        right[nr++] = w[p];
    }
    auto key = std::make_pair(Word(std::span<const int>(left, nl)), Word(std::span<const int>(right, nr)));
    auto [it, ins] = acc.try_emplace(key, c);
    if (!ins) it->second += c;
  }
}

bool all_zero(const std::unordered_map<std::pair<Word, Word>, Rational, PairHash>& acc) {
  return std::all_of(acc.begin(), acc.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

}  // namespace

bool is_primitive(const TensorSeries& a) {
  if (sgn(a.constant_term()) != 0) return false;
  std::unordered_map<std::pair<Word, Word>, Rational, PairHash> acc;
  for (const auto& [w, c] : a.terms())
    if (w.length() >= 2) accumulate_coproduct(acc, w, c, true);
  return all_zero(acc);
}

bool is_grouplike(const TensorSeries& u) {
  if (u.constant_term() != 1) return false;
  std::unordered_map<std::pair<Word, Word>, Rational, PairHash> acc;
  for (const auto& [w, c] : u.terms()) accumulate_coproduct(acc, w, c, false);
  const int N = u.truncation();
  for (const auto& [v, cv] : u.terms()) {
    for (const auto& [w, cw] : u.terms()) {
      if (v.length() + w.length() > N) break;
      auto [it, ins] = acc.try_emplace(std::make_pair(v, w), -(cv * cw));
      if (!ins) it->second -= cv * cw;
    }
  }
  return all_zero(acc);
}

TensorSeries bch(const TensorSeries& a, const TensorSeries& b) {
  if (a.rank() != b.rank() || a.truncation() != b.truncation())
    throw PreconditionError("tensor series (n, N) mismatch in bch");
  if (!is_primitive(a) || !is_primitive(b)) throw PreconditionError("bch requires primitive arguments");
  return log(exp(a) * exp(b));
}

namespace {

struct Substituter {
  std::span<const TensorSeries> images;
  int N;
  int n_out;
  // Terms of f sorted purely lexicographically so that every prefix class is
  // a contiguous range.
  std::vector<std::pair<Word, const Rational*>> sorted;

  // Sum over words w in [lo, hi) sharing a prefix of length `depth` of
  // c_w * Z_{w[depth]} ... Z_{w[len-1]}, truncated at `cap`.
  TensorSeries eval(std::size_t lo, std::size_t hi, int depth, int cap) const {
    TensorSeries out(n_out, N);
    if (lo == hi || cap < 0) return out;
    if (sorted[lo].first.length() == depth) {
      out.add_term(Word{}, *sorted[lo].second);
      ++lo;
    }
    if (cap == 0) return out;
    while (lo < hi) {
      const int letter = sorted[lo].first[depth];
      std::size_t mid = lo;
      while (mid < hi && sorted[mid].first[depth] == letter) ++mid;
      TensorSeries tail = eval(lo, mid, depth + 1, cap - 1);
      out += multiply_capped(images[letter - 1], tail, cap);
      lo = mid;
    }
    return out;
  }
};

}  // namespace

TensorSeries substitute(const TensorSeries& f, std::span<const TensorSeries> images) {
  if (images.size() < static_cast<std::size_t>(f.rank()))
    throw PreconditionError("substitution needs an image for every generator");
  const int n_out = images.front().rank();
  const int N = images.front().truncation();
  for (const auto& z : images) {
    if (z.rank() != n_out || z.truncation() != N)
      throw PreconditionError("substitution images must share (n, N)");
    if (sgn(z.constant_term()) != 0) throw PreconditionError("substitution images need zero constant term");
  }
  Substituter s{images, N, n_out, {}};
  s.sorted.reserve(f.terms().size());
  for (const auto& [w, c] : f.terms()) s.sorted.emplace_back(w, &c);
  std::sort(s.sorted.begin(), s.sorted.end(),
            [](const auto& x, const auto& y) { return Word::lex_less(x.first, y.first); });
  return s.eval(0, s.sorted.size(), 0, N);
}

std::string to_string(const TensorSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : s.terms()) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c) + " * " + w.to_string();
  }
  return out;
}

}  // namespace stringlink
