#include "stringlink/free_lie.hpp"

#include "stringlink/errors.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace stringlink {

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (int k = 1; k < w.length(); ++k)
    if (!Word::lex_less(w, w.suffix(w.length() - k))) return false;
  return true;
}

namespace {

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, std::vector<Word>> g_basis;

std::mutex g_poly_mutex;
std::map<Word, std::map<Word, Rational>> g_poly;

std::mutex g_bracket_mutex;
std::map<std::pair<Word, Word>, std::map<Word, Rational>> g_bracket;

std::vector<Word> generate_lyndon(int n, int d) {
  // Duval's algorithm enumerates Lyndon words of length <= d in lex order.
  std::vector<Word> out;
  std::vector<int> w{1};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == d) out.push_back(Word(std::span<const int>(w)));
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < d) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == n) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

void add_product(std::map<Word, Rational>& acc, const std::map<Word, Rational>& a,
                 const std::map<Word, Rational>& b, int sign) {
  for (const auto& [x, cx] : a) {
    for (const auto& [y, cy] : b) {
      Rational c = cx * cy;
      if (sign < 0) c = -c;
      auto [it, ins] = acc.try_emplace(x * y, c);
      if (!ins) {
        it->second += c;
        if (sgn(it->second) == 0) acc.erase(it);
      }
    }
  }
}

void require_rank(int n) {
  if (n < 1 || n > Word::kMaxLetter) throw PreconditionError("Lie algebra rank must be in 1..15");
}

}  // namespace

const std::vector<Word>& lyndon_basis(int n, int d) {
  require_rank(n);
  if (d < 1 || d > Word::kMaxLength) throw PreconditionError("Lyndon degree must be in 1..16");
  std::lock_guard lock(g_basis_mutex);
  auto it = g_basis.find({n, d});
  if (it == g_basis.end()) it = g_basis.emplace(std::make_pair(n, d), generate_lyndon(n, d)).first;
  return it->second;
}

long long witt_dim(int n, int d) {
  if (d < 1) throw PreconditionError("Witt dimension needs d >= 1");
  auto mobius = [](int m) {
    int result = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      result = -result;
    }
    return m > 1 ? -result : result;
  };
  long long sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    long long pw = 1;
    for (int k = 0; k < d / e; ++k) pw *= n;
    sum += mobius(e) * pw;
  }
  return sum / d;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
  if (w.length() < 2) throw PreconditionError("standard factorization needs length >= 2");
  for (int len = w.length() - 1; len >= 1; --len) {
    const Word v = w.suffix(len);
    if (is_lyndon(v)) return {w.prefix(w.length() - len), v};
  }
  throw InternalError("no Lyndon suffix found");
}

std::string bracketing(const Word& w) {
  if (w.length() == 1) return "X" + std::to_string(w[0]);
  const auto [u, v] = standard_factorization(w);
  return "[" + bracketing(u) + "," + bracketing(v) + "]";
}

const std::map<Word, Rational>& lyndon_polynomial(const Word& w) {
  if (!is_lyndon(w)) throw PreconditionError("not a Lyndon word: " + w.to_string());
  {
    std::lock_guard lock(g_poly_mutex);
    if (auto it = g_poly.find(w); it != g_poly.end()) return it->second;
  }
  std::map<Word, Rational> poly;
  if (w.length() == 1) {
    poly.emplace(w, Rational(1));
  } else {
    const auto [u, v] = standard_factorization(w);
    const auto& pu = lyndon_polynomial(u);
    const auto& pv = lyndon_polynomial(v);
    add_product(poly, pu, pv, +1);
    add_product(poly, pv, pu, -1);
  }
  std::lock_guard lock(g_poly_mutex);
  return g_poly.try_emplace(w, std::move(poly)).first->second;
}

std::map<Word, Rational> lie_coordinates(std::map<Word, Rational> poly) {
  // P_w = w + lexicographically larger words of the same length, so the
  // smallest remaining word is always the next Lyndon coordinate.
  std::map<Word, Rational> out;
  while (!poly.empty()) {
    const auto [w, c] = *poly.begin();
    if (w.empty() || !is_lyndon(w)) throw PreconditionError("not a Lie polynomial (stuck at " + w.to_string() + ")");
    out.emplace(w, c);
    for (const auto& [x, cx] : lyndon_polynomial(w)) {
      auto [it, ins] = poly.try_emplace(x, -(c * cx));
      if (!ins) {
        it->second -= c * cx;
        if (sgn(it->second) == 0) poly.erase(it);
      }
    }
  }
  return out;
}

const std::map<Word, Rational>& basis_bracket(const Word& u, const Word& v) {
  {
    std::lock_guard lock(g_bracket_mutex);
    if (auto it = g_bracket.find({u, v}); it != g_bracket.end()) return it->second;
  }
  std::map<Word, Rational> poly;
  if (!(u == v)) {
    add_product(poly, lyndon_polynomial(u), lyndon_polynomial(v), +1);
    add_product(poly, lyndon_polynomial(v), lyndon_polynomial(u), -1);
  }
  auto coords = lie_coordinates(std::move(poly));
  std::lock_guard lock(g_bracket_mutex);
  return g_bracket.try_emplace(std::make_pair(u, v), std::move(coords)).first->second;
}

LieElement::LieElement(int n, int max_degree) : n_(n), max_degree_(max_degree) {
  require_rank(n);
  if (max_degree < 0 || max_degree > Word::kMaxLength) throw PreconditionError("Lie degree bound must be in 0..16");
}

LieElement LieElement::generator(int n, int max_degree, int i) {
  if (i < 1 || i > n) throw PreconditionError("generator index out of range");
  LieElement a(n, max_degree);
  a.add_term(Word::letter(i), Rational(1));
  return a;
}

LieElement LieElement::basis(int n, int max_degree, const Word& w, const Rational& c) {
  if (!is_lyndon(w) || w.max_letter() > n) throw PreconditionError("not a Lyndon word over the alphabet: " + w.to_string());
  LieElement a(n, max_degree);
  a.add_term(w, c);
  return a;
}

Rational LieElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LieElement::add_term(const Word& w, const Rational& c) {
  if (w.length() > max_degree_ || sgn(c) == 0) return;
  auto [it, ins] = terms_.try_emplace(w, c);
  if (!ins) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LieElement LieElement::degree_part(int d) const {
  LieElement out(n_, max_degree_);
  for (const auto& [w, c] : terms_)
    if (w.length() == d) out.terms_.emplace_hint(out.terms_.end(), w, c);
  return out;
}

LieElement LieElement::truncated(int max_degree) const {
  if (max_degree > max_degree_) throw PreconditionError("cannot raise the degree bound by truncation");
  LieElement out(n_, max_degree);
  for (const auto& [w, c] : terms_)
    if (w.length() <= max_degree) out.terms_.emplace_hint(out.terms_.end(), w, c);
  return out;
}

LieElement LieElement::extended(int max_degree) const {
  if (max_degree < max_degree_) throw PreconditionError("extended() cannot lower the degree bound");
  LieElement out(n_, max_degree);
  out.terms_ = terms_;
  return out;
}

int LieElement::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.length(); }

bool LieElement::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.length() == terms_.rbegin()->first.length();
}

void LieElement::require_compatible(const LieElement& rhs) const {
  if (n_ != rhs.n_ || max_degree_ != rhs.max_degree_)
    throw PreconditionError("Lie element (n, degree) mismatch: (" + std::to_string(n_) + "," +
                            std::to_string(max_degree_) + ") vs (" + std::to_string(rhs.n_) + "," +
                            std::to_string(rhs.max_degree_) + ")");
}

LieElement& LieElement::operator+=(const LieElement& rhs) {
  require_compatible(rhs);
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& rhs) {
  require_compatible(rhs);
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement out = *this;
  for (auto& [w, v] : out.terms_) v = -v;
  return out;
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  if (a.rank() != b.rank() || a.max_degree() != b.max_degree())
    throw PreconditionError("Lie element (n, degree) mismatch in bracket");
  LieElement out(a.rank(), a.max_degree());
  for (const auto& [u, cu] : a.terms()) {
    for (const auto& [v, cv] : b.terms()) {
      if (u.length() + v.length() > a.max_degree()) break;
      const Rational c = cu * cv;
      for (const auto& [w, cw] : basis_bracket(u, v)) out.add_term(w, c * cw);
    }
  }
  return out;
}

TensorSeries to_tensor(const LieElement& a, int N) {
  if (N < 0) N = a.max_degree();
  TensorSeries out(a.rank(), N);
  for (const auto& [w, c] : a.terms()) {
    if (w.length() > N) break;
    for (const auto& [x, cx] : lyndon_polynomial(w)) out.add_term(x, c * cx);
  }
  return out;
}

LieElement from_tensor(const TensorSeries& p) {
  if (!is_primitive(p)) throw PreconditionError("from_tensor requires a primitive series");
  LieElement out(p.rank(), p.truncation());
  for (const auto& [w, c] : lie_coordinates(p.terms())) out.add_term(w, c);
  return out;
}

std::string to_string(const LieElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    if (!first) os << '\n';
    first = false;
    os << to_string(c) << " * " << bracketing(w);
  }
  return os.str();
}

HTensorLie::HTensorLie(int n, int max_degree) : n_(n), max_degree_(max_degree) {
  entries_.reserve(n);
  for (int i = 0; i < n; ++i) entries_.emplace_back(n, max_degree);
}

HTensorLie::HTensorLie(std::vector<LieElement> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("H (x) L element needs at least one entry");
  n_ = static_cast<int>(entries_.size());
  max_degree_ = entries_.front().max_degree();
  for (const auto& e : entries_)
    if (e.rank() != n_ || e.max_degree() != max_degree_)
      throw PreconditionError("H (x) L entries must share rank n and degree bound");
}

void HTensorLie::set_entry(int i, LieElement y) {
  if (y.rank() != n_ || y.max_degree() != max_degree_) throw PreconditionError("H (x) L entry mismatch");
  entries_.at(i - 1) = std::move(y);
}

void HTensorLie::add_term(int i, const Word& w, const Rational& c) { entries_.at(i - 1).add_term(w, c); }

bool HTensorLie::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LieElement& e) { return e.is_zero(); });
}

HTensorLie HTensorLie::degree_part(int d) const { return degree_range(d, d); }

HTensorLie HTensorLie::degree_range(int lo, int hi) const {
  HTensorLie out(n_, max_degree_);
  for (int i = 0; i < n_; ++i)
    for (const auto& [w, c] : entries_[i].terms())
      if (w.length() >= lo && w.length() <= hi) out.entries_[i].add_term(w, c);
  return out;
}

int HTensorLie::min_degree() const {
  int m = -1;
  for (const auto& e : entries_) {
    const int d = e.min_degree();
    if (d >= 0 && (m < 0 || d < m)) m = d;
  }
  return m;
}

int HTensorLie::pure_degree() const {
  int deg = -1;
  for (const auto& e : entries_) {
    for (const auto& [w, c] : e.terms()) {
      if (deg < 0) deg = w.length();
      else if (deg != w.length()) return -1;
    }
  }
  return deg;
}

HTensorLie& HTensorLie::operator+=(const HTensorLie& rhs) {
  if (n_ != rhs.n_) throw PreconditionError("H (x) L rank mismatch");
  for (int i = 0; i < n_; ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

HTensorLie& HTensorLie::operator-=(const HTensorLie& rhs) {
  if (n_ != rhs.n_) throw PreconditionError("H (x) L rank mismatch");
  for (int i = 0; i < n_; ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

LieElement bracket_map(const HTensorLie& x) {
  const int n = x.rank();
  LieElement out(n, x.max_degree() + 1);
  if (x.is_zero()) return out;
  if (x.pure_degree() < 0) throw PreconditionError("bracket map requires a homogeneous H (x) L element");
  for (int i = 1; i <= n; ++i) {
    const LieElement y = x.entry(i).extended(x.max_degree() + 1);
    out += bracket(LieElement::generator(n, x.max_degree() + 1, i), y);
  }
  return out;
}

bool in_D(const HTensorLie& x) {
  for (int d = 1; d <= x.max_degree(); ++d) {
    const HTensorLie part = x.degree_part(d);
    if (!part.is_zero() && !bracket_map(part).is_zero()) return false;
  }
  return true;
}

RationalMatrix bracket_matrix(int n, int l) {
  const auto& rows = lyndon_basis(n, l + 1);
  const auto& cols = lyndon_basis(n, l);
  std::map<Word, int> row_index;
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) row_index.emplace(rows[r], r);
  RationalMatrix m(static_cast<int>(rows.size()), n * static_cast<int>(cols.size()));
  for (int i = 1; i <= n; ++i) {
    for (int k = 0; k < static_cast<int>(cols.size()); ++k) {
      const int col = (i - 1) * static_cast<int>(cols.size()) + k;
      for (const auto& [w, c] : basis_bracket(Word::letter(i), cols[k])) m(row_index.at(w), col) = c;
    }
  }
  return m;
}

long long d_dimension(int n, int l) {
  const RationalMatrix m = bracket_matrix(n, l);
  return m.cols() - rank(m);
}

std::string to_string(const HTensorLie& x) {
  std::ostringstream os;
  bool first = true;
  for (int i = 1; i <= x.rank(); ++i) {
    for (const auto& [w, c] : x.entry(i).terms()) {
      if (!first) os << '\n';
      first = false;
      os << "X" << i << " (x) " << to_string(c) << " * " << bracketing(w);
    }
  }
  return first ? "0" : os.str();
}

}  // namespace stringlink
