#pragma once

// Truncated completed tensor algebra K<<X_1..X_n>> over the rationals.

#include "stringlink/rational.hpp"
#include "stringlink/word.hpp"

#include <map>
#include <span>
#include <string>

namespace stringlink {

class TensorSeries {
 public:
  using Terms = std::map<Word, Rational>;

  /// The zero series in n generators truncated above degree N.
  TensorSeries(int n, int N);

  static TensorSeries constant(int n, int N, const Rational& c);
  static TensorSeries one(int n, int N) { return constant(n, N, Rational(1)); }
  /// X_i.
  static TensorSeries generator(int n, int N, int i);
  static TensorSeries monomial(int n, int N, const Word& w, const Rational& c = Rational(1));

  int rank() const noexcept { return n_; }
  int truncation() const noexcept { return N_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Word& w) const;
  Rational constant_term() const { return coefficient(Word{}); }
  /// Adds c X_w; terms above the truncation degree are discarded.
  void add_term(const Word& w, const Rational& c);

  TensorSeries degree_part(int d) const;
  /// Same rank, lower truncation degree.
  TensorSeries truncated(int N) const;
  /// Lowest degree carrying a nonzero coefficient, or -1 for the zero series.
  int min_degree() const;

  TensorSeries& operator+=(const TensorSeries& rhs);
  TensorSeries& operator-=(const TensorSeries& rhs);
  TensorSeries& operator*=(const Rational& c);

  friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
  friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
  friend TensorSeries operator*(TensorSeries a, const Rational& c) { return a *= c; }
  friend TensorSeries operator*(const Rational& c, TensorSeries a) { return a *= c; }
  TensorSeries operator-() const;

  friend bool operator==(const TensorSeries&, const TensorSeries&) = default;
  friend TensorSeries multiply_capped(const TensorSeries& a, const TensorSeries& b, int cap);

 private:
  void require_compatible(const TensorSeries& rhs) const;

  int n_;
  int N_;
  Terms terms_;
};

/// Concatenation product truncated at N. Operands must share (n, N).
TensorSeries operator*(const TensorSeries& a, const TensorSeries& b);
/// Product discarding every term above degree `cap` (cap <= N).
TensorSeries multiply_capped(const TensorSeries& a, const TensorSeries& b, int cap);
TensorSeries power(const TensorSeries& a, int m);
TensorSeries commutator(const TensorSeries& a, const TensorSeries& b);

/// Multiplicative inverse; requires a nonzero constant term.
TensorSeries inverse(const TensorSeries& u);
/// Requires zero constant term.
TensorSeries exp(const TensorSeries& a);
/// Requires constant term 1.
TensorSeries log(const TensorSeries& u);

/// Delta(a) = a (x) 1 + 1 (x) a, checked on the explicit coproduct.
bool is_primitive(const TensorSeries& a);
/// Delta(u) = u (x) u modulo total degree > N and constant term 1.
bool is_grouplike(const TensorSeries& u);

/// log(exp(a) exp(b)) for primitive a, b.
TensorSeries bch(const TensorSeries& a, const TensorSeries& b);

/// Algebra substitution X_i -> images[i-1]. Images share a common (n', N)
/// and have zero constant term; the result lives in that algebra.
TensorSeries substitute(const TensorSeries& f, std::span<const TensorSeries> images);

/// Sorted "coef * X1X2" terms joined by " + ".
std::string to_string(const TensorSeries& s);

}  // namespace stringlink
