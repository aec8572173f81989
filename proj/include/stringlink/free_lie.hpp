#pragma once

// Free Lie algebra on X_1..X_n in Lyndon coordinates. The basis element of a
// Lyndon word w is P_w, bracketed by the standard factorization w = uv with v
// the longest proper Lyndon suffix: P_w = [P_u, P_v].

#include "stringlink/linalg.hpp"
#include "stringlink/rational.hpp"
#include "stringlink/tensor_series.hpp"
#include "stringlink/word.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stringlink {

bool is_lyndon(const Word& w);
/// Lyndon words of length d over {1..n} in lexicographic order.
const std::vector<Word>& lyndon_basis(int n, int d);
/// Dimension of the degree-d part by the Witt formula.
long long witt_dim(int n, int d);
/// (u, v) with w = uv, v the longest proper Lyndon suffix. |w| >= 2.
std::pair<Word, Word> standard_factorization(const Word& w);
/// "[X1,[X1,X2]]"; single letters render as "X1".
std::string bracketing(const Word& w);
/// Expansion of P_w in the tensor algebra (homogeneous of degree |w|).
const std::map<Word, Rational>& lyndon_polynomial(const Word& w);

class LieElement {
 public:
  using Terms = std::map<Word, Rational>;

  LieElement(int n, int max_degree);

  static LieElement generator(int n, int max_degree, int i);
  /// P_w for a Lyndon word w.
  static LieElement basis(int n, int max_degree, const Word& w, const Rational& c = Rational(1));

  int rank() const noexcept { return n_; }
  int max_degree() const noexcept { return max_degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Word& w) const;
  /// Adds c P_w; terms above max_degree are discarded.
  void add_term(const Word& w, const Rational& c);

  LieElement degree_part(int d) const;
  /// Drops all degrees above max_degree (must not exceed the current one).
  LieElement truncated(int max_degree) const;
  /// Same terms with a larger degree budget.
  LieElement extended(int max_degree) const;
  int min_degree() const;
  bool is_homogeneous() const;

  LieElement& operator+=(const LieElement& rhs);
  LieElement& operator-=(const LieElement& rhs);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(LieElement a, const Rational& c) { return a *= c; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  LieElement operator-() const;

  friend bool operator==(const LieElement&, const LieElement&) = default;

 private:
  void require_compatible(const LieElement& rhs) const;

  int n_;
  int max_degree_;
  Terms terms_;
};

/// Lie bracket, truncated at the common max_degree.
LieElement bracket(const LieElement& a, const LieElement& b);
/// Bracket of two basis elements as Lyndon coordinates (cached).
const std::map<Word, Rational>& basis_bracket(const Word& u, const Word& v);

/// The tensor image, truncated at N (default: max_degree).
TensorSeries to_tensor(const LieElement& a, int N = -1);
/// Inverse of to_tensor on primitive series. Throws PreconditionError for
/// non-primitive input.
LieElement from_tensor(const TensorSeries& p);
/// Lyndon coordinates of a homogeneous Lie polynomial given as a tensor
/// polynomial. Throws PreconditionError if it is not a Lie polynomial.
std::map<Word, Rational> lie_coordinates(std::map<Word, Rational> poly);

/// "coef * [bracketing]" lines in Lyndon order; zero renders as "0".
std::string to_string(const LieElement& a);

/// sum_i X_i (x) Y_i in H (x) L.
class HTensorLie {
 public:
  HTensorLie(int n, int max_degree);
  explicit HTensorLie(std::vector<LieElement> entries);

  int rank() const noexcept { return n_; }
  int max_degree() const noexcept { return max_degree_; }
  const LieElement& entry(int i) const { return entries_.at(i - 1); }
  const std::vector<LieElement>& entries() const noexcept { return entries_; }
  void set_entry(int i, LieElement y);
  /// Adds c X_i (x) P_w.
  void add_term(int i, const Word& w, const Rational& c);

  bool is_zero() const;
  HTensorLie degree_part(int d) const;
  /// Degrees in [lo, hi].
  HTensorLie degree_range(int lo, int hi) const;
  int min_degree() const;
  /// -1 when the entries mix degrees or everything is zero.
  int pure_degree() const;

  HTensorLie& operator+=(const HTensorLie& rhs);
  HTensorLie& operator-=(const HTensorLie& rhs);
  friend HTensorLie operator+(HTensorLie a, const HTensorLie& b) { return a += b; }
  friend HTensorLie operator-(HTensorLie a, const HTensorLie& b) { return a -= b; }

  friend bool operator==(const HTensorLie&, const HTensorLie&) = default;

 private:
  int n_;
  int max_degree_;
  std::vector<LieElement> entries_;
};

/// sum_i [X_i, Y_i]. Requires a homogeneous argument (or zero).
LieElement bracket_map(const HTensorLie& x);
/// True when the bracket map kills every homogeneous component.
bool in_D(const HTensorLie& x);

/// Column (i, w) -> coordinates of [X_i, P_w] in degree l+1. Columns are
/// ordered i-major, then by Lyndon order of w.
RationalMatrix bracket_matrix(int n, int l);
/// dim D_l(H) as the kernel dimension of bracket_matrix.
long long d_dimension(int n, int l);

/// "X1 (x) coef * [bracketing]" lines.
std::string to_string(const HTensorLie& x);

}  // namespace stringlink
