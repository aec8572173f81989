#pragma once

#include "stringlink/expansion.hpp"
#include "stringlink/free_lie.hpp"
#include "stringlink/freegroup.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace stringlink {

/// exp(ad y)(x) truncated at the common degree bound.
LieElement exp_ad(const LieElement& y, const LieElement& x);

struct ConjugatorResult {
  std::optional<LieElement> y;
  int failing_degree = -1;
};

/// Solves exp(Y) X_i exp(-Y) = exp(l) for Y with no X_i term, given the Lie
/// element l of degree bound N. Y has degree bound N - 1.
ConjugatorResult try_conjugator_log(const LieElement& l, int i);

/// Same for a group-like series W. Throws PreconditionError("not conjugate")
/// when no such Y exists and when W is not group-like.
LieElement conjugator(const TensorSeries& w, int i);

/// X_i -> exp(Y_i) X_i exp(-Y_i) on the free Lie algebra, known through
/// degree N (the Y_i are known through degree N - 1).
class SpecialAutData {
 public:
  SpecialAutData(int N, std::vector<LieElement> y);

  int rank() const noexcept { return static_cast<int>(y_.size()); }
  int truncation() const noexcept { return N_; }
  const LieElement& y(int i) const { return y_.at(i - 1); }
  const std::vector<LieElement>& ys() const noexcept { return y_; }

  /// Image of X_i, degree bound N.
  LieElement image(int i) const;
  /// Applies the automorphism to a series of truncation N.
  TensorSeries apply(const TensorSeries& f) const;
  /// (*this) o inner.
  SpecialAutData compose(const SpecialAutData& inner) const;

  bool normalized() const;
  /// Sum of the images of X_i equals X_1 + ... + X_n through degree N.
  bool fixes_boundary() const;

  friend bool operator==(const SpecialAutData&, const SpecialAutData&) = default;

 private:
  int N_;
  std::vector<LieElement> y_;
};

/// A pure braid, or a longitude tuple supplied directly.
using LinkData = std::variant<BraidWord, LongitudeTuple>;
int rank(const LinkData& data);

/// theta(Art(L)(x_j)) for j = 1..n, composing generator actions without
/// expanding longitude words.
std::vector<TensorSeries> artin_images(const BraidWord& braid, const Expansion& theta);

/// theta o Art(L) o theta^-1 on the truncated tensor algebra. Throws
/// PreconditionError for a non-special theta and for N above what the data
/// supports (theta.truncation(), or the tuple truncation K).
SpecialAutData art_theta(const LongitudeTuple& data, const Expansion& theta, int N);
SpecialAutData art_theta(const BraidWord& braid, const Expansion& theta, int N);
SpecialAutData art_theta(const LinkData& data, const Expansion& theta, int N);

/// sum_i X_i (x) Y_i with degrees 1..N-1.
HTensorLie total_milnor(const LongitudeTuple& data, const Expansion& theta, int N);
HTensorLie total_milnor(const BraidWord& braid, const Expansion& theta, int N);
HTensorLie total_milnor(const LinkData& data, const Expansion& theta, int N);

/// Degree-k part. Throws FiltrationError when a lower degree is nonzero.
HTensorLie milnor_degree_k(const LongitudeTuple& data, const Expansion& theta, int k);
HTensorLie milnor_degree_k(const BraidWord& braid, const Expansion& theta, int k);
HTensorLie milnor_degree_k(const LinkData& data, const Expansion& theta, int k);

/// Degrees k..2k-1. Throws FiltrationError when a degree below k is nonzero.
HTensorLie truncated_milnor(const LongitudeTuple& data, const Expansion& theta, int k);
HTensorLie truncated_milnor(const BraidWord& braid, const Expansion& theta, int k);
HTensorLie truncated_milnor(const LinkData& data, const Expansion& theta, int k);

}  // namespace stringlink
