#pragma once

// Free groups, pure braids in the band generators A(i,j), the Artin action and
// longitudes.
//
// Conventions (fixed once, all signs of invariants depend on them):
//   * A(i,j) acts on F_n by
//       x_k -> x_k                                  for k < i or k > j,
//       x_i -> (x_i x_j) x_i (x_i x_j)^-1,
//       x_j -> x_i x_j x_i^-1,
//       x_k -> [x_i,x_j] x_k [x_i,x_j]^-1           for i < k < j,
//     with [a,b] = a b a^-1 b^-1. This is the action of
//     s_i ... s_{j-2} s_{j-1}^2 s_{j-2}^-1 ... s_i^-1 where the half twist s_i
//     sends x_i -> x_i x_{i+1} x_i^-1 and x_{i+1} -> x_i.
//   * Products compose as Art(L L') = Art(L) o Art(L').
// Under these conventions every defining relation of PB_n holds exactly and
// x_1 ... x_n is fixed.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stringlink {

struct Letter {
  int generator = 1;  // 1..rank
  int exponent = 1;   // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

class FreeGroupWord {
 public:
  /// The identity of F_rank.
  explicit FreeGroupWord(int rank = 2);
  /// Freely reduces `letters`; throws PreconditionError on bad indices.
  FreeGroupWord(int rank, std::span<const Letter> letters);
  FreeGroupWord(int rank, std::initializer_list<Letter> letters)
      : FreeGroupWord(rank, std::span<const Letter>(letters.begin(), letters.size())) {}

  static FreeGroupWord generator(int rank, int i, int exponent = 1);
  /// Signed-integer form: +i for x_i, -i for x_i^-1.
  static FreeGroupWord from_signed(int rank, std::span<const int> letters);

  int rank() const noexcept { return rank_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  FreeGroupWord inverse() const;
  FreeGroupWord operator*(const FreeGroupWord& rhs) const;
  int exponent_sum(int generator) const;
  std::vector<int> to_signed() const;

  /// "x1 x2 x1^-1"; identity renders as "1".
  std::string to_string() const;

  friend bool operator==(const FreeGroupWord&, const FreeGroupWord&) = default;

 private:
  int rank_;
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
FreeGroupWord reduce(int rank, std::span<const Letter> letters);

/// Product x_1 x_2 ... x_n (the boundary word).
FreeGroupWord boundary_word(int rank);

struct BraidLetter {
  int i = 1;
  int j = 2;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

class BraidWord {
 public:
  explicit BraidWord(int strands = 2);
  BraidWord(int strands, std::vector<BraidLetter> letters);

  static BraidWord generator(int strands, int i, int j, int exponent = 1);

  int strands() const noexcept { return strands_; }
  const std::vector<BraidLetter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }

  BraidWord inverse() const;
  BraidWord operator*(const BraidWord& rhs) const;
  BraidWord power(int k) const;

  /// "A(1,2) A(1,3)^-1".
  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<BraidLetter> letters_;
};

/// Group commutator a b a^-1 b^-1.
BraidWord commutator(const BraidWord& a, const BraidWord& b);

/// An endomorphism of F_n given by the images of x_1..x_n.
class FreeGroupEndomorphism {
 public:
  explicit FreeGroupEndomorphism(int rank);  // identity
  FreeGroupEndomorphism(int rank, std::vector<FreeGroupWord> images);

  int rank() const noexcept { return rank_; }
  const FreeGroupWord& image(int i) const { return images_.at(i - 1); }
  const std::vector<FreeGroupWord>& images() const noexcept { return images_; }

  FreeGroupWord apply(const FreeGroupWord& w) const;
  /// (*this) o inner.
  FreeGroupEndomorphism compose(const FreeGroupEndomorphism& inner) const;

  friend bool operator==(const FreeGroupEndomorphism&, const FreeGroupEndomorphism&) = default;

 private:
  int rank_;
  std::vector<FreeGroupWord> images_;
};

/// Art(A(i,j)^exponent).
FreeGroupEndomorphism artin_generator(int strands, int i, int j, int exponent);
FreeGroupEndomorphism artin(const BraidWord& braid);
FreeGroupWord artin_action(const BraidWord& braid, const FreeGroupWord& word);

/// The conjugating words y_i with Art(L)(x_i) = y_i x_i y_i^-1, normalized so
/// that the exponent sum of x_i in y_i is zero.
class LongitudeTuple {
 public:
  /// Validated user data. Without `truncation` the boundary condition
  /// prod y_i x_i y_i^-1 = x_1...x_n is checked as an exact word identity;
  /// with truncation K it is checked modulo Gamma_{K+1} only.
  static LongitudeTuple from_words(int rank, std::vector<FreeGroupWord> words,
                                   std::optional<int> truncation = std::nullopt);

  int rank() const noexcept { return rank_; }
  const std::vector<FreeGroupWord>& words() const noexcept { return words_; }
  const FreeGroupWord& word(int i) const { return words_.at(i - 1); }
  /// Present for user-supplied tuples that are only known modulo Gamma_{K+1}.
  std::optional<int> truncation() const noexcept { return truncation_; }

  /// Image of x_i under the encoded automorphism, y_i x_i y_i^-1.
  FreeGroupWord image(int i) const;

  friend bool operator==(const LongitudeTuple&, const LongitudeTuple&) = default;

 private:
  friend LongitudeTuple longitudes(const BraidWord& braid);
  LongitudeTuple(int rank, std::vector<FreeGroupWord> words, std::optional<int> truncation)
      : rank_(rank), words_(std::move(words)), truncation_(truncation) {}

  int rank_;
  std::vector<FreeGroupWord> words_;
  std::optional<int> truncation_;
};

LongitudeTuple longitudes(const BraidWord& braid);

/// Splits a reduced conjugate of x_i as y x_i y^-1 with the exponent-sum
/// normalization. Returns nullopt when `w` is not a conjugate of x_i.
std::optional<FreeGroupWord> conjugating_word(const FreeGroupWord& w, int i);

/// Largest k <= max_k such that every y_i lies in Gamma_k F_n, detected by the
/// vanishing of the Magnus expansion of y_i below degree k.
int milnor_level(const LongitudeTuple& tuple, int max_k);
int milnor_level(const BraidWord& braid, int max_k);

}  // namespace stringlink
