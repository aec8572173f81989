#pragma once

// Magnus-type expansions theta: F_n -> K<<X_1..X_n>> truncated at degree N,
// given by the images of the generators.

#include "stringlink/free_lie.hpp"
#include "stringlink/freegroup.hpp"
#include "stringlink/tensor_series.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace stringlink {

class Expansion {
 public:
  /// Checks theta(x_i) = 1 + X_i modulo degree >= 2 for every i.
  explicit Expansion(std::vector<TensorSeries> values);

  /// x_i -> 1 + X_i.
  static Expansion magnus(int n, int N);
  /// x_i -> exp(X_i).
  static Expansion exponential(int n, int N);

  int rank() const noexcept { return static_cast<int>(values_.size()); }
  int truncation() const noexcept { return values_.front().truncation(); }
  const TensorSeries& value(int i) const { return values_.at(i - 1); }
  const TensorSeries& inverse_value(int i) const { return inverses_.at(i - 1); }
  const std::vector<TensorSeries>& values() const noexcept { return values_; }

  Expansion truncated(int N) const;

  friend bool operator==(const Expansion& a, const Expansion& b) { return a.values_ == b.values_; }

  /// Integer tables for fast word evaluation (see expansion.cpp).
  struct ScaledTables;
  const ScaledTables& scaled() const { return *scaled_; }

 private:
  std::vector<TensorSeries> values_;
  std::vector<TensorSeries> inverses_;
  std::shared_ptr<const ScaledTables> scaled_;
};

TensorSeries evaluate(const Expansion& theta, const FreeGroupWord& w);

bool is_grouplike_expansion(const Expansion& theta);

struct SpecialReport {
  bool grouplike = false;
  bool tangential = false;
  bool normalized = false;
  /// log U_i, normalized to have no X_i term; filled when tangential.
  std::vector<LieElement> conjugators;
  /// First degree at which a condition fails, -1 when special.
  int failing_degree = -1;
  std::string diagnostic;

  bool special() const noexcept { return grouplike && tangential && normalized; }
};

SpecialReport is_special(const Expansion& theta);

struct BuildStrategy {
  enum class Kind { Canonical, Randomized };
  Kind kind = Kind::Canonical;
  std::uint64_t seed = 0;

  static BuildStrategy canonical() { return {}; }
  static BuildStrategy randomized(std::uint64_t seed) { return {Kind::Randomized, seed}; }
};

/// Degree-by-degree construction of a special expansion. n = 1 returns the
/// exponential expansion.
Expansion build_special(int n, int N, BuildStrategy strategy = BuildStrategy::canonical());

std::string expansion_to_json(const Expansion& theta);
/// Throws ParseError on malformed documents.
Expansion expansion_from_json(std::string_view text);

}  // namespace stringlink
