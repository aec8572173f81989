#pragma once

#include "stringlink/rational.hpp"

#include <optional>
#include <vector>

namespace stringlink {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  std::vector<Rational> column(int c) const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Forward scans columns left to right when choosing pivots; Reverse scans
/// right to left, so free variables end up on the low columns instead.
enum class PivotOrder { Forward, Reverse };

struct Echelon {
  RationalMatrix reduced;   // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const noexcept { return static_cast<int>(pivots.size()); }
};

Echelon rref(RationalMatrix m, PivotOrder order = PivotOrder::Forward);
int rank(const RationalMatrix& m);

/// One basis vector per free column: that column set to 1, other free
/// columns 0.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

/// Solves A x = b. Free variables are zero. nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b,
                                           PivotOrder order = PivotOrder::Forward);

/// Factors A once (T A = R) and then solves many right-hand sides.
class ExactSolver {
 public:
  explicit ExactSolver(const RationalMatrix& a, PivotOrder order = PivotOrder::Forward);

  int rank() const noexcept { return static_cast<int>(pivots_.size()); }
  const std::vector<int>& pivots() const noexcept { return pivots_; }
  const RationalMatrix& reduced() const noexcept { return reduced_; }

  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  int rows_;
  int cols_;
  RationalMatrix reduced_;
  RationalMatrix transform_;
  std::vector<int> pivots_;
};

}  // namespace stringlink
