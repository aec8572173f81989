#include "stringlink/linalg.hpp"

#include "stringlink/errors.hpp"

#include <numeric>
#include <utility>

namespace stringlink {

std::vector<Rational> RationalMatrix::column(int c) const {
  std::vector<Rational> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw PreconditionError("matrix-vector size mismatch");
  std::vector<Rational> out(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (sgn(v[c]) != 0 && sgn((*this)(r, c)) != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

namespace {

// Gauss-Jordan on m, applying the same row operations to the companion (may
// have zero columns). Returns pivot columns in row order.
std::vector<int> eliminate(RationalMatrix& m, RationalMatrix* companion, PivotOrder order) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  int row = 0;
  Rational factor;
  for (int step = 0; step < cols && row < rows; ++step) {
    const int c = (order == PivotOrder::Forward) ? step : cols - 1 - step;
    int p = row;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != row) {
      for (int k = 0; k < cols; ++k) std::swap(m(p, k), m(row, k));
      if (companion)
        for (int k = 0; k < companion->cols(); ++k) std::swap((*companion)(p, k), (*companion)(row, k));
    }
    const Rational inv = 1 / m(row, c);
    for (int k = 0; k < cols; ++k)
      if (sgn(m(row, k)) != 0) m(row, k) *= inv;
    if (companion)
      for (int k = 0; k < companion->cols(); ++k)
        if (sgn((*companion)(row, k)) != 0) (*companion)(row, k) *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || sgn(m(r, c)) == 0) continue;
      factor = m(r, c);
      for (int k = 0; k < cols; ++k)
        if (sgn(m(row, k)) != 0) m(r, k) -= factor * m(row, k);
      if (companion)
        for (int k = 0; k < companion->cols(); ++k)
          if (sgn((*companion)(row, k)) != 0) (*companion)(r, k) -= factor * (*companion)(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace_from(const RationalMatrix& reduced, const std::vector<int>& pivots) {
  const int cols = reduced.cols();
  std::vector<int> pivot_row(cols, -1);
  for (int r = 0; r < static_cast<int>(pivots.size()); ++r) pivot_row[pivots[r]] = r;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < cols; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r) v[pivots[r]] = -reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Echelon rref(RationalMatrix m, PivotOrder order) {
  auto pivots = eliminate(m, nullptr, order);
  return Echelon{std::move(m), std::move(pivots)};
}

int rank(const RationalMatrix& m) { return rref(m).rank(); }

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  const Echelon e = rref(m);
  return nullspace_from(e.reduced, e.pivots);
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b,
                                           PivotOrder order) {
  if (static_cast<int>(b.size()) != a.rows()) throw PreconditionError("right-hand side size mismatch");
  RationalMatrix m = a;
  RationalMatrix rhs(a.rows(), 1);
  for (int r = 0; r < a.rows(); ++r) rhs(r, 0) = b[r];
  const auto pivots = eliminate(m, &rhs, order);
  for (int r = static_cast<int>(pivots.size()); r < a.rows(); ++r)
    if (sgn(rhs(r, 0)) != 0) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (int r = 0; r < static_cast<int>(pivots.size()); ++r) x[pivots[r]] = rhs(r, 0);
  return x;
}

ExactSolver::ExactSolver(const RationalMatrix& a, PivotOrder order)
    : rows_(a.rows()), cols_(a.cols()), reduced_(a), transform_(a.rows(), a.rows()) {
  for (int r = 0; r < rows_; ++r) transform_(r, r) = 1;
  pivots_ = eliminate(reduced_, &transform_, order);
}

std::optional<std::vector<Rational>> ExactSolver::solve(const std::vector<Rational>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw PreconditionError("right-hand side size mismatch");
  const std::vector<Rational> y = transform_ * b;
  for (int r = rank(); r < rows_; ++r)
    if (sgn(y[r]) != 0) return std::nullopt;
  std::vector<Rational> x(cols_);
  for (int r = 0; r < rank(); ++r) x[pivots_[r]] = y[r];
  return x;
}

std::vector<std::vector<Rational>> ExactSolver::nullspace() const { return nullspace_from(reduced_, pivots_); }

}  // namespace stringlink
