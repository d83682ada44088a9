#include "symdef/kernel/qmatrix.hpp"

#include <limits>

#include "symdef/kernel/errors.hpp"

namespace symdef {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw UsageError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QVector QMatrix::operator*(const QVector& x) const {
  if (x.size() != cols_) throw UsageError("matrix-vector dimension mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rational& a = (*this)(r, c);
      if (!a.is_zero() && !x[c].is_zero()) acc += a * x[c];
    }
    out[r] = acc;
  }
  return out;
}

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> nz;
  for (std::size_t col = 0; col < cols && prow < rows; ++col) {
    std::size_t best = rows;
    std::size_t best_bits = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = prow; r < rows; ++r) {
      if (m(r, col).is_zero()) continue;
      std::size_t bits = m(r, col).bit_size();
      if (bits < best_bits) {
        best = r;
        best_bits = bits;
      }
    }
    if (best == rows) continue;
    if (best != prow)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(best, c), m(prow, c));

    Rational inv = Rational(1) / m(prow, col);
    nz.clear();
    for (std::size_t c = col; c < cols; ++c) {
      if (m(prow, c).is_zero()) continue;
      m(prow, c) *= inv;
      nz.push_back(c);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == prow || m(r, col).is_zero()) continue;
      Rational factor = m(r, col);
      for (std::size_t c : nz) m(r, c) -= factor * m(prow, c);
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<QVector> nullspace_basis(QMatrix m) {
  auto pivots = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols);
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

SolveResult solve_linear_system(const QMatrix& a, const QVector& b) {
  if (b.size() != a.rows()) throw UsageError("right-hand side length does not match matrix rows");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return NoSolution{};

  LinearSolution sol;
  sol.particular.assign(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.particular[pivots[i]] = aug(i, a.cols());

  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(a.cols());
    v[free] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -aug(i, free);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace symdef
