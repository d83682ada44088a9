#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "symdef/kernel/rational.hpp"

namespace symdef {

using QVector = std::vector<Rational>;

/// Dense rectangular matrix of exact rationals, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  QVector operator*(const QVector& x) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form computed in place; returns the pivot columns.
/// Pivot rows are chosen by smallest bit size among the candidates.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);
std::vector<QVector> nullspace_basis(QMatrix m);

struct LinearSolution {
  QVector particular;
  std::vector<QVector> nullspace;
};
struct NoSolution {};

using SolveResult = std::variant<LinearSolution, NoSolution>;

/// Solves A x = b exactly. Free variables of the particular solution are zero.
SolveResult solve_linear_system(const QMatrix& a, const QVector& b);

}  // namespace symdef
