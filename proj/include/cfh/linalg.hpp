#pragma once

#include <optional>
#include <vector>

#include "cfh/rational.hpp"

namespace cfh {

// Dense matrix over the rationals, row-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return data_[(size_t)r * cols_ + c]; }
  const Rational& at(int r, int c) const {
    return data_[(size_t)r * cols_ + c];
  }

  bool is_zero() const;
  Matrix operator*(const Matrix& o) const;
  // Rows restricted to those indices, in the given order.
  Matrix select_rows(const std::vector<int>& rows) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// In-place reduction to reduced row echelon form; returns the pivot columns
// in ascending order.  Arithmetic is exact, and pivoting is deterministic:
// for each column, the first not-yet-used row (top to bottom) holding a
// nonzero entry becomes the pivot.
std::vector<int> rref(Matrix& m);

int rank(Matrix m);

// Basis of {x : m x = 0}: one vector per free column, ordered by free
// column index, with the free coordinate set to 1.
std::vector<std::vector<Rational>> kernel_basis(Matrix m);

// One exact solution of m x = b (free coordinates zero), or nullopt when
// the system is inconsistent.
std::optional<std::vector<Rational>> solve(Matrix m,
                                           std::vector<Rational> b);

}  // namespace cfh
