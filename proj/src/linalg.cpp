#include "cfh/linalg.hpp"

#include <utility>

#include "cfh/poly.hpp"

namespace cfh {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw Error("Matrix: negative dimension");
  data_.assign((size_t)rows * cols, Rational(0));
}

bool Matrix::is_zero() const {
  for (const Rational& x : data_)
    if (x != 0) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("Matrix: incompatible product shapes");
  Matrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
    }
  return out;
}

Matrix Matrix::select_rows(const std::vector<int>& rows) const {
  Matrix out((int)rows.size(), cols_);
  for (int i = 0; i < (int)rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= rows_)
      throw Error("Matrix: row selection out of range");
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(rows[i], j);
  }
  return out;
}

std::vector<int> rref(Matrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m.at(r, col) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = col; j < m.cols(); ++j)
        std::swap(m.at(p, j), m.at(row, j));
    Rational inv = 1 / m.at(row, col);
    for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      Rational f = m.at(r, col);
      if (f == 0) continue;
      for (int j = col; j < m.cols(); ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Matrix m) { return (int)rref(m).size(); }

std::vector<std::vector<Rational>> kernel_basis(Matrix m) {
  const int n = m.cols();
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(n, Rational(0));
    x[f] = 1;
    for (int r = 0; r < (int)pivots.size(); ++r) x[pivots[r]] = -m.at(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(Matrix m, std::vector<Rational> b) {
  if ((int)b.size() != m.rows()) throw Error("solve: rhs size mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (int r = 0; r < (int)pivots.size(); ++r)
    x[pivots[r]] = aug.at(r, m.cols());
  return x;
}

}  // namespace cfh
