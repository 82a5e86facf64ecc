#include "wgf/sparse.hpp"

#include <algorithm>

namespace wgf {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols,
                                         std::vector<Triplet> t) {
  for (const Triplet& e : t)
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::invalid_argument("SparseMatrix::from_triplets: index range");
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  m.col_idx_.reserve(t.size());
  m.values_.reserve(t.size());
  std::size_t i = 0;
  for (int r = 0; r < rows; ++r) {
    while (i < t.size() && t[i].row == r) {
      int c = t[i].col;
      double v = 0.0;
      while (i < t.size() && t[i].row == r && t[i].col == c) v += t[i++].value;
      m.col_idx_.push_back(c);
      m.values_.push_back(v);
    }
    m.row_ptr_[r + 1] = static_cast<int>(m.col_idx_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  if ((int)x.size() != cols_)
    throw std::invalid_argument("SparseMatrix::multiply: dimension mismatch");
  std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      s += values_[p] * x[col_idx_[p]];
    y[r] = s;
  }
  return y;
}

std::vector<double> SparseMatrix::multiply_transpose(
    const std::vector<double>& x) const {
  if ((int)x.size() != rows_)
    throw std::invalid_argument(
        "SparseMatrix::multiply_transpose: dimension mismatch");
  std::vector<double> y(static_cast<std::size_t>(cols_), 0.0);
  for (int r = 0; r < rows_; ++r) {
    double xr = x[r];
    if (xr == 0.0) continue;
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      y[col_idx_[p]] += values_[p] * xr;
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int r = 0; r < rows_; ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      t.push_back({col_idx_[p], r, values_[p]});
  return from_triplets(cols_, rows_, std::move(t));
}

double SparseMatrix::at(int r, int c) const {
  auto first = col_idx_.begin() + row_ptr_[r];
  auto last = col_idx_.begin() + row_ptr_[r + 1];
  auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[it - col_idx_.begin()];
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> d(
      static_cast<std::size_t>(rows_),
      std::vector<double>(static_cast<std::size_t>(cols_), 0.0));
  for (int r = 0; r < rows_; ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      d[r][col_idx_[p]] += values_[p];
  return d;
}

}  // namespace wgf
