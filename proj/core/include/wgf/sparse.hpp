#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wgf {

/// Compressed-sparse-row matrix. Column indices are sorted within each row
/// and duplicates are summed at construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  }

  struct Triplet {
    int row;
    int col;
    double value;
  };

  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> multiply_transpose(const std::vector<double>& x) const;
  SparseMatrix transpose() const;

  /// Entry lookup by binary search; zero when not stored.
  double at(int r, int c) const;

  std::vector<std::vector<double>> to_dense() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

inline std::vector<double> matvec(const SparseMatrix& m,
                                  const std::vector<double>& x) {
  return m.multiply(x);
}

}  // namespace wgf
