#pragma once

#include <Eigen/SparseCore>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gerbe/integer.hpp"

namespace gerbe {

/// Sparse integer matrix used for boundary operators.
using SparseIntMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::ColMajor>;

/// Dense exact integer matrix, column-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_sparse(const SparseIntMatrix& m);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<Integer> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const Integer> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  IntMatrix transpose() const;
  /// Rows [first, first + count).
  IntMatrix row_block(std::size_t first, std::size_t count) const;
  /// Columns [first, first + count).
  IntMatrix col_block(std::size_t first, std::size_t count) const;

  std::vector<Integer> multiply(std::span<const Integer> x) const;
  std::vector<Integer> multiply(std::span<const std::int64_t> x) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Dense product A * S for sparse S; exact.
IntMatrix multiply(const IntMatrix& a, const SparseIntMatrix& s);

/// Determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& a);

}  // namespace gerbe
