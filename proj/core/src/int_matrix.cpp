#include "gerbe/int_matrix.hpp"

#include <utility>

#include "gerbe/error.hpp"

namespace gerbe {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::from_sparse(const SparseIntMatrix& m) {
  IntMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    for (SparseIntMatrix::InnerIterator it(m, j); it; ++it) {
      out(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col())) = it.value();
    }
  }
  return out;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix out(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorCode::InvalidInput, "ragged integer matrix");
    for (std::size_t j = 0; j < c; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_; ++i) out(j, i) = (*this)(i, j);
  }
  return out;
}

IntMatrix IntMatrix::row_block(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < count; ++i) out(i, j) = (*this)(first + i, j);
  }
  return out;
}

IntMatrix IntMatrix::col_block(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t j = 0; j < count; ++j) {
    auto src = col(first + j);
    auto dst = out.col(j);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

std::vector<Integer> IntMatrix::multiply(std::span<const Integer> x) const {
  if (x.size() != cols_) throw Error(ErrorCode::InvalidInput, "dimension mismatch in product");
  std::vector<Integer> y(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j].is_zero()) continue;
    auto c = col(j);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!c[i].is_zero()) y[i] += c[i] * x[j];
    }
  }
  return y;
}

std::vector<Integer> IntMatrix::multiply(std::span<const std::int64_t> x) const {
  std::vector<Integer> xi(x.begin(), x.end());
  return multiply(std::span<const Integer>(xi));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidInput, "dimension mismatch in product");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t j = 0; j < b.cols_; ++j) {
    auto dst = out.col(j);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& bkj = b(k, j);
      if (bkj.is_zero()) continue;
      auto src = a.col(k);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        if (!src[i].is_zero()) dst[i] += src[i] * bkj;
      }
    }
  }
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (!v.is_zero()) return false;
  }
  return true;
}

IntMatrix multiply(const IntMatrix& a, const SparseIntMatrix& s) {
  if (a.cols() != static_cast<std::size_t>(s.rows())) {
    throw Error(ErrorCode::InvalidInput, "dimension mismatch in sparse product");
  }
  IntMatrix out(a.rows(), static_cast<std::size_t>(s.cols()));
  for (Eigen::Index j = 0; j < s.outerSize(); ++j) {
    auto dst = out.col(static_cast<std::size_t>(j));
    for (SparseIntMatrix::InnerIterator it(s, j); it; ++it) {
      auto src = a.col(static_cast<std::size_t>(it.row()));
      const Integer v(it.value());
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!src[i].is_zero()) dst[i] += src[i] * v;
      }
    }
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k);
        v.sub_mul(m(i, k), m(k, j));
        m(i, j) = div_floor(v, prev);  // exact by Sylvester's identity
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Integer det = m(n - 1, n - 1);
  if (sign < 0) det.negate();
  return det;
}

}  // namespace gerbe
