#include "gerbe/smith.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "gerbe/error.hpp"

namespace gerbe {

namespace {

class Reducer {
 public:
  Reducer(IntMatrix& a, SmithDecomposition& out, const SmithOptions& opt)
      : a_(a), m_(a.rows()), n_(a.cols()), opt_(opt) {
    if (opt.left) u_ = &out.U;
    if (opt.left_inverse) ui_ = &out.U_inv;
    if (opt.right) v_ = &out.V;
    if (opt.right_inverse) vi_ = &out.V_inv;
    for (IntMatrix* t : {u_, ui_}) {
      if (t) *t = IntMatrix::identity(m_);
    }
    for (IntMatrix* t : {v_, vi_}) {
      if (t) *t = IntMatrix::identity(n_);
    }
  }

  std::size_t diagonalize() {
    const std::size_t limit = std::min(m_, n_);
    std::size_t s = 0;
    for (; s < limit; ++s) {
      std::size_t pi = 0;
      std::size_t pj = 0;
      if (!find_pivot(s, pi, pj)) break;
      if (pi != s) row_swap(pi, s);
      if (pj != s) col_swap(pj, s);
      reduce_pivot(s);
    }
    return s;
  }

  void enforce_divisibility(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i) {
      make_positive(i);
      for (std::size_t j = i + 1; j < rank; ++j) {
        make_positive(j);
        if (mod_floor(a_(j, j), a_(i, i)).is_zero()) continue;
        // col_i += col_j puts d_j below the pivot; re-reducing yields gcd and lcm.
        col_addmul(i, j, Integer(-1), 0);
        reduce_pivot(i);
        make_positive(i);
        make_positive(j);
      }
    }
  }

 private:
  void check_bits(const Integer& v) const {
    if (opt_.max_bits != 0 && !v.is_small() && v.bit_length() > opt_.max_bits) {
      throw Error(ErrorCode::OverflowPolicy,
                  "Smith normal form entry exceeds " + std::to_string(opt_.max_bits) + " bits");
    }
  }

  bool find_pivot(std::size_t s, std::size_t& pi, std::size_t& pj) const {
    const Integer* best = nullptr;
    Integer best_abs;
    for (std::size_t j = s; j < n_; ++j) {
      auto c = a_.col(j);
      for (std::size_t i = s; i < m_; ++i) {
        if (c[i].is_zero()) continue;
        if (c[i].is_unit()) {
          pi = i;
          pj = j;
          return true;
        }
        Integer mag = c[i].abs();
        if (!best || mag < best_abs) {
          best = &c[i];
          best_abs = std::move(mag);
          pi = i;
          pj = j;
        }
      }
    }
    return best != nullptr;
  }

  // Clear row s and column s outside the pivot, shrinking the pivot as needed.
  void reduce_pivot(std::size_t s) {
    for (;;) {
      bool dirty = false;
      {
        auto c = a_.col(s);
        for (std::size_t i = s + 1; i < m_; ++i) {
          if (c[i].is_zero()) continue;
          row_addmul(i, s, div_floor(c[i], c[s]), s);
          if (!c[i].is_zero()) dirty = true;
        }
      }
      for (std::size_t j = s + 1; j < n_; ++j) {
        if (a_(s, j).is_zero()) continue;
        col_addmul(j, s, div_floor(a_(s, j), a_(s, s)), s);
        if (!a_(s, j).is_zero()) dirty = true;
      }
      if (!dirty) return;
      // Move the smallest leftover of row s / column s onto the diagonal.
      Integer best = a_(s, s).abs();
      std::size_t bi = s;
      std::size_t bj = s;
      for (std::size_t i = s + 1; i < m_; ++i) {
        if (!a_(i, s).is_zero() && a_(i, s).abs() < best) {
          best = a_(i, s).abs();
          bi = i;
          bj = s;
        }
      }
      for (std::size_t j = s + 1; j < n_; ++j) {
        if (!a_(s, j).is_zero() && a_(s, j).abs() < best) {
          best = a_(s, j).abs();
          bi = s;
          bj = j;
        }
      }
      if (bi != s) row_swap(bi, s);
      if (bj != s) col_swap(bj, s);
    }
  }

  void make_positive(std::size_t i) {
    if (a_(i, i).sign() < 0) row_negate(i);
  }

  void row_swap(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n_; ++c) std::swap(a_(i, c), a_(j, c));
    if (u_) {
      for (std::size_t c = 0; c < m_; ++c) std::swap((*u_)(i, c), (*u_)(j, c));
    }
    if (ui_) {
      auto ci = ui_->col(i);
      auto cj = ui_->col(j);
      std::swap_ranges(ci.begin(), ci.end(), cj.begin());
    }
  }

  void col_swap(std::size_t i, std::size_t j) {
    auto ci = a_.col(i);
    auto cj = a_.col(j);
    std::swap_ranges(ci.begin(), ci.end(), cj.begin());
    if (v_) {
      auto vi = v_->col(i);
      auto vj = v_->col(j);
      std::swap_ranges(vi.begin(), vi.end(), vj.begin());
    }
    if (vi_) {
      for (std::size_t c = 0; c < n_; ++c) std::swap((*vi_)(i, c), (*vi_)(j, c));
    }
  }

  // row_i -= q * row_j; columns before `from` are known to be zero in row j.
  void row_addmul(std::size_t i, std::size_t j, const Integer& q, std::size_t from) {
    if (q.is_zero()) return;
    for (std::size_t c = from; c < n_; ++c) {
      const Integer& src = a_(j, c);
      if (src.is_zero()) continue;
      a_(i, c).sub_mul(q, src);
      check_bits(a_(i, c));
    }
    if (u_) {
      for (std::size_t c = 0; c < m_; ++c) {
        const Integer& src = (*u_)(j, c);
        if (!src.is_zero()) (*u_)(i, c).sub_mul(q, src);
      }
    }
    if (ui_) {
      // U^{-1} <- U^{-1} E^{-1}: col_j += q * col_i
      auto ci = ui_->col(i);
      auto cj = ui_->col(j);
      const Integer mq = -q;
      for (std::size_t r = 0; r < m_; ++r) {
        if (!ci[r].is_zero()) cj[r].sub_mul(mq, ci[r]);
      }
    }
  }

  // col_i -= q * col_j; rows before `from` are known to be zero in column j.
  void col_addmul(std::size_t i, std::size_t j, const Integer& q, std::size_t from) {
    if (q.is_zero()) return;
    auto ci = a_.col(i);
    auto cj = a_.col(j);
    for (std::size_t r = from; r < m_; ++r) {
      if (cj[r].is_zero()) continue;
      ci[r].sub_mul(q, cj[r]);
      check_bits(ci[r]);
    }
    if (v_) {
      auto vi = v_->col(i);
      auto vj = v_->col(j);
      for (std::size_t r = 0; r < n_; ++r) {
        if (!vj[r].is_zero()) vi[r].sub_mul(q, vj[r]);
      }
    }
    if (vi_) {
      // V^{-1} <- F^{-1} V^{-1}: row_j += q * row_i
      const Integer mq = -q;
      for (std::size_t c = 0; c < n_; ++c) {
        const Integer& src = (*vi_)(i, c);
        if (!src.is_zero()) (*vi_)(j, c).sub_mul(mq, src);
      }
    }
  }

  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < n_; ++c) a_(i, c).negate();
    if (u_) {
      for (std::size_t c = 0; c < m_; ++c) (*u_)(i, c).negate();
    }
    if (ui_) {
      for (auto& v : ui_->col(i)) v.negate();
    }
  }

  IntMatrix& a_;
  std::size_t m_;
  std::size_t n_;
  const SmithOptions& opt_;
  IntMatrix* u_ = nullptr;
  IntMatrix* ui_ = nullptr;
  IntMatrix* v_ = nullptr;
  IntMatrix* vi_ = nullptr;
};

}  // namespace

IntMatrix SmithDecomposition::diagonal() const {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < divisors.size(); ++i) d(i, i) = divisors[i];
  return d;
}

SmithDecomposition smith_normal_form(IntMatrix a, const SmithOptions& options) {
  SmithDecomposition out;
  out.rows = a.rows();
  out.cols = a.cols();
  Reducer reducer(a, out, options);
  const std::size_t rank = reducer.diagonalize();
  reducer.enforce_divisibility(rank);
  out.divisors.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) out.divisors.push_back(a(i, i));
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotUnimodular, "matrix is not square");
  const SmithDecomposition snf = smith_normal_form(a);
  if (snf.rank() != a.rows() ||
      std::any_of(snf.divisors.begin(), snf.divisors.end(), [](const Integer& d) { return !d.is_unit(); })) {
    throw Error(ErrorCode::NotUnimodular, "integer matrix is not invertible over the integers");
  }
  // U A V = I  =>  A^{-1} = V U
  return snf.V * snf.U;
}

}  // namespace gerbe
