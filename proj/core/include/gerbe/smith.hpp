#pragma once

#include <cstddef>
#include <vector>

#include "gerbe/int_matrix.hpp"

namespace gerbe {

/// Which unimodular transforms to accumulate. Untracked transforms are left empty.
struct SmithOptions {
  bool left = true;            // U
  bool left_inverse = false;   // U^{-1}
  bool right = true;           // V
  bool right_inverse = false;  // V^{-1}
  /// Cap on the bit length of any intermediate entry; 0 means unlimited.
  std::size_t max_bits = 0;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r.
struct SmithDecomposition {
  std::size_t rows = 0;
  std::size_t cols = 0;
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix V;
  IntMatrix V_inv;
  /// Nonzero diagonal entries of D, positive, in divisibility order.
  std::vector<Integer> divisors;

  std::size_t rank() const noexcept { return divisors.size(); }
  IntMatrix diagonal() const;
};

/// Smith normal form by exact elimination. Pivot rule: smallest nonzero
/// magnitude in the trailing block, ties broken by lowest (column, row) index.
SmithDecomposition smith_normal_form(IntMatrix a, const SmithOptions& options = {});

/// Exact inverse of a unimodular matrix; throws NotUnimodular otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

}  // namespace gerbe
