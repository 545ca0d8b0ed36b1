#pragma once

#include <vector>

#include "gerbe/complex.hpp"

namespace gerbe {

/// Barycentric subdivision K' of K with the subdivision chain map.
struct Subdivision {
  SimplicialComplex complex;
  /// chain_maps[k]: C_k(K) -> C_k(K'), commuting with the boundary.
  std::vector<SparseIntMatrix> chain_maps;

  Chain transfer(const Chain& c) const;
  /// Pull a K'-cochain back to K: (sd^* c)(s) = c(sd s).
  IntCochain pullback(const IntCochain& c) const;
  RealCochain pullback(const RealCochain& c) const;
};

/// Vertices of K' are the barycenters of the simplices of K; the first
/// |K_0| of them coincide with the vertices of K. Orientation is chosen so
/// that the fundamental cycle of K maps to that of K'.
Subdivision barycentric_subdivide(const SimplicialComplex& k);

}  // namespace gerbe
