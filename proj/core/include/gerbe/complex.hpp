#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "gerbe/int_matrix.hpp"

namespace gerbe {

/// Vertex indices of a simplex. Stored simplices are sorted ascending and
/// their orientation is the one induced by that order.
using Simplex = std::vector<int>;

/// Raw description of a closed triangulated manifold, as read from a mesh file.
struct MeshData {
  int dimension = 0;
  std::vector<std::vector<double>> vertices;
  /// Top simplices; the vertex order of the first simplex of each connected
  /// component fixes that component's orientation.
  std::vector<Simplex> top_simplices;
  /// Translation vectors of an identification lattice (mutually orthogonal).
  std::vector<std::vector<double>> periods;
  /// Optional per-top-simplex vertex coordinates in a covering space, listed
  /// in the same order as the simplex's vertices. Overrides `periods` for geometry.
  std::vector<std::vector<std::vector<double>>> cell_coordinates;
};

/// Closed, oriented simplicial pseudomanifold with piecewise-linear geometry.
/// Immutable once built.
class SimplicialComplex {
 public:
  /// Enumerates faces, validates the closed-pseudomanifold condition and
  /// orients the top simplices.
  static SimplicialComplex build(const MeshData& mesh);

  int dimension() const noexcept { return dim_; }
  int ambient_dimension() const noexcept { return static_cast<int>(vertex_coords_.cols()); }

  std::size_t count(int k) const;
  const std::vector<Simplex>& simplices(int k) const;
  const Simplex& simplex(int k, std::size_t index) const { return simplices(k)[index]; }
  std::optional<std::size_t> find(const Simplex& sorted) const;
  /// Index of a sorted simplex; throws InvalidInput if absent.
  std::size_t index_of(const Simplex& sorted) const;

  /// +1 / -1 per top simplex relative to its sorted vertex order.
  std::span<const int> top_orientations() const noexcept { return orientation_; }

  const Eigen::MatrixXd& vertex_coordinates() const noexcept { return vertex_coords_; }
  /// Ambient coordinates of the vertices of top simplex t (one column per
  /// vertex in sorted order), unwrapped into a common chart.
  const Eigen::MatrixXd& cell_coordinates(std::size_t t) const { return cell_coords_[t]; }
  const std::vector<Eigen::VectorXd>& periods() const noexcept { return periods_; }
  bool has_explicit_cells() const noexcept { return explicit_cells_; }

  /// Indices of the top simplices containing each k-simplex (k < n).
  const std::vector<std::vector<std::size_t>>& cofaces_of_top(int k) const;

  std::int64_t euler_characteristic() const;
  double top_volume(std::size_t t) const;
  double total_volume() const;

  /// Same complex with every orientation sign flipped.
  SimplicialComplex reversed() const;

  /// Re-export in mesh-file form.
  MeshData to_mesh_data() const;

 private:
  SimplicialComplex() = default;

  int dim_ = 0;
  Eigen::MatrixXd vertex_coords_;  // vertices x ambient
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> lookup_;
  std::vector<int> orientation_;
  std::vector<Eigen::MatrixXd> cell_coords_;
  std::vector<Eigen::VectorXd> periods_;
  bool explicit_cells_ = false;
  std::vector<std::vector<std::vector<std::size_t>>> top_star_;
};

inline SimplicialComplex build_complex(const MeshData& mesh) { return SimplicialComplex::build(mesh); }

/// Sparse integer boundary operator C_k -> C_{k-1}, 1 <= k <= n. Face i
/// (vertex i omitted) carries sign (-1)^i.
SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int degree);

/// Sign of the permutation that sorts `tuple`; 0 if it has repeated entries.
int sort_sign(Simplex& tuple);

/// Integer chain indexed by the k-simplices of a complex.
struct Chain {
  int degree = 0;
  std::vector<std::int64_t> coeffs;

  static Chain zero(const SimplicialComplex& k, int degree);
  /// coefficient * [vertices]; the vertex order may be arbitrary and its parity is applied.
  static Chain elementary(const SimplicialComplex& k, Simplex vertices, std::int64_t coefficient = 1);

  bool is_zero() const;
  Chain& operator+=(const Chain& rhs);
  Chain& operator-=(const Chain& rhs);
  Chain& operator*=(std::int64_t s);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator-(Chain a) { return a *= -1; }
  friend Chain operator*(std::int64_t s, Chain a) { return a *= s; }
  friend bool operator==(const Chain&, const Chain&) = default;
};

/// Integer-valued cochain.
struct IntCochain {
  int degree = 0;
  std::vector<std::int64_t> values;

  std::int64_t operator()(const Chain& c) const;
  friend bool operator==(const IntCochain&, const IntCochain&) = default;
};

/// Real-valued cochain.
struct RealCochain {
  int degree = 0;
  Eigen::VectorXd values;

  double operator()(const Chain& c) const;
};

Chain boundary(const SimplicialComplex& k, const Chain& c);
IntCochain coboundary(const SimplicialComplex& k, const IntCochain& c);
RealCochain to_real(const IntCochain& c);
Eigen::VectorXd to_vector(const Chain& c);

/// Sum of the oriented top simplices; a cycle generating H_n.
Chain fundamental_cycle(const SimplicialComplex& k);

}  // namespace gerbe
