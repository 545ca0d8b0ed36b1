#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "gerbe/complex.hpp"
#include "gerbe/error.hpp"
#include "gerbe/smith.hpp"

namespace gerbe {

/// Coordinates of a class in Z^b (+) Z/d_1 (+) ... (+) Z/d_t.
struct GroupCoordinates {
  std::vector<Integer> free;
  /// Residues in [0, d_i).
  std::vector<Integer> torsion;

  bool is_zero() const;
  friend bool operator==(const GroupCoordinates&, const GroupCoordinates&) = default;
};

/// ker(out) / im(in) for integer matrices out: Z^c -> Z^a and in: Z^b -> Z^c,
/// computed with two Smith normal forms. Shared by homology and cohomology.
class Subquotient {
 public:
  Subquotient(const SparseIntMatrix& out, const SparseIntMatrix& in, std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::size_t rank() const noexcept { return free_.size(); }
  const std::vector<Integer>& torsion() const noexcept { return torsion_orders_; }
  const std::vector<std::vector<std::int64_t>>& free_generators() const noexcept { return free_; }
  const std::vector<std::vector<std::int64_t>>& torsion_generators() const noexcept { return torsion_gens_; }

  bool in_kernel(std::span<const std::int64_t> x) const;
  /// Throws NotACycle when x is not in ker(out).
  GroupCoordinates coordinates(std::span<const std::int64_t> x) const;
  /// Some y with in * y = x, if x lies in im(in).
  std::optional<std::vector<std::int64_t>> preimage(std::span<const std::int64_t> x) const;
  /// Element with the given coordinates (free generators and torsion generators).
  std::vector<std::int64_t> element(const GroupCoordinates& c) const;

 private:
  std::vector<Integer> solve_coordinates(std::span<const std::int64_t> x) const;

  std::size_t size_ = 0;
  SparseIntMatrix out_;
  IntMatrix kernel_coords_;  // (dim ker) x size
  IntMatrix u_;              // left transform of the reduced incoming map
  IntMatrix v_;              // right transform of the reduced incoming map
  std::vector<Integer> divisors_;
  std::vector<Integer> torsion_orders_;
  std::vector<std::size_t> torsion_slots_;
  std::vector<std::vector<std::int64_t>> free_;
  std::vector<std::vector<std::int64_t>> torsion_gens_;
};

/// H_k(K; Z) with explicit cycle representatives and a coordinate map.
class HomologyData {
 public:
  HomologyData(const SimplicialComplex& k, int degree);

  int degree() const noexcept { return degree_; }
  std::size_t betti() const noexcept { return group_.rank(); }
  const std::vector<Integer>& torsion() const noexcept { return group_.torsion(); }
  std::vector<Chain> free_cycles() const;
  std::vector<Chain> torsion_cycles() const;

  bool is_cycle(const Chain& z) const;
  /// Throws NotACycle.
  GroupCoordinates coordinates(const Chain& z) const;
  std::optional<Chain> bounding_chain(const Chain& z) const;
  Chain cycle_with(const GroupCoordinates& c) const;
  const Subquotient& group() const noexcept { return group_; }

 private:
  int degree_;
  Subquotient group_;
};

/// H^k(K; Z) with integer cocycle representatives.
class CohomologyData {
 public:
  CohomologyData(const SimplicialComplex& k, int degree);

  int degree() const noexcept { return degree_; }
  std::size_t betti() const noexcept { return group_.rank(); }
  const std::vector<Integer>& torsion() const noexcept { return group_.torsion(); }
  /// theta-hat_i: integer cocycles whose classes form a basis of H^k / torsion.
  std::vector<IntCochain> free_cocycles() const;
  std::vector<IntCochain> torsion_cocycles() const;

  bool is_cocycle(const IntCochain& c) const;
  GroupCoordinates coordinates(const IntCochain& c) const;
  /// Some integer (k-1)-cochain a with da = c, if c is exact.
  std::optional<IntCochain> primitive(const IntCochain& c) const;
  const Subquotient& group() const noexcept { return group_; }

 private:
  int degree_;
  Subquotient group_;
};

/// Thrown when a cycle has nonzero homology class; carries the class.
class NotABoundaryError : public Error {
 public:
  NotABoundaryError(const std::string& what, GroupCoordinates coords)
      : Error(ErrorCode::NotABoundary, what), coords_(std::move(coords)) {}
  const GroupCoordinates& coordinates() const noexcept { return coords_; }

 private:
  GroupCoordinates coords_;
};

/// Lazily computed, thread-safe (co)homology of one complex. The complex
/// must outlive this object.
class Topology {
 public:
  explicit Topology(const SimplicialComplex& k);
  ~Topology();
  Topology(Topology&&) noexcept;
  Topology& operator=(Topology&&) noexcept;

  const SimplicialComplex& complex() const noexcept { return *k_; }
  const HomologyData& homology(int degree) const;
  const CohomologyData& cohomology(int degree) const;
  std::vector<std::size_t> betti_numbers() const;

 private:
  struct Slot;
  const SimplicialComplex* k_;
  std::vector<std::unique_ptr<Slot>> slots_;
};

HomologyData homology(const SimplicialComplex& k, int degree);
CohomologyData cohomology(const SimplicialComplex& k, int degree);

/// Gamma with boundary Z. Throws NotACycle, or NotABoundaryError carrying
/// the nonzero homology class of Z.
Chain find_bounding_chain(const Topology& t, const Chain& z);

/// Alexander-Whitney cup product on the sorted vertex order:
/// (a u b)[v0..v(p+q)] = a[v0..vp] * b[vp..v(p+q)]. Throws DegreeOverflow.
IntCochain cup_product(const SimplicialComplex& k, const IntCochain& a, const IntCochain& b);
RealCochain cup_product(const SimplicialComplex& k, const RealCochain& a, const RealCochain& b);

/// P_ab = (theta_a^(p) u theta_b^(n-p))[X] on the free cocycle bases.
/// Throws SingularPairing unless det P = +-1.
IntMatrix pairing_matrix(const Topology& t, int p);

/// Integer cycles Y_i with theta_j(Y_i) = delta_ij. Throws NotUnimodular.
std::vector<Chain> dual_homology_basis(const Topology& t, int degree, const std::vector<IntCochain>& theta);

}  // namespace gerbe
