#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "gerbe/complex.hpp"
#include "gerbe/homology.hpp"

namespace gerbe {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class MassKind { Whitney, Lumped };
enum class SolverProfile { Deterministic, Fast };

std::string_view to_string(MassKind kind);
std::string_view to_string(SolverProfile profile);

struct HodgeOptions {
  MassKind mass = MassKind::Whitney;
  /// Required ratio between the first nonzero and the last kernel eigenvalue.
  double rank_gap = 1e3;
  /// Relative residual for iterative solves.
  double solver_tolerance = 1e-12;
  SolverProfile profile = SolverProfile::Deterministic;
  /// Degrees whose harmonic spaces are built and verified up front;
  /// empty means all. Other degrees are built on first use.
  std::vector<int> degrees;
};

/// Diagnostics for one degree, filled in when its harmonic space is built.
struct DegreeReport {
  int degree = 0;
  std::size_t simplices = 0;
  std::size_t betti = 0;
  std::size_t harmonic_dimension = 0;
  double mass_min_eigenvalue = 0;
  double mass_max_eigenvalue = 0;
  /// Largest eigenvalue counted as kernel (0 if the kernel is empty).
  double kernel_eigenvalue = 0;
  /// Smallest eigenvalue outside the kernel (inf if none).
  double first_nonzero_eigenvalue = 0;
  double max_eigenvalue = 0;
  double gap_ratio = 0;
  /// Relative mismatch of <d a, b>_M and <a, delta b>_M on random cochains.
  double adjointness_error = 0;
  /// max_i ||L theta_i||_M / ||theta_i||_M.
  double laplacian_residual = 0;
  /// max_i ||theta_i - Pi(theta-hat_i)||_M / ||theta_i||_M.
  double lattice_residual = 0;
};

/// c = harmonic + exact + coexact, exact = d(potential).
struct HodgeParts {
  Eigen::VectorXd harmonic;
  Eigen::VectorXd exact;
  Eigen::VectorXd coexact;
  Eigen::VectorXd potential;
};

/// Mass matrices, (co)differentials, Laplacians and harmonic data of a
/// complex. The complex and topology must outlive it. Thread-safe for reads.
class HodgeStructure {
 public:
  HodgeStructure(const SimplicialComplex& k, const Topology& topology, const HodgeOptions& options = {});
  ~HodgeStructure();
  HodgeStructure(HodgeStructure&&) noexcept;
  HodgeStructure& operator=(HodgeStructure&&) noexcept;

  const SimplicialComplex& complex() const noexcept { return *k_; }
  const Topology& topology() const noexcept { return *topology_; }
  const HodgeOptions& options() const noexcept { return options_; }
  int dimension() const noexcept { return k_->dimension(); }

  const SparseMatrix& mass(int k) const;
  /// Coboundary C^k -> C^{k+1} as a real matrix (k < n).
  const SparseMatrix& d(int k) const;
  /// d_k^T M_{k+1} d_k, the symmetric form of delta d.
  const SparseMatrix& stiffness(int k) const;

  Eigen::VectorXd apply_mass(int k, const Eigen::VectorXd& x) const;
  Eigen::VectorXd solve_mass(int k, const Eigen::VectorXd& b) const;
  double inner(int k, const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  double norm(int k, const Eigen::VectorXd& a) const;

  Eigen::VectorXd coboundary(int k, const Eigen::VectorXd& x) const;
  /// delta_k = M_{k-1}^{-1} d_{k-1}^T M_k : C^k -> C^{k-1}.
  Eigen::VectorXd codifferential(int k, const Eigen::VectorXd& x) const;
  Eigen::VectorXd laplacian(int k, const Eigen::VectorXd& x) const;
  /// Solves stiffness(k) x = b for a consistent right-hand side; returns the
  /// solution and writes the achieved residual relative to max(|b|, scale).
  /// `scale` is the magnitude b was computed from, so that a right-hand side
  /// that cancels to roundoff is not judged against its own noise.
  Eigen::VectorXd solve_stiffness(int k, const Eigen::VectorXd& b, double* residual = nullptr,
                                  double scale = 0) const;
  /// a of degree k-1 with d a the exact part of the k-cochain x (k >= 1).
  Eigen::VectorXd exact_potential(int k, const Eigen::VectorXd& x) const;

  /// M-orthonormal basis of harmonic k-cochains, one column each.
  const Eigen::MatrixXd& harmonic_basis(int k) const;
  Eigen::VectorXd harmonic_projection(int k, const Eigen::VectorXd& x) const;
  HodgeParts decompose(int k, const Eigen::VectorXd& x) const;

  /// theta-hat_i: integer cocycles, a basis of H^k(K; Z) / torsion.
  const std::vector<IntCochain>& integer_cocycles(int k) const;
  /// theta_i = theta-hat_i - d a_i, harmonic; columns.
  const Eigen::MatrixXd& integral_lattice(int k) const;
  /// a_i, degree k-1; columns (empty for k = 0).
  const Eigen::MatrixXd& lattice_corrections(int k) const;

  const DegreeReport& report(int k) const;

 private:
  struct Level;
  Level& level(int k) const;
  void build_harmonic(int k) const;

  const SimplicialComplex* k_;
  const Topology* topology_;
  HodgeOptions options_;
  std::vector<std::unique_ptr<Level>> levels_;
};

/// Whitney-form Gram matrix of degree k.
SparseMatrix whitney_mass(const SimplicialComplex& k, int degree);
/// Diagonal |dual cell| / |simplex| with the barycentric dual.
SparseMatrix lumped_mass(const SimplicialComplex& k, int degree);

/// Builds and verifies the structure. Throws RankAmbiguous, SingularMass or
/// SolverDiverged.
HodgeStructure build_hodge(const SimplicialComplex& k, const Topology& topology, const HodgeOptions& options = {});

}  // namespace gerbe
