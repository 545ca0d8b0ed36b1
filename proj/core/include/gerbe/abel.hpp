#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gerbe/complex.hpp"
#include "gerbe/hodge.hpp"
#include "gerbe/homology.hpp"

namespace gerbe {

/// u_Z = M^{-1} z: the cochain whose M-inner product with psi is psi(Z).
struct DiracCochain {
  int degree = 0;
  Eigen::VectorXd values;
  Chain source;
};

DiracCochain dirac_cochain(const HodgeStructure& h, const Chain& z);

/// Minimal-norm solution of L H = u - eta~, and G = -dH so that
/// delta G = eta~ - u.
struct PoissonSolution {
  int degree = 0;
  Eigen::VectorXd potential;  // H_Z, degree d
  Eigen::VectorXd field;      // G_Z, degree d + 1
  /// ||L H - (u - eta~)||_M / ||u - eta~||_M
  double laplace_residual = 0;
  /// ||delta G - (eta~ - u)||_M / ||u - eta~||_M
  double divergence_residual = 0;
};

/// Throws NotACycle, DegreeOutOfRange (d = n) or SolverDiverged.
PoissonSolution solve_poisson(const HodgeStructure& h, const Chain& z);

/// Both harmonic pictures of the Poincare dual of [Z].
struct PoincareDual {
  int degree = 0;
  /// Pi(u_Z), harmonic of degree d.
  Eigen::VectorXd eta_tilde;
  /// sum_b x_b theta_b, harmonic of degree n - d, with P x = w.
  Eigen::VectorXd eta;
  /// <eta~, theta_a^(d)>_M.
  Eigen::VectorXd curvature;
  /// Characteristic class in H^{n-d}: free part x (exact), torsion part
  /// transported from H_d by Poincare duality.
  GroupCoordinates characteristic;
  /// w_a = theta-hat_a^(d)(Z), exact.
  std::vector<Integer> periods;
};

PoincareDual poincare_dual(const HodgeStructure& h, const Chain& z);

/// The discrete invariants of the Abel gerbe of a cycle.
struct AbelGerbe {
  Chain cycle;
  GroupCoordinates homology;
  PoincareDual dual;
  PoissonSolution poisson;
};

AbelGerbe abel_gerbe(const HodgeStructure& h, const Chain& z);

/// Harmonic Picard representative alpha~ = Pi(M^{-1} gamma) of degree d + 1.
struct PicardRep {
  Chain source;
  Eigen::VectorXd alpha;
  /// <alpha~, theta_i>_M on the integral lattice.
  Eigen::VectorXd pairings;
  /// max_i |<alpha~, theta_i>_M - theta_i(Gamma)|.
  double pairing_error = 0;
};

PicardRep picard_rep(const HodgeStructure& h, const Chain& gamma);

/// J_i = theta_i(Gamma) on the integral lattice of degree d + 1.
struct JacobiVector {
  Eigen::VectorXd components;
  /// theta-hat_i(Gamma), exact.
  std::vector<Integer> integer_part;
  /// a_i(dGamma), the harmonic correction seen by the boundary.
  Eigen::VectorXd correction;
  /// max_i |theta_i . Gamma - (integer_part - correction)|.
  double identity_error = 0;
};

JacobiVector jacobi_vector(const HodgeStructure& h, const Chain& gamma);

/// Signed distance of x to the nearest integer, in [-1/2, 1/2].
double fractional_part(double x);

struct LinearEquivalence {
  bool trivial = false;
  /// Class of Z in H_d; nonzero means the homology obstruction failed.
  GroupCoordinates homology;
  std::optional<Chain> bounding_chain;
  std::optional<JacobiVector> jacobi;
  /// Indices of Jacobi components farther than tol from an integer.
  std::vector<std::size_t> offending;
  std::string reason;
};

inline constexpr double kDefaultIntegralityTolerance = 1e-6;

/// Abel test: the class of Z vanishes and the periods of a bounding
/// chain are integral. `gamma`, if given, must satisfy dGamma = Z.
LinearEquivalence is_linearly_trivial(const HodgeStructure& h, const Chain& z,
                                      const std::optional<Chain>& gamma = std::nullopt,
                                      double tol = kDefaultIntegralityTolerance);

LinearEquivalence lin_equiv(const HodgeStructure& h, const Chain& z1, const Chain& z2,
                            double tol = kDefaultIntegralityTolerance);

}  // namespace gerbe
