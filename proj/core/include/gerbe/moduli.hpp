#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gerbe/abel.hpp"
#include "gerbe/hodge.hpp"
#include "gerbe/homology.hpp"

namespace gerbe {

enum class TorusKind { Jacobi, Picard };

/// A point of R^b / Z^b in a fixed lattice basis.
struct TorusPoint {
  std::vector<double> coords;  // in [0, 1)
  TorusKind kind = TorusKind::Jacobi;
  int degree = 0;

  static TorusPoint reduce(const Eigen::VectorXd& x, TorusKind kind, int degree);
  std::size_t dimension() const noexcept { return coords.size(); }
  TorusPoint operator+(const TorusPoint& o) const;
  TorusPoint operator-() const;
  TorusPoint operator-(const TorusPoint& o) const { return *this + (-o); }
  /// Max over components of the circle distance.
  double distance(const TorusPoint& o) const;
};

/// Image of J on Gamma, reduced mod Z.
TorusPoint jacobi_point(const HodgeStructure& h, const Chain& gamma);

/// Picard coordinates y of alpha~ in the integral lattice basis of degree
/// n - d - 1: P^T y = g, g_a = <alpha~, theta_a^(d+1)>_M, P = pairing(n-d-1).
Eigen::VectorXd picard_coordinates(const HodgeStructure& h, const PicardRep& rep);
TorusPoint picard_point(const HodgeStructure& h, const PicardRep& rep);
TorusPoint picard_to_jacobi(const HodgeStructure& h, const TorusPoint& picard);
TorusPoint jacobi_to_picard(const HodgeStructure& h, const TorusPoint& jacobi);
/// Integer matrix sending the Picard lattice basis to Jacobi coordinates
/// (the transposed pairing); det = +-1.
IntMatrix picard_basis_image(const HodgeStructure& h, int jacobi_degree);

/// A point of the moduli group M_d: homology class plus torus offset.
struct ModuliClass {
  GroupCoordinates h;
  TorusPoint t;
};

/// Set-theoretic section of M_d -> H_d with its correction cocycle.
class ModuliGroup {
 public:
  ModuliGroup(const HodgeStructure& h, int degree);

  int degree() const noexcept { return degree_; }
  /// Z_h: the base cycle of a class.
  Chain base_cycle(const GroupCoordinates& c) const;
  GroupCoordinates normalize(GroupCoordinates c) const;

  ModuliClass classify(const Chain& z) const;
  ModuliClass identity() const;
  ModuliClass add(const ModuliClass& a, const ModuliClass& b) const;
  ModuliClass negate(const ModuliClass& a) const;
  bool equal(const ModuliClass& a, const ModuliClass& b, double tol = kDefaultIntegralityTolerance) const;
  /// c(h1, h2) = J(Z_h1 + Z_h2 - Z_{h1+h2}).
  TorusPoint correction(const GroupCoordinates& a, const GroupCoordinates& b) const;

 private:
  const HodgeStructure* h_;
  int degree_;
};

ModuliClass moduli_class(const ModuliGroup& g, const Chain& z);
ModuliClass moduli_add(const ModuliGroup& g, const ModuliClass& a, const ModuliClass& b);
ModuliClass moduli_neg(const ModuliGroup& g, const ModuliClass& a);
bool moduli_eq(const ModuliGroup& g, const ModuliClass& a, const ModuliClass& b,
               double tol = kDefaultIntegralityTolerance);

struct ScanOptions {
  std::size_t budget = 10000;
  std::uint64_t seed = 1;
  /// Chains are sums of 1..max_terms random signed simplices.
  int max_terms = 4;
  int histogram_bins = 16;
  /// Probe grid per axis for b <= 2; random probes otherwise.
  int probe_resolution = 128;
  std::size_t random_probes = 4096;
};

struct ScanReport {
  int degree = 0;
  std::size_t torus_dimension = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Max distance from a probe point to the nearest sample.
  double covering_radius = 0;
  /// Whether all samples are rational with a common denominator <= 1000.
  bool closure_rational = false;
  std::int64_t closure_denominator = 0;
  /// Order of the subgroup generated by the samples (0 if not rational).
  Integer closure_order;
  /// Covering radius of that subgroup (NaN if not computed).
  double closure_covering_radius = 0;
  /// histograms[axis][bin]
  std::vector<std::vector<std::size_t>> histograms;
};

/// Empirical image of J on random small chains of degree d + 1.
ScanReport jacobi_scan(const HodgeStructure& h, int degree, const ScanOptions& options = {});

struct PeriodCheck {
  int degree = 0;
  /// E_ij = theta_j(Y_i).
  Eigen::MatrixXd matrix;
  double max_error = 0;
  bool identity = false;
};

/// Evaluates the integral lattice on the dual homology basis. Throws NotUnimodular.
PeriodCheck period_matrix_check(const HodgeStructure& h, int degree, double tol = 1e-8);

struct TorsionDiagnostic {
  GroupCoordinates homology;
  /// Order m of [Z] (0 if the class has a free part).
  Integer order;
  std::optional<Chain> bounding_chain;  // of m Z
  std::optional<TorusPoint> point;      // J of that chain
};

/// For a torsion class: m Z bounds, and J of the bounding chain is a torus point.
TorsionDiagnostic torsion_diagnostic(const HodgeStructure& h, const Chain& z);

}  // namespace gerbe
