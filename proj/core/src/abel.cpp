#include "gerbe/abel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gerbe/error.hpp"

namespace gerbe {

namespace {

void require_cycle(const HodgeStructure& h, const Chain& z) {
  const int n = h.dimension();
  if (z.degree < 0 || z.degree > n) {
    throw Error(ErrorCode::DegreeOutOfRange, fmt::format("chain degree {} outside 0..{}", z.degree, n));
  }
  if (z.coeffs.size() != h.complex().count(z.degree)) {
    throw Error(ErrorCode::InvalidInput, "chain length does not match the complex");
  }
  if (!boundary(h.complex(), z).is_zero()) throw Error(ErrorCode::NotACycle, "chain has nonzero boundary");
}

void require_below_top(const HodgeStructure& h, int d) {
  if (d >= h.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange,
                fmt::format("cycle degree {} must be at most n - 1 = {}", d, h.dimension() - 1));
  }
}

double ratio(double num, double den) { return den > 0 ? num / den : num; }

}  // namespace

DiracCochain dirac_cochain(const HodgeStructure& h, const Chain& z) {
  if (z.degree < 0 || z.degree > h.dimension()) {
    throw Error(ErrorCode::DegreeOutOfRange, "chain degree out of range");
  }
  return DiracCochain{z.degree, h.solve_mass(z.degree, to_vector(z)), z};
}

PoissonSolution solve_poisson(const HodgeStructure& h, const Chain& z) {
  require_cycle(h, z);
  const int d = z.degree;
  require_below_top(h, d);
  PoissonSolution out;
  out.degree = d;
  const Eigen::VectorXd u = dirac_cochain(h, z).values;
  const Eigen::VectorXd r = u - h.harmonic_projection(d, u);
  const double rn = h.norm(d, r);
  if (rn == 0) {
    out.potential = Eigen::VectorXd::Zero(u.size());
    out.field = Eigen::VectorXd::Zero(h.d(d).rows());
    return out;
  }
  // delta d H = r with r coexact; then drop the closed part of H.
  Eigen::VectorXd pot = h.solve_stiffness(d, h.apply_mass(d, r));
  pot -= h.harmonic_projection(d, pot);
  if (d > 0) pot -= h.coboundary(d - 1, h.exact_potential(d, pot));
  out.potential = std::move(pot);
  out.field = -h.coboundary(d, out.potential);
  out.laplace_residual = ratio(h.norm(d, h.laplacian(d, out.potential) - r), rn);
  out.divergence_residual = ratio(h.norm(d, h.codifferential(d + 1, out.field) + r), rn);
  constexpr double kLimit = 1e-8;
  if (!(out.laplace_residual <= kLimit) || !(out.divergence_residual <= kLimit)) {
    throw Error(ErrorCode::SolverDiverged,
                fmt::format("Poisson residuals {:.3e} / {:.3e} exceed {:.0e}", out.laplace_residual,
                            out.divergence_residual, kLimit));
  }
  return out;
}

PoincareDual poincare_dual(const HodgeStructure& h, const Chain& z) {
  require_cycle(h, z);
  const int d = z.degree;
  require_below_top(h, d);
  const int n = h.dimension();
  const Topology& topo = h.topology();

  PoincareDual out;
  out.degree = d;
  const Eigen::VectorXd u = dirac_cochain(h, z).values;
  out.eta_tilde = h.harmonic_projection(d, u);

  const auto& hats = h.integer_cocycles(d);
  const Eigen::MatrixXd& theta = h.integral_lattice(d);
  const std::size_t b = hats.size();
  out.curvature.resize(static_cast<Eigen::Index>(b));
  for (std::size_t a = 0; a < b; ++a) {
    out.periods.emplace_back(hats[a](z));
    out.curvature(static_cast<Eigen::Index>(a)) = h.inner(d, out.eta_tilde, theta.col(static_cast<Eigen::Index>(a)));
  }

  out.characteristic.torsion = topo.homology(d).coordinates(z).torsion;
  const Eigen::MatrixXd& dual_lattice = h.integral_lattice(n - d);
  out.eta = Eigen::VectorXd::Zero(dual_lattice.rows());
  if (b > 0) {
    const IntMatrix p = pairing_matrix(topo, d);
    out.characteristic.free = unimodular_inverse(p).multiply(std::span<const Integer>(out.periods));
    for (std::size_t i = 0; i < b; ++i) {
      out.eta += out.characteristic.free[i].to_double() * dual_lattice.col(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

AbelGerbe abel_gerbe(const HodgeStructure& h, const Chain& z) {
  AbelGerbe g;
  g.cycle = z;
  g.dual = poincare_dual(h, z);
  g.homology = h.topology().homology(z.degree).coordinates(z);
  g.poisson = solve_poisson(h, z);
  return g;
}

PicardRep picard_rep(const HodgeStructure& h, const Chain& gamma) {
  const int k = gamma.degree;
  if (k < 1 || k > h.dimension()) throw Error(ErrorCode::DegreeOutOfRange, "Picard chain degree out of range");
  PicardRep out;
  out.source = gamma;
  const Eigen::VectorXd g = to_vector(gamma);
  out.alpha = h.harmonic_projection(k, h.solve_mass(k, g));
  const Eigen::MatrixXd& theta = h.integral_lattice(k);
  out.pairings = theta.transpose() * h.apply_mass(k, out.alpha);
  const Eigen::VectorXd direct = theta.transpose() * g;
  out.pairing_error = out.pairings.size() ? (out.pairings - direct).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

JacobiVector jacobi_vector(const HodgeStructure& h, const Chain& gamma) {
  const int k = gamma.degree;
  if (k < 1 || k > h.dimension()) throw Error(ErrorCode::DegreeOutOfRange, "Jacobi chain degree out of range");
  if (gamma.coeffs.size() != h.complex().count(k)) {
    throw Error(ErrorCode::InvalidInput, "chain length does not match the complex");
  }
  JacobiVector out;
  const auto& hats = h.integer_cocycles(k);
  const Eigen::MatrixXd& theta = h.integral_lattice(k);
  const Eigen::MatrixXd& corr = h.lattice_corrections(k);
  const Eigen::VectorXd bd = to_vector(boundary(h.complex(), gamma));
  const Eigen::VectorXd g = to_vector(gamma);
  const auto b = static_cast<Eigen::Index>(hats.size());
  out.components.resize(b);
  out.correction = corr.transpose() * bd;
  for (Eigen::Index i = 0; i < b; ++i) {
    out.integer_part.emplace_back(hats[static_cast<std::size_t>(i)](gamma));
    out.components(i) = out.integer_part.back().to_double() - out.correction(i);
    out.identity_error = std::max(out.identity_error, std::abs(theta.col(i).dot(g) - out.components(i)));
  }
  return out;
}

double fractional_part(double x) { return x - std::round(x); }

LinearEquivalence is_linearly_trivial(const HodgeStructure& h, const Chain& z, const std::optional<Chain>& gamma,
                                      double tol) {
  require_cycle(h, z);
  require_below_top(h, z.degree);
  LinearEquivalence out;
  out.homology = h.topology().homology(z.degree).coordinates(z);
  if (!out.homology.is_zero()) {
    out.reason = "cycle is not null-homologous";
    return out;
  }
  if (gamma) {
    if (gamma->degree != z.degree + 1 || boundary(h.complex(), *gamma) != z) {
      throw Error(ErrorCode::InvalidInput, "supplied chain does not bound the cycle");
    }
    out.bounding_chain = *gamma;
  } else {
    out.bounding_chain = find_bounding_chain(h.topology(), z);
  }
  out.jacobi = jacobi_vector(h, *out.bounding_chain);
  for (Eigen::Index i = 0; i < out.jacobi->components.size(); ++i) {
    if (std::abs(fractional_part(out.jacobi->components(i))) > tol) out.offending.push_back(static_cast<std::size_t>(i));
  }
  out.trivial = out.offending.empty();
  out.reason = out.trivial ? "periods of the bounding chain are integral" : "bounding chain has fractional periods";
  return out;
}

LinearEquivalence lin_equiv(const HodgeStructure& h, const Chain& z1, const Chain& z2, double tol) {
  if (z1.degree != z2.degree) throw Error(ErrorCode::InvalidInput, "cycles have different degrees");
  return is_linearly_trivial(h, z1 - z2, std::nullopt, tol);
}

}  // namespace gerbe
