#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gerbe/error.hpp"
#include "gerbe/generators.hpp"
#include "gerbe/hodge.hpp"

namespace gerbe {
namespace {

using testing::Fixture;
using testing::fixture;

TEST(Hodge, HarmonicDimensionMatchesBetti) {
  for (const char* name : {"S2", "T2r4", "T3r3", "G2"}) {
    const Fixture& f = fixture(name);
    for (int d = 0; d <= f.k().dimension(); ++d) {
      const DegreeReport& r = f.h().report(d);
      EXPECT_EQ(r.harmonic_dimension, r.betti) << name << " " << d;
      EXPECT_GE(r.gap_ratio, 1e3) << name << " " << d;
      EXPECT_LE(r.adjointness_error, 1e-12);
      EXPECT_LE(r.laplacian_residual, 1e-8);
    }
  }
}

TEST(Hodge, BasisIsMassOrthonormalAndHarmonic) {
  const Fixture& f = fixture("G2");
  const Eigen::MatrixXd& b = f.h().harmonic_basis(1);
  ASSERT_EQ(b.cols(), 4);
  for (Eigen::Index i = 0; i < b.cols(); ++i) {
    EXPECT_LE(f.h().norm(1, f.h().laplacian(1, b.col(i))), 1e-9);
    for (Eigen::Index j = 0; j < b.cols(); ++j) EXPECT_NEAR(f.h().inner(1, b.col(i), b.col(j)), i == j, 1e-10);
  }
}

TEST(Hodge, DecompositionIsOrthogonal) {
  const Fixture& f = fixture("T2r8");
  const HodgeStructure& h = f.h();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::VectorXd x(f.k().count(1));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
  const HodgeParts p = h.decompose(1, x);
  EXPECT_LE((p.harmonic + p.exact + p.coexact - x).norm(), 1e-9 * x.norm());
  EXPECT_NEAR(h.inner(1, p.harmonic, p.exact), 0, 1e-9);
  EXPECT_NEAR(h.inner(1, p.harmonic, p.coexact), 0, 1e-9);
  EXPECT_NEAR(h.inner(1, p.exact, p.coexact), 0, 1e-9);
  EXPECT_LE((h.coboundary(0, p.potential) - p.exact).norm(), 1e-9 * x.norm());
  EXPECT_LE(h.norm(2, h.coboundary(1, p.harmonic)), 1e-9);
}

TEST(Hodge, IntegralLatticeHasIntegerPeriods) {
  for (const char* name : {"T2r4", "G2", "T3r3"}) {
    const Fixture& f = fixture(name);
    for (int d = 1; d < f.k().dimension(); ++d) {
      const Eigen::MatrixXd& theta = f.h().integral_lattice(d);
      const auto& hats = f.h().integer_cocycles(d);
      for (const Chain& z : f.t().homology(d).free_cycles()) {
        const Eigen::VectorXd zv = to_vector(z);
        for (Eigen::Index a = 0; a < theta.cols(); ++a) {
          EXPECT_NEAR(theta.col(a).dot(zv), static_cast<double>(hats[static_cast<std::size_t>(a)](z)), 1e-9);
        }
      }
      EXPECT_LE(f.h().report(d).lattice_residual, 1e-8);
    }
  }
}

TEST(Hodge, FlatTorusHarmonicFormsAreConstant) {
  // On a flat torus the harmonic one-forms are dx and dy, so each lattice
  // element takes the same value on all translates of an edge.
  const Fixture& f = fixture("T2r4");
  const Eigen::MatrixXd& theta = f.h().integral_lattice(1);
  const auto& k = f.k();
  for (Eigen::Index a = 0; a < theta.cols(); ++a) {
    const double horiz = theta(static_cast<Eigen::Index>(k.index_of({0, 1})), a);
    for (int y = 0; y < 4; ++y) {
      for (int x = 0; x < 3; ++x) {
        const int v0 = testing::torus_vertex(4, x, y), v1 = testing::torus_vertex(4, x + 1, y);
        Simplex e{v0, v1};
        const int s = sort_sign(e);
        EXPECT_NEAR(s * theta(static_cast<Eigen::Index>(k.index_of(e)), a), horiz, 1e-10);
      }
    }
  }
}

TEST(Hodge, TopDegreeMassIsInverseVolume) {
  const Fixture& f = fixture("T2r4");
  const SparseMatrix& m = f.h().mass(2);
  for (Eigen::Index t = 0; t < m.rows(); ++t) EXPECT_NEAR(m.coeff(t, t), 32.0, 1e-10);
}

TEST(Hodge, LumpedMassIsDiagonalAndAgreesOnHarmonicDimension) {
  const SimplicialComplex& k = fixture("G2").k();
  const SparseMatrix m = lumped_mass(k, 1);
  for (int outer = 0; outer < m.outerSize(); ++outer)
    for (SparseMatrix::InnerIterator it(m, outer); it; ++it) {
      EXPECT_EQ(it.row(), it.col());
      EXPECT_GT(it.value(), 0);
    }
  HodgeOptions opts;
  opts.mass = MassKind::Lumped;
  const auto f = testing::make_fixture("G2-lumped", generate_genus_surface(2, 0), opts);
  EXPECT_EQ(f->h().report(1).harmonic_dimension, 4u);
  EXPECT_LE(f->h().report(1).lattice_residual, 1e-8);
}

TEST(Hodge, FastProfileMatchesDeterministic) {
  HodgeOptions opts;
  opts.profile = SolverProfile::Fast;
  const auto fast = testing::make_fixture("T3-fast", generate_flat_torus(3, 3), opts);
  const Fixture& det = fixture("T3r3");
  for (int d = 0; d <= 3; ++d) {
    EXPECT_EQ(fast->h().report(d).harmonic_dimension, det.h().report(d).harmonic_dimension);
    EXPECT_LE((fast->h().integral_lattice(d) - det.h().integral_lattice(d)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Hodge, ImpossibleGapIsRankAmbiguous) {
  const SimplicialComplex k = generate_flat_torus(2, 4);
  const Topology t(k);
  HodgeOptions opts;
  opts.rank_gap = 1e300;
  try {
    build_hodge(k, t, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankAmbiguous);
    EXPECT_TRUE(is_invariant_violation(e.code()));
  }
}

TEST(Hodge, StiffnessSolveResidual) {
  const Fixture& f = fixture("G2");
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  Eigen::VectorXd x(f.k().count(1));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = g(rng);
  const Eigen::VectorXd b = f.h().stiffness(1) * x;
  double residual = 1;
  const Eigen::VectorXd y = f.h().solve_stiffness(1, b, &residual);
  EXPECT_LE(residual, 1e-9);
  EXPECT_LE((f.h().stiffness(1) * y - b).norm(), 1e-8 * b.norm());
}

}  // namespace
}  // namespace gerbe
