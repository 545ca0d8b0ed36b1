#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "gerbe/error.hpp"
#include "gerbe/homology.hpp"

namespace gerbe {
namespace {

using testing::Fixture;
using testing::fixture;

std::vector<std::size_t> betti(const char* name) { return fixture(name).t().betti_numbers(); }

TEST(Homology, BettiNumbers) {
  EXPECT_EQ(betti("S2"), (std::vector<std::size_t>{1, 0, 1}));
  EXPECT_EQ(betti("T2r4"), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(betti("T2r8"), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(betti("T3r3"), (std::vector<std::size_t>{1, 3, 3, 1}));
  EXPECT_EQ(betti("G2"), (std::vector<std::size_t>{1, 4, 1}));
}

TEST(Homology, TorsionFreeFixtures) {
  for (const char* name : {"S2", "T2r4", "T3r3", "G2"}) {
    const Topology& t = fixture(name).t();
    for (int d = 0; d <= t.complex().dimension(); ++d) EXPECT_TRUE(t.homology(d).torsion().empty()) << name;
  }
}

TEST(Homology, ProjectiveSpaceHasTwoTorsion) {
  const Topology& t = fixture("RP3").t();
  const HomologyData& h1 = t.homology(1);
  EXPECT_EQ(h1.betti(), 0u);
  ASSERT_EQ(h1.torsion().size(), 1u);
  EXPECT_EQ(h1.torsion()[0], Integer(2));
  const Chain loop = h1.torsion_cycles().at(0);
  EXPECT_FALSE(h1.coordinates(loop).is_zero());
  EXPECT_FALSE(h1.bounding_chain(loop).has_value());
  const Chain twice = 2 * loop;
  EXPECT_TRUE(h1.coordinates(twice).is_zero());
  const auto gamma = h1.bounding_chain(twice);
  ASSERT_TRUE(gamma.has_value());
  EXPECT_EQ(boundary(t.complex(), *gamma), twice);
}

TEST(Homology, GeneratorCoordinatesAreUnitVectors) {
  const HomologyData& h = fixture("G2").t().homology(1);
  const auto gens = h.free_cycles();
  ASSERT_EQ(gens.size(), 4u);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const GroupCoordinates c = h.coordinates(gens[i]);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(c.free[j], Integer(i == j ? 1 : 0));
    EXPECT_EQ(h.cycle_with(c), gens[i]);
  }
}

TEST(Homology, CoordinatesAreLinear) {
  const Topology& t = fixture("T3r3").t();
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 2; ++d) {
    const HomologyData& h = t.homology(d);
    for (int trial = 0; trial < 5; ++trial) {
      const Chain a = testing::random_cycle(t, d, rng);
      const Chain b = testing::random_cycle(t, d, rng);
      const auto ca = h.coordinates(a), cb = h.coordinates(b), cab = h.coordinates(a + b);
      for (std::size_t i = 0; i < ca.free.size(); ++i) EXPECT_EQ(cab.free[i], ca.free[i] + cb.free[i]);
    }
  }
}

TEST(Homology, NonCycleIsRejected) {
  const Fixture& f = fixture("T2r4");
  const Chain edge = Chain::elementary(f.k(), {0, 1});
  try {
    f.t().homology(1).coordinates(edge);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACycle);
  }
}

TEST(Homology, BoundingChainOfBoundaries) {
  const Fixture& f = fixture("G2");
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Chain z = testing::random_boundary(f.k(), 1, rng);
    const Chain gamma = find_bounding_chain(f.t(), z);
    EXPECT_EQ(boundary(f.k(), gamma), z);
  }
}

TEST(Homology, NotABoundaryCarriesClass) {
  const Fixture& f = fixture("T2r4");
  const Chain loop = f.t().homology(1).free_cycles().at(0);
  try {
    find_bounding_chain(f.t(), loop);
    FAIL();
  } catch (const NotABoundaryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotABoundary);
    EXPECT_FALSE(e.coordinates().is_zero());
  }
}

TEST(Homology, ZeroDimensionalClassesCountComponents) {
  const Fixture& f = fixture("T2r4");
  const Chain pq = testing::vertex_chain(f.k(), 5) - testing::vertex_chain(f.k(), 0);
  EXPECT_TRUE(f.t().homology(0).coordinates(pq).is_zero());
  const GroupCoordinates p = f.t().homology(0).coordinates(testing::vertex_chain(f.k(), 5));
  ASSERT_EQ(p.free.size(), 1u);
  EXPECT_EQ(p.free[0].abs(), Integer(1));
}

TEST(Cohomology, CocyclesPairWithCycles) {
  for (const char* name : {"T2r4", "G2", "T3r3"}) {
    const Topology& t = fixture(name).t();
    for (int d = 1; d < t.complex().dimension(); ++d) {
      const auto theta = t.cohomology(d).free_cocycles();
      const auto y = dual_homology_basis(t, d, theta);
      for (std::size_t i = 0; i < y.size(); ++i) {
        for (std::size_t j = 0; j < theta.size(); ++j) EXPECT_EQ(theta[j](y[i]), i == j ? 1 : 0) << name;
      }
      for (const auto& c : theta) EXPECT_TRUE(coboundary(t.complex(), c).values == std::vector<std::int64_t>(
                                                  t.complex().count(d + 1), 0));
    }
  }
}

TEST(Cohomology, PrimitiveOfCoboundary) {
  const Fixture& f = fixture("T2r4");
  IntCochain a{0, std::vector<std::int64_t>(f.k().count(0))};
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] = static_cast<std::int64_t>(i % 5) - 2;
  const IntCochain da = coboundary(f.k(), a);
  const auto p = f.t().cohomology(1).primitive(da);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(coboundary(f.k(), *p), da);
  EXPECT_FALSE(f.t().cohomology(1).primitive(f.t().cohomology(1).free_cocycles()[0]).has_value());
}

TEST(CupProduct, TorusGeneratorsPairToUnit) {
  const Fixture& f = fixture("T2r4");
  const auto theta = f.t().cohomology(1).free_cocycles();
  const Chain fund = fundamental_cycle(f.k());
  const auto ab = cup_product(f.k(), theta[0], theta[1])(fund);
  const auto ba = cup_product(f.k(), theta[1], theta[0])(fund);
  EXPECT_EQ(std::abs(ab), 1);
  EXPECT_EQ(ab, -ba);
  EXPECT_EQ(cup_product(f.k(), theta[0], theta[0])(fund), 0);
}

TEST(CupProduct, LeibnizRule) {
  const Fixture& f = fixture("G2");
  std::mt19937_64 rng(8);
  IntCochain a{0, std::vector<std::int64_t>(f.k().count(0))};
  IntCochain b{1, std::vector<std::int64_t>(f.k().count(1))};
  for (auto& v : a.values) v = static_cast<std::int64_t>(rng() % 5) - 2;
  for (auto& v : b.values) v = static_cast<std::int64_t>(rng() % 5) - 2;
  // d(a u b) = da u b + a u db for a of degree 0.
  IntCochain lhs = coboundary(f.k(), cup_product(f.k(), a, b));
  IntCochain r1 = cup_product(f.k(), coboundary(f.k(), a), b);
  IntCochain r2 = cup_product(f.k(), a, coboundary(f.k(), b));
  for (std::size_t i = 0; i < lhs.values.size(); ++i) EXPECT_EQ(lhs.values[i], r1.values[i] + r2.values[i]);
}

TEST(CupProduct, DegreeOverflow) {
  const Fixture& f = fixture("T2r4");
  const IntCochain a{2, std::vector<std::int64_t>(f.k().count(2), 1)};
  const IntCochain b{1, std::vector<std::int64_t>(f.k().count(1), 1)};
  try {
    cup_product(f.k(), a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeOverflow);
  }
}

TEST(Pairing, UnimodularOnEveryFixture) {
  for (const char* name : {"T2r4", "T2r8", "T3r3", "G2"}) {
    const Topology& t = fixture(name).t();
    for (int p = 1; p < t.complex().dimension(); ++p) {
      EXPECT_TRUE(determinant(pairing_matrix(t, p)).is_unit()) << name << " " << p;
    }
  }
}

}  // namespace
}  // namespace gerbe
