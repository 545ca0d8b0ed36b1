#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gerbe/complex.hpp"
#include "gerbe/hodge.hpp"
#include "gerbe/homology.hpp"

namespace gerbe::testing {

/// A complex with its topology and Hodge structure, built once and cached.
struct Fixture {
  std::string name;
  std::unique_ptr<SimplicialComplex> complex;
  std::unique_ptr<Topology> topology;
  std::unique_ptr<HodgeStructure> hodge;

  const SimplicialComplex& k() const { return *complex; }
  const Topology& t() const { return *topology; }
  const HodgeStructure& h() const { return *hodge; }
};

/// Known names: S2, T2r4, T2r8, T3r3, G2, RP3.
const Fixture& fixture(const std::string& name);
/// Builds an uncached fixture around an arbitrary complex.
std::unique_ptr<Fixture> make_fixture(std::string name, SimplicialComplex k, const HodgeOptions& options = {});

/// Sum of `terms` random k-simplices with coefficients in [-3, 3] \ {0}.
Chain random_chain(const SimplicialComplex& k, int degree, std::mt19937_64& rng, int terms = 4);
/// Boundary of a random (degree + 1)-chain.
Chain random_boundary(const SimplicialComplex& k, int degree, std::mt19937_64& rng);
/// Random combination of free homology generators plus a random boundary.
Chain random_cycle(const Topology& t, int degree, std::mt19937_64& rng);

/// Vertex (x, y) of generate_flat_torus(2, res).
int torus_vertex(int res, int x, int y);
Chain vertex_chain(const SimplicialComplex& k, int v, std::int64_t coefficient = 1);
/// Sum of the oriented edges v0 -> v1 -> ... -> vm.
Chain path_chain(const SimplicialComplex& k, const std::vector<int>& vertices);

/// Circle distance |x - round(x)|.
double mod1_distance(double x);

}  // namespace gerbe::testing
