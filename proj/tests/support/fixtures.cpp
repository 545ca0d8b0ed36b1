#include "fixtures.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "gerbe/generators.hpp"

namespace gerbe::testing {

std::unique_ptr<Fixture> make_fixture(std::string name, SimplicialComplex k, const HodgeOptions& options) {
  auto f = std::make_unique<Fixture>();
  f->name = std::move(name);
  f->complex = std::make_unique<SimplicialComplex>(std::move(k));
  f->topology = std::make_unique<Topology>(*f->complex);
  f->hodge = std::make_unique<HodgeStructure>(build_hodge(*f->complex, *f->topology, options));
  return f;
}

const Fixture& fixture(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Fixture>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(name); it != cache.end()) return *it->second;

  HodgeOptions opts;
  std::unique_ptr<Fixture> f;
  if (name == "S2") {
    f = make_fixture(name, generate_sphere(2));
  } else if (name == "T2r4") {
    f = make_fixture(name, generate_flat_torus(2, 4));
  } else if (name == "T2r8") {
    f = make_fixture(name, generate_flat_torus(2, 8));
  } else if (name == "T3r3") {
    f = make_fixture(name, generate_flat_torus(3, 3));
  } else if (name == "G2") {
    f = make_fixture(name, generate_genus_surface(2, 0));
  } else if (name == "RP3") {
    // Only the cheap degrees up front; the rest are built on demand.
    opts.degrees = {0, 1};
    f = make_fixture(name, generate_projective_space(2), opts);
  } else {
    throw std::invalid_argument("unknown fixture " + name);
  }
  return *cache.emplace(name, std::move(f)).first->second;
}

Chain random_chain(const SimplicialComplex& k, int degree, std::mt19937_64& rng, int terms) {
  Chain c = Chain::zero(k, degree);
  std::uniform_int_distribution<std::size_t> pick(0, k.count(degree) - 1);
  std::uniform_int_distribution<int> coeff(1, 3);
  std::bernoulli_distribution negative(0.5);
  for (int i = 0; i < terms; ++i) {
    const int a = coeff(rng);
    c.coeffs[pick(rng)] += negative(rng) ? -a : a;
  }
  return c;
}

Chain random_boundary(const SimplicialComplex& k, int degree, std::mt19937_64& rng) {
  return boundary(k, random_chain(k, degree + 1, rng));
}

Chain random_cycle(const Topology& t, int degree, std::mt19937_64& rng) {
  const SimplicialComplex& k = t.complex();
  Chain z = degree < k.dimension() ? random_boundary(k, degree, rng) : Chain::zero(k, degree);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (const Chain& g : t.homology(degree).free_cycles()) z += coeff(rng) * g;
  return z;
}

int torus_vertex(int res, int x, int y) { return ((x % res + res) % res) + res * ((y % res + res) % res); }

Chain vertex_chain(const SimplicialComplex& k, int v, std::int64_t coefficient) {
  return Chain::elementary(k, {v}, coefficient);
}

Chain path_chain(const SimplicialComplex& k, const std::vector<int>& vertices) {
  Chain c = Chain::zero(k, 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) c += Chain::elementary(k, {vertices[i], vertices[i + 1]});
  return c;
}

double mod1_distance(double x) { return std::abs(x - std::round(x)); }

}  // namespace gerbe::testing
