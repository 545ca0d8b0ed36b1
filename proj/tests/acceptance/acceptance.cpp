// End-to-end acceptance battery. Prints one PASS/FAIL line per criterion
// and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "gerbe/abel.hpp"
#include "gerbe/generators.hpp"
#include "gerbe/moduli.hpp"
#include "gerbe/subdivision.hpp"

namespace {

using namespace gerbe;
using gerbe::testing::Fixture;
using gerbe::testing::mod1_distance;

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* const kFixtures[] = {"S2", "T2r4", "T2r8", "T3r3", "G2"};

SimplicialComplex generate(const std::string& name) {
  if (name == "S2") return generate_sphere(2);
  if (name == "T2r4") return generate_flat_torus(2, 4);
  if (name == "T2r8") return generate_flat_torus(2, 8);
  if (name == "T3r3") return generate_flat_torus(3, 3);
  return generate_genus_surface(2, 0);
}

class Battery {
 public:
  int run() {
    check(1, "chain-complex exactness", [&] { return exactness(); }, 5.0);
    check(2, "Betti/torsion battery and harmonic dimensions", [&] { return betti(); }, 60.0);
    check(3, "period matrix is the identity", [&] { return periods(); });
    check(4, "Poisson residuals", [&] { return poisson(); });
    check(5, "Abel verdicts for point pairs on the flat torus", [&] { return point_pairs(); });
    check(6, "Jacobi point independent of the bounding chain", [&] { return stokes(); });
    check(7, "additivity of the gerbe invariants", [&] { return additivity(); });
    check(8, "Picard-Jacobi commutativity", [&] { return picard(); });
    check(9, "single top simplex equals its volume fraction", [&] { return top_simplex(); });
    check(10, "stability under barycentric subdivision", [&] { return subdivision(); });
    check(11, "integral Jacobi components on cycles", [&] { return integrality(); });
    std::printf("%d/11 criteria passed\n", passed_);
    return passed_ == 11 ? 0 : 1;
  }

 private:
  void check(int id, const char* title, const std::function<Verdict()>& body, double budget = 0) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = seconds_since(t0);
    if (budget > 0 && secs > budget) {
      v.pass = false;
      v.detail += fmt::format("; over time budget {:.0f} s", budget);
    }
    passed_ += v.pass;
    std::printf("[%s] criterion %2d: %s -- %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(),
                secs);
    std::fflush(stdout);
  }

  const Fixture& fx(const std::string& name) { return *fixtures_.at(name); }

  Verdict exactness() {
    std::int64_t worst_bb = 0, worst_dd = 0;
    std::mt19937_64 rng(1);
    for (const char* name : kFixtures) {
      complexes_.emplace(name, std::make_unique<SimplicialComplex>(generate(name)));
      const SimplicialComplex& k = *complexes_.at(name);
      for (int d = 2; d <= k.dimension(); ++d) {
        const SparseIntMatrix bb = boundary_matrix(k, d - 1) * boundary_matrix(k, d);
        worst_bb = std::max<std::int64_t>(worst_bb, bb.cwiseAbs().sum());
        IntCochain f{d - 2, std::vector<std::int64_t>(k.count(d - 2))};
        for (auto& x : f.values) x = static_cast<std::int64_t>(rng() % 11) - 5;
        for (std::int64_t x : coboundary(k, coboundary(k, f)).values) worst_dd = std::max(worst_dd, std::abs(x));
      }
    }
    return {worst_bb == 0 && worst_dd == 0,
            fmt::format("sum |dd| = {}, max |dd f| = {} over 5 fixtures", worst_bb, worst_dd)};
  }

  Verdict betti() {
    const std::map<std::string, std::vector<std::size_t>> expected = {
        {"S2", {1, 0, 1}}, {"T2r4", {1, 2, 1}}, {"T2r8", {1, 2, 1}}, {"T3r3", {1, 3, 3, 1}}, {"G2", {1, 4, 1}}};
    bool ok = true;
    double min_gap = INFINITY;
    std::string bad;
    for (const char* name : kFixtures) {
      auto f = gerbe::testing::make_fixture(name, *complexes_.at(name));
      const auto b = f->t().betti_numbers();
      bool torsion_free = true;
      for (int d = 0; d <= f->k().dimension(); ++d) {
        torsion_free &= f->t().homology(d).torsion().empty();
        const DegreeReport& r = f->h().report(d);
        if (r.harmonic_dimension != r.betti) ok = false;
        if (r.betti > 0 && r.betti < r.simplices) min_gap = std::min(min_gap, r.gap_ratio);
      }
      if (b != expected.at(name) || !torsion_free) {
        ok = false;
        bad += std::string(" ") + name;
      }
      fixtures_.emplace(name, std::move(f));
    }
    ok = ok && min_gap >= 1e3;
    return {ok, fmt::format("betti exact on 5 fixtures{}, min gap ratio {:.3g}", bad.empty() ? "" : "; wrong:" + bad,
                            min_gap)};
  }

  Verdict periods() {
    double worst = 0;
    bool unimodular = true, identity = true;
    const std::pair<const char*, int> cases[] = {{"T2r4", 1}, {"T2r8", 1}, {"G2", 1}, {"T3r3", 1}, {"T3r3", 2}};
    for (const auto& [name, d] : cases) {
      const PeriodCheck p = period_matrix_check(fx(name).h(), d);
      worst = std::max(worst, p.max_error);
      identity &= p.identity && p.max_error <= 1e-8;
      unimodular &= determinant(pairing_matrix(fx(name).t(), d)).is_unit();
    }
    return {identity && unimodular,
            fmt::format("max |E - I| = {:.2e}, pairing det = +-1: {}", worst, unimodular ? "yes" : "no")};
  }

  Verdict poisson() {
    double worst = 0;
    int count = 0;
    std::mt19937_64 rng(4);
    for (const char* name : kFixtures) {
      const Fixture& f = fx(name);
      for (int i = 0; i < 20; ++i) {
        const int d = i % f.k().dimension();
        const PoissonSolution p = solve_poisson(f.h(), gerbe::testing::random_cycle(f.t(), d, rng));
        worst = std::max({worst, p.laplace_residual, p.divergence_residual});
        ++count;
      }
    }
    return {worst <= 1e-8, fmt::format("{} cycles, max relative residual {:.2e}", count, worst)};
  }

  Verdict point_pairs() {
    const Fixture& f = fx("T2r8");
    constexpr int r = 8;
    const SimplicialComplex& k = f.k();
    // Exact oracle: integer periods of the cocycle basis on the two axis loops.
    std::vector<int> xs, ys;
    for (int i = 0; i <= r; ++i) {
      xs.push_back(gerbe::testing::torus_vertex(r, i, 0));
      ys.push_back(gerbe::testing::torus_vertex(r, 0, i));
    }
    const Chain lx = gerbe::testing::path_chain(k, xs), ly = gerbe::testing::path_chain(k, ys);
    const auto& hats = f.h().integer_cocycles(1);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(0, r - 1);
    int mismatches = 0, equal_pairs = 0;
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const int px = coord(rng), py = coord(rng);
      const bool same = trial % 5 == 0;
      const int qx = same ? px : coord(rng), qy = same ? py : coord(rng);
      const bool coincide = px == qx && py == qy;
      equal_pairs += coincide;
      const Chain z = gerbe::testing::vertex_chain(k, gerbe::testing::torus_vertex(r, px, py)) -
                      gerbe::testing::vertex_chain(k, gerbe::testing::torus_vertex(r, qx, qy));
      const LinearEquivalence v = is_linearly_trivial(f.h(), z);
      if (v.trivial != coincide) ++mismatches;
      for (std::size_t a = 0; a < hats.size(); ++a) {
        const double expected = (hats[a](lx) * (px - qx) + hats[a](ly) * (py - qy)) / double(r);
        worst = std::max(worst, mod1_distance(v.jacobi->components(static_cast<Eigen::Index>(a)) - expected));
      }
    }
    return {mismatches == 0 && worst <= 1e-6,
            fmt::format("100 pairs ({} coincident), {} wrong verdicts, max |J - displacement| mod 1 = {:.2e}, "
                        "lattice residual {:.2e}",
                        equal_pairs, mismatches, worst, f.h().report(1).lattice_residual)};
  }

  Verdict stokes() {
    double worst = 0;
    int count = 0;
    std::mt19937_64 rng(6);
    for (const char* name : {"T2r4", "T2r8", "G2", "T3r3"}) {
      const Fixture& f = fx(name);
      const int n = f.k().dimension();
      for (int i = 0; i < 20; ++i) {
        const int d = i % n;
        const Chain z = gerbe::testing::random_boundary(f.k(), d, rng);
        const Chain g1 = find_bounding_chain(f.t(), z);
        Chain g2 = gerbe::testing::random_cycle(f.t(), d + 1, rng) + g1;
        if (d + 2 <= n) g2 += gerbe::testing::random_boundary(f.k(), d + 1, rng);
        if (boundary(f.k(), g2) != z) return {false, "second chain does not bound"};
        const TorusPoint a = jacobi_point(f.h(), g1), b = jacobi_point(f.h(), g2);
        worst = std::max(worst, a.distance(b));
        ++count;
      }
    }
    return {worst <= 2e-6, fmt::format("{} boundary cycles, max torus distance {:.2e}", count, worst)};
  }

  static double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

  Verdict additivity() {
    double worst = 0;
    bool exact = true;
    int count = 0;
    std::mt19937_64 rng(7);
    const std::pair<const char*, int> cases[] = {{"T2r8", 0}, {"T2r8", 1}, {"G2", 1}, {"T3r3", 1}, {"T3r3", 2}};
    for (const auto& [name, d] : cases) {
      const Fixture& f = fx(name);
      const ModuliGroup g(f.h(), d);
      for (int i = 0; i < 20; ++i) {
        const Chain z1 = gerbe::testing::random_cycle(f.t(), d, rng);
        const Chain z2 = gerbe::testing::random_cycle(f.t(), d, rng);
        const AbelGerbe a = abel_gerbe(f.h(), z1), b = abel_gerbe(f.h(), z2), s = abel_gerbe(f.h(), z1 + z2);
        worst = std::max({worst, max_abs(s.dual.eta_tilde - a.dual.eta_tilde - b.dual.eta_tilde),
                          max_abs(s.dual.eta - a.dual.eta - b.dual.eta),
                          max_abs(s.dual.curvature - a.dual.curvature - b.dual.curvature),
                          max_abs(s.poisson.potential - a.poisson.potential - b.poisson.potential),
                          max_abs(s.poisson.field - a.poisson.field - b.poisson.field)});
        for (std::size_t j = 0; j < s.homology.free.size(); ++j) {
          exact &= s.homology.free[j] == a.homology.free[j] + b.homology.free[j];
          exact &= s.dual.characteristic.free[j] == a.dual.characteristic.free[j] + b.dual.characteristic.free[j];
          exact &= s.dual.periods[j] == a.dual.periods[j] + b.dual.periods[j];
        }
        const ModuliClass sum = moduli_add(g, moduli_class(g, z1), moduli_class(g, z2));
        worst = std::max(worst, sum.t.distance(moduli_class(g, z1 + z2).t));
        ++count;
      }
    }
    return {exact && worst <= 1e-8,
            fmt::format("{} pairs, max deviation {:.2e}, integer invariants exact: {}", count, worst,
                        exact ? "yes" : "no")};
  }

  Verdict picard() {
    double worst = 0;
    int count = 0;
    std::mt19937_64 rng(8);
    for (const char* name : {"T2r4", "T2r8", "G2", "T3r3"}) {
      const Fixture& f = fx(name);
      for (int i = 0; i < 20; ++i) {
        const int k = 1 + i % f.k().dimension();
        const Chain gamma = gerbe::testing::random_chain(f.k(), k, rng);
        const TorusPoint via = picard_to_jacobi(f.h(), picard_point(f.h(), picard_rep(f.h(), gamma)));
        worst = std::max(worst, via.distance(jacobi_point(f.h(), gamma)));
        ++count;
      }
    }
    return {worst <= 1e-8, fmt::format("{} chains, max torus distance {:.2e}", count, worst)};
  }

  Verdict top_simplex() {
    const Fixture& f = fx("T2r4");
    const SimplicialComplex& k = f.k();
    double worst = 0;
    for (std::size_t t = 0; t < k.count(2); ++t) {
      const Chain c = Chain::elementary(k, k.simplex(2, t), k.top_orientations()[t]);
      const double j = jacobi_vector(f.h(), c).components(0);
      worst = std::max(worst, std::abs(std::abs(j) - k.top_volume(t) / k.total_volume()));
      worst = std::max(worst, std::abs(std::abs(j) - 1.0 / 32.0));
    }
    return {worst <= 1e-8, fmt::format("all 32 triangles, max |J - 1/32| = {:.2e}", worst)};
  }

  // Jacobi coordinates on K' expressed in the lattice basis of K:
  // E_ji = theta'_j(sd Y_i) for the dual homology basis Y of K.
  static Eigen::MatrixXd basis_change(const Fixture& f, const Fixture& s, const Subdivision& sd, int k) {
    const auto y = dual_homology_basis(f.t(), k, f.h().integer_cocycles(k));
    const auto& hats = s.h().integer_cocycles(k);
    Eigen::MatrixXd e(static_cast<Eigen::Index>(hats.size()), static_cast<Eigen::Index>(y.size()));
    for (std::size_t j = 0; j < hats.size(); ++j)
      for (std::size_t i = 0; i < y.size(); ++i)
        e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = double(hats[j](sd.transfer(y[i])));
    return e;
  }

  Verdict subdivision() {
    struct Case {
      const Fixture* base;
      Chain z;
    };
    auto t3 = gerbe::testing::make_fixture("T2r3", generate_flat_torus(2, 3));
    const Fixture& t4 = fx("T2r4");
    const SimplicialComplex& k4 = t4.k();
    auto v4 = [&](int x, int y) { return gerbe::testing::vertex_chain(k4, gerbe::testing::torus_vertex(4, x, y)); };
    auto v3 = [&](int x, int y) {
      return gerbe::testing::vertex_chain(t3->k(), gerbe::testing::torus_vertex(3, x, y));
    };
    auto loop4 = [&](int y) {
      std::vector<int> path;
      for (int x = 0; x <= 4; ++x) path.push_back(gerbe::testing::torus_vertex(4, x, y));
      return gerbe::testing::path_chain(k4, path);
    };
    const std::vector<Case> cases = {
        {&t4, v4(1, 2) - v4(3, 0)},
        {&t4, v4(2, 2) - v4(2, 2)},
        {&t4, v4(0, 0) - v4(2, 2)},
        {&t4, v4(0, 1) - v4(3, 3)},
        {&t4, loop4(0)},
        {&t4, loop4(0) - loop4(2)},
        {&t4, loop4(1) - loop4(2)},
        {&t4, boundary(k4, Chain::elementary(k4, k4.simplex(2, 5), k4.top_orientations()[5]))},
        {t3.get(), v3(0, 0) - v3(1, 2)},
        {t3.get(), v3(2, 1) - v3(2, 1)},
    };
    std::map<const Fixture*, std::pair<Subdivision, std::unique_ptr<Fixture>>> refined;
    int agree = 0;
    double worst = 0;
    for (const Case& c : cases) {
      auto it = refined.find(c.base);
      if (it == refined.end()) {
        Subdivision sd = barycentric_subdivide(c.base->k());
        auto fine = gerbe::testing::make_fixture(c.base->name + "-sd", sd.complex);
        it = refined.emplace(c.base, std::make_pair(std::move(sd), std::move(fine))).first;
      }
      const Subdivision& sd = it->second.first;
      const Fixture& fine = *it->second.second;
      const Chain zs = sd.transfer(c.z);
      const LinearEquivalence a = is_linearly_trivial(c.base->h(), c.z);
      const LinearEquivalence b = is_linearly_trivial(fine.h(), zs);
      bool same = a.trivial == b.trivial && a.homology.is_zero() == b.homology.is_zero();
      if (a.jacobi && b.jacobi) {
        // Compare with the subdivided bounding chain of K, not the one found on K'.
        const Eigen::MatrixXd e = basis_change(*c.base, fine, sd, c.z.degree + 1);
        const Eigen::VectorXd mapped = e * a.jacobi->components;
        const Eigen::VectorXd direct = jacobi_vector(fine.h(), sd.transfer(*a.bounding_chain)).components;
        for (Eigen::Index i = 0; i < mapped.size(); ++i) {
          worst = std::max(worst, mod1_distance(mapped(i) - b.jacobi->components(i)));
          worst = std::max(worst, mod1_distance(mapped(i) - direct(i)));
        }
      }
      agree += same;
    }
    return {agree == 10 && worst <= 1e-6,
            fmt::format("{}/10 verdicts unchanged, max Jacobi shift mod 1 = {:.2e}", agree, worst)};
  }

  Verdict integrality() {
    double worst = 0;
    int count = 0;
    std::mt19937_64 rng(11);
    for (const char* name : {"T2r4", "T2r8", "G2", "T3r3"}) {
      const Fixture& f = fx(name);
      for (int i = 0; i < 20; ++i) {
        const int k = 1 + i % f.k().dimension();
        const JacobiVector j = jacobi_vector(f.h(), gerbe::testing::random_cycle(f.t(), k, rng));
        for (Eigen::Index a = 0; a < j.components.size(); ++a) worst = std::max(worst, mod1_distance(j.components(a)));
        ++count;
      }
    }
    return {worst <= 1e-8, fmt::format("{} cycles, max distance to Z {:.2e}", count, worst)};
  }

  std::map<std::string, std::unique_ptr<SimplicialComplex>> complexes_;
  std::map<std::string, std::unique_ptr<Fixture>> fixtures_;
  int passed_ = 0;
};

}  // namespace

int main() { return Battery().run(); }
