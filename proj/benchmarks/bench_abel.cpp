#include <benchmark/benchmark.h>

#include <memory>

#include "gerbe/abel.hpp"
#include "gerbe/generators.hpp"
#include "gerbe/hodge.hpp"
#include "gerbe/homology.hpp"
#include "gerbe/moduli.hpp"

namespace {

constexpr int kRes = 8;

// Shared torus; built once, outside the timed loops.
struct Torus {
  gerbe::SimplicialComplex k = gerbe::generate_flat_torus(2, kRes);
  gerbe::Topology t{k};
  gerbe::HodgeStructure h = gerbe::build_hodge(k, t);
};

const Torus& torus() {
  static const auto instance = std::make_unique<Torus>();
  return *instance;
}

gerbe::Chain vertex(const gerbe::SimplicialComplex& k, int x, int y) {
  return gerbe::Chain::elementary(k, {x % kRes + kRes * (y % kRes)});
}

// Horizontal path of `len` edges starting at the origin.
gerbe::Chain path(const gerbe::SimplicialComplex& k, int len) {
  gerbe::Chain c = gerbe::Chain::zero(k, 1);
  for (int i = 0; i < len; ++i) c += gerbe::Chain::elementary(k, {i, i + 1});
  return c;
}

void BM_JacobiVector(benchmark::State& state) {
  const Torus& m = torus();
  const gerbe::Chain gamma = path(m.k, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gerbe::jacobi_vector(m.h, gamma));
}
BENCHMARK(BM_JacobiVector)->Arg(1)->Arg(7)->Unit(benchmark::kMicrosecond);

void BM_PoincareDual(benchmark::State& state) {
  const Torus& m = torus();
  const gerbe::Chain z = vertex(m.k, 3, 2) - vertex(m.k, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(gerbe::poincare_dual(m.h, z));
}
BENCHMARK(BM_PoincareDual)->Unit(benchmark::kMicrosecond);

void BM_LinEquiv(benchmark::State& state) {
  const Torus& m = torus();
  const gerbe::Chain p = vertex(m.k, 1, 1), q = vertex(m.k, 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(gerbe::lin_equiv(m.h, p, q));
}
BENCHMARK(BM_LinEquiv)->Unit(benchmark::kMicrosecond);

void BM_JacobiScan(benchmark::State& state) {
  const Torus& m = torus();
  gerbe::ScanOptions opts;
  opts.budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gerbe::jacobi_scan(m.h, 0, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JacobiScan)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
