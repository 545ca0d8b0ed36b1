#include <benchmark/benchmark.h>

#include "gerbe/generators.hpp"
#include "gerbe/hodge.hpp"
#include "gerbe/homology.hpp"

namespace {

void run_build(benchmark::State& state, const gerbe::SimplicialComplex& k, gerbe::HodgeOptions opts) {
  const gerbe::Topology t(k);
  for (auto _ : state) {
    gerbe::HodgeStructure h = gerbe::build_hodge(k, t, opts);
    for (int d = 0; d <= k.dimension(); ++d) benchmark::DoNotOptimize(h.integral_lattice(d));
  }
  state.counters["edges"] = static_cast<double>(k.count(1));
}

void BM_HodgeTorus(benchmark::State& state) {
  run_build(state, gerbe::generate_flat_torus(2, static_cast<int>(state.range(0))), {});
}
BENCHMARK(BM_HodgeTorus)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_HodgeGenus(benchmark::State& state) {
  run_build(state, gerbe::generate_genus_surface(2, static_cast<int>(state.range(0))), {});
}
BENCHMARK(BM_HodgeGenus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HodgeTorus3(benchmark::State& state) {
  gerbe::HodgeOptions opts;
  opts.profile = state.range(0) ? gerbe::SolverProfile::Fast : gerbe::SolverProfile::Deterministic;
  run_build(state, gerbe::generate_flat_torus(3, 3), opts);
}
BENCHMARK(BM_HodgeTorus3)->ArgName("fast")->Arg(0)->Arg(1)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_MassAssembly(benchmark::State& state) {
  const gerbe::SimplicialComplex k = gerbe::generate_flat_torus(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gerbe::whitney_mass(k, 1));
}
BENCHMARK(BM_MassAssembly)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace
