#include <benchmark/benchmark.h>

#include <random>

#include "gerbe/generators.hpp"
#include "gerbe/homology.hpp"
#include "gerbe/smith.hpp"

namespace {

gerbe::IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  gerbe::IntMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = entry(rng);
  return a;
}

void BM_SmithDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const gerbe::IntMatrix a = random_matrix(n, n + n / 2, 17);
  for (auto _ : state) {
    gerbe::SmithDecomposition d = gerbe::smith_normal_form(a);
    benchmark::DoNotOptimize(d.divisors);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmithDense)->RangeMultiplier(2)->Range(8, 64)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SmithWithInverses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const gerbe::IntMatrix a = random_matrix(n, n, 23);
  gerbe::SmithOptions opts;
  opts.left_inverse = opts.right_inverse = true;
  for (auto _ : state) benchmark::DoNotOptimize(gerbe::smith_normal_form(a, opts));
}
BENCHMARK(BM_SmithWithInverses)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

// Full integral homology of a flat torus; dominated by boundary-matrix SNF.
void BM_TorusHomology(benchmark::State& state) {
  const gerbe::SimplicialComplex k = gerbe::generate_flat_torus(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const gerbe::Topology t(k);
    benchmark::DoNotOptimize(t.betti_numbers());
  }
  state.counters["simplices"] = static_cast<double>(k.count(0) + k.count(1) + k.count(2));
}
BENCHMARK(BM_TorusHomology)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
