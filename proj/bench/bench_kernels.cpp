// Parallel kernels against their serial references. With one OpenMP thread the
// gap measures the pruning and memoization alone.

#include "deltafan/catalog.hpp"
#include "deltafan/circuitflip.hpp"
#include "deltafan/smoothcert.hpp"
#include "deltafan/triangulate.hpp"

#include <benchmark/benchmark.h>

using namespace deltafan;

namespace {

LatticePolytope polytope(int64_t which) {
  switch (which) {
    case 0: return catalog::blowup_example();
    case 1: return catalog::cross_polytope(4);
    default: return catalog::square_sum();
  }
}

void label(benchmark::State& state) {
  static const char* names[] = {"blowup", "cross4", "square_sum"};
  state.SetLabel(names[state.range(0)]);
}

void BM_MaximalCones(benchmark::State& state) {
  const auto p = polytope(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_maximal_cones(p));
  label(state);
}

void BM_MaximalConesReference(benchmark::State& state) {
  const auto p = polytope(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::enumerate_maximal_cones(p));
  label(state);
}

void BM_FindFlips(benchmark::State& state) {
  const auto f = mpcp(polytope(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_flips(f));
  label(state);
}

void BM_FindFlipsReference(benchmark::State& state) {
  const auto f = mpcp(polytope(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::find_flips(f));
  label(state);
}

void BM_RemarkWitness(benchmark::State& state) {
  const auto p = catalog::projective_simplex_dual(5);
  for (auto _ : state) benchmark::DoNotOptimize(remark_witness(p));
}

void BM_RemarkWitnessReference(benchmark::State& state) {
  const auto p = catalog::projective_simplex_dual(5);
  for (auto _ : state) benchmark::DoNotOptimize(reference::remark_witness(p));
}

}  // namespace

BENCHMARK(BM_MaximalCones)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaximalConesReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindFlips)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindFlipsReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemarkWitness)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RemarkWitnessReference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
