// Microbenchmarks for the fast solvers and their reference counterparts.
// Run with --benchmark_filter=... to pick a family; sizes double so the
// reported times expose the empirical growth rates.

#include <benchmark/benchmark.h>

#include <algorithm>

#include "tspfg/bottleneck.hpp"
#include "tspfg/generators.hpp"
#include "tspfg/kopt.hpp"
#include "tspfg/pyramidal.hpp"
#include "tspfg/two_opt_engine.hpp"

using namespace tspfg;

static void BM_PyramidalFast(benchmark::State& state) {
  const auto pts = gen_random_points(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(pyramidal_fast(pts).length);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PyramidalFast)->RangeMultiplier(2)->Range(1 << 10, 1 << 15)->Complexity();

static void BM_PyramidalQuadratic(benchmark::State& state) {
  const auto pts = gen_random_points(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(pyramidal_quadratic(pts).length);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PyramidalQuadratic)->RangeMultiplier(2)->Range(1 << 10, 1 << 13)->Complexity();

static void BM_BottleneckFast(benchmark::State& state) {
  const auto pts = gen_random_points(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_fast(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BottleneckFast)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

static void BM_BottleneckQuadratic(benchmark::State& state) {
  const auto pts = gen_random_points(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_quadratic(pts).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BottleneckQuadratic)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

static void BM_KoptFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = gen_random_graph(n, 42, -1000, 1000);
  const auto t = Tour::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(best_kmove_fast(g, t, 4));
  state.SetComplexityN(n);
}
BENCHMARK(BM_KoptFast)->RangeMultiplier(2)->Range(30, 240)->Complexity();

static void BM_KoptBrute(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = gen_random_graph(n, 42, -1000, 1000);
  const auto t = Tour::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(best_kmove_bruteforce(g, t, 4));
  state.SetComplexityN(n);
}
BENCHMARK(BM_KoptBrute)->RangeMultiplier(2)->Range(30, 120)->Complexity();

// One best-improvement 2-opt iteration (find + apply), engine vs full scan.
static void BM_TwoOptEngineIteration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pts = gen_random_points(n, 42);
  for (auto _ : state) {
    state.PauseTiming();
    TourEngine eng(pts, Tour::identity(n));
    state.ResumeTiming();
    const auto m = eng.best_move();
    if (m.delta < 0.0) eng.apply(m);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TwoOptEngineIteration)->RangeMultiplier(2)->Range(500, 4000)->Complexity();

static void BM_TwoOptNaiveIteration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pts = gen_random_points(n, 42);
  Tour t = Tour::identity(n);
  for (auto _ : state) {
    const auto m = best_two_move_naive(pts, t);
    if (m.delta < 0.0)
      std::reverse(t.order.begin() + m.p + 1, t.order.begin() + m.q + 1);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TwoOptNaiveIteration)->RangeMultiplier(2)->Range(500, 4000)->Complexity();

BENCHMARK_MAIN();
