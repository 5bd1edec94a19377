#include <benchmark/benchmark.h>

#include "ptspec/grid.hpp"
#include "ptspec/oracle.hpp"
#include "ptspec/parallel.hpp"
#include "ptspec/rootfind.hpp"

using namespace ptspec;

namespace {

const PotentialModel& model() {
  static const PotentialModel m = PotentialModel::exponential(-5.0, 3.0, 2.0);
  return m;
}

grid::GridSpec spec(int n) {
  return {rootfind::default_window(model()), 2 * n, n};
}

grid::ComplexFn fn() {
  return [](Complex k) { return models::f_of_k(model(), k); };
}

void BM_GridSerial(benchmark::State& state) {
  const auto s = spec(static_cast<int>(state.range(0)));
  const auto f = fn();
  for (auto _ : state) benchmark::DoNotOptimize(grid::evaluate_grid_serial(f, s));
  state.SetItemsProcessed(state.iterations() * s.n1 * s.n2);
}

void BM_GridParallel(benchmark::State& state) {
  const auto s = spec(static_cast<int>(state.range(0)));
  const auto f = fn();
  for (auto _ : state) benchmark::DoNotOptimize(grid::evaluate_grid(f, s));
  state.SetItemsProcessed(state.iterations() * s.n1 * s.n2);
  state.counters["threads"] = parallel::default_jobs();
}

void BM_OracleSerial(benchmark::State& state) {
  oracle::OracleOptions o;
  o.points = 8;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::random_check(ModelKind::SquareWell, o, 1));
}

void BM_OracleParallel(benchmark::State& state) {
  oracle::OracleOptions o;
  o.points = 8;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::random_check(ModelKind::SquareWell, o, 0));
  state.counters["threads"] = parallel::default_jobs();
}

}  // namespace

BENCHMARK(BM_GridSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
