#include <random>

#include <benchmark/benchmark.h>

#include "argwf/builders.hpp"
#include "argwf/solver.hpp"

using namespace argwf;

namespace {

ProblemInstance make_instance(std::size_t m, std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, 50);
  std::uniform_int_distribution<int> proc(1, 120);
  ProblemInstance inst;
  for (std::size_t i = 0; i < m; ++i) inst.operators.push_back({"O" + std::to_string(i + 1), {}});
  for (std::size_t j = 0; j < n; ++j)
    inst.jobs.push_back({"J" + std::to_string(j + 1), {double(coord(rng)), double(coord(rng))}, {}, {}});
  inst.processing.assign(m, std::vector<double>(n));
  for (auto& row : inst.processing)
    for (auto& p : row) p = proc(rng);
  return inst;
}

Schedule round_robin(const ProblemInstance& inst) {
  auto sched = Schedule::empty_for(inst);
  for (JobIndex j = 0; j < inst.job_count(); ++j) sched.routes[j % inst.operator_count()].push_back(j);
  return sched;
}

void BM_BruteForceParallel(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force(inst));
}

void BM_BruteForceSerial(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::brute_force(inst));
}

void BM_SepPlusParallel(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 2);
  const auto sched = round_robin(inst);
  for (auto _ : state) benchmark::DoNotOptimize(sep_plus_violations(inst, sched));
}

void BM_SepPlusSerial(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 2);
  const auto sched = round_robin(inst);
  for (auto _ : state) benchmark::DoNotOptimize(reference::sep_plus_violations(inst, sched));
}

void BM_PepPlusParallel(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 3);
  const auto sched = round_robin(inst);
  for (auto _ : state) benchmark::DoNotOptimize(pep_plus_violations(inst, sched));
}

void BM_PepPlusSerial(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 3);
  const auto sched = round_robin(inst);
  for (auto _ : state) benchmark::DoNotOptimize(reference::pep_plus_violations(inst, sched));
}

void BM_BuildAll(benchmark::State& state) {
  const auto inst = make_instance(state.range(0), state.range(1), 4);
  const auto sched = round_robin(inst);
  for (auto _ : state) benchmark::DoNotOptimize(build_all(inst, sched));
}

}  // namespace

BENCHMARK(BM_BruteForceParallel)->Args({2, 6})->Args({3, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceSerial)->Args({2, 6})->Args({3, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SepPlusParallel)->Args({20, 20})->Args({50, 200});
BENCHMARK(BM_SepPlusSerial)->Args({20, 20})->Args({50, 200});
BENCHMARK(BM_PepPlusParallel)->Args({20, 20})->Args({50, 200});
BENCHMARK(BM_PepPlusSerial)->Args({20, 20})->Args({50, 200});
BENCHMARK(BM_BuildAll)->Args({20, 20})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
