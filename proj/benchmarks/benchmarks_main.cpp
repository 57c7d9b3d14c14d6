#include <benchmark/benchmark.h>

#include "roboflag/generator.hpp"
#include "roboflag/intercept.hpp"
#include "roboflag/oracle.hpp"
#include "roboflag/replanning.hpp"
#include "roboflag/solver.hpp"

using namespace roboflag;

namespace {

InstanceSpec bench_instance(int n, int m, std::uint64_t seed) {
  GenParams params;
  params.defenders = n;
  params.attackers = m;
  params.seed = seed;
  return generate(params);
}

void BM_MinTimeAxis(benchmark::State& state) {
  SplitMix64 rng(1);
  for (auto _ : state) {
    const double d = rng.uniform(-8.0, 8.0);
    const double v = rng.uniform(-1.2, 1.2);
    benchmark::DoNotOptimize(min_time_to_point_1d(d, v, kAxisControlBound));
  }
}
BENCHMARK(BM_MinTimeAxis);

void BM_IntTime(benchmark::State& state) {
  const InstanceSpec inst = bench_instance(1, 1, 7);
  const FieldConfig field;
  const SampleGrid grid;
  double t0 = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        int_time(inst.defenders[0], inst.attackers[0], t0, field, grid));
    t0 = t0 < 2.0 ? t0 + 1e-4 : 0.0;  // defeat trivial repetition
  }
}
BENCHMARK(BM_IntTime);

void BM_GreedyBound(benchmark::State& state) {
  const InstanceSpec inst = bench_instance(3, 5, 11);
  for (auto _ : state) {
    // A fresh cache each round so the measurement is the uncached path.
    const InterceptOracle oracle(inst);
    const auto root = evaluate(Assignment::empty(5), inst, oracle, 0.01);
    benchmark::DoNotOptimize(upper_bound(root, inst, oracle, 0.01));
  }
}
BENCHMARK(BM_GreedyBound);

void BM_SolveToOptimal(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const InstanceSpec inst = bench_instance(3, m, 13);
  SolverConfig config;
  config.epsilon = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst, config));
  }
}
BENCHMARK(BM_SolveToOptimal)->Arg(4)->Arg(5)->Arg(6);

void BM_SolveGreedyBudget(benchmark::State& state) {
  const InstanceSpec inst = bench_instance(8, 4, 17);
  SolverConfig config;
  config.epsilon = 0.01;
  config.k_max = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(inst, config));
  }
}
BENCHMARK(BM_SolveGreedyBudget);

void BM_Simulate(benchmark::State& state) {
  GenParams params;
  params.defenders = 8;
  params.attackers = 4;
  params.attacker_radius = {5.0, 10.0};
  params.defender_radius = {3.5, 12.0};
  params.attacker_speed = {1.0, 1.0};
  params.seed = 19;
  const InstanceSpec inst = generate(params);
  const SimConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(inst, cfg, params.seed));
  }
}
BENCHMARK(BM_Simulate);

}  // namespace

BENCHMARK_MAIN();
