// Serial reference against the OpenMP kernels on the same problems.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "sofic/sofic.hpp"
#include "sofic/suites.hpp"

namespace {

using namespace sofic;

SAParams cyclic_params(std::size_t m, std::size_t d) {
  const SystemPtr sys = parse_system("zmod(" + std::to_string(m) + ")");
  return make_params(SoficSource::from_ball(ball(sys, sys->generators(), 1), d), Rational(1, 2), d);
}

SAParams r2_params(std::size_t d) {
  const GroupoidPtr g = suites::r2();
  return make_params(SoficSource::from_groupoid(g, suites::r2_generators(g), 2, 2), Rational(1, 5), d);
}

void BM_ReferenceCyclic(benchmark::State &state) {
  const SAParams p = cyclic_params(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sa_reference(p).count);
}

void BM_EnumerateCyclic(benchmark::State &state) {
  const SAParams p = cyclic_params(3, static_cast<std::size_t>(state.range(0)));
  EnumerationOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sa(p, opt).count);
}

void BM_ReferenceR2(benchmark::State &state) {
  const SAParams p = r2_params(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sa_reference(p).count);
}

void BM_EnumerateR2(benchmark::State &state) {
  const SAParams p = r2_params(static_cast<std::size_t>(state.range(0)));
  EnumerationOptions opt;
  opt.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_sa(p, opt).count);
}

void BM_MonteCarlo(benchmark::State &state) {
  const SAParams p = cyclic_params(2, 8);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_count(p, 200000, 7, threads).hits);
}

void BM_LemmaSweep(benchmark::State &state) {
  suites::LemmaSweepConfig cfg;
  cfg.groupoid = suites::r2();
  cfg.F = suites::r2_generators(cfg.groupoid);
  cfg.degrees = {4};
  cfg.partitions = 20;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(suites::lemma_sweep(cfg).instances.size());
}

const int kMax = omp_get_max_threads();

BENCHMARK(BM_ReferenceCyclic)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateCyclic)->Args({4, 1})->Args({5, 1})->Args({4, kMax})->Args({5, kMax})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReferenceR2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateR2)->Args({3, 1})->Args({4, 1})->Args({3, kMax})->Args({4, kMax})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(kMax)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LemmaSweep)->Arg(1)->Arg(kMax)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
