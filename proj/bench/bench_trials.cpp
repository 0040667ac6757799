#include <benchmark/benchmark.h>

#include "superbv/suites.hpp"

namespace {

sbv::Scenario bench_scenario(int trials) {
  sbv::Scenario s = sbv::parse_scenario("ring 2|1 cap 4; suite tian_todorov; suite gbv_compat; suite covariance;");
  s.trials = trials;
  return s;
}

void run(benchmark::State& state, sbv::Execution mode) {
  const sbv::Scenario s = bench_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    sbv::Report r = sbv::run_suites(s, mode);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(s.suites.size()));
}

void BM_SuitesSerial(benchmark::State& state) { run(state, sbv::Execution::serial); }
void BM_SuitesParallel(benchmark::State& state) { run(state, sbv::Execution::parallel); }

}  // namespace

BENCHMARK(BM_SuitesSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuitesParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
