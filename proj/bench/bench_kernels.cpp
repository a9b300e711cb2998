// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "forksettle/exactprob.hpp"
#include "forksettle/game.hpp"

using namespace forksettle;

namespace {

void BM_MarginSeries(benchmark::State& state, DpBackend backend) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const double alpha = 0.25;
  const auto init = stationary_pmf(1.0 - 2.0 * alpha, k + 64);
  for (auto _ : state) benchmark::DoNotOptimize(nonneg_margin_series(k, alpha, init, backend));
  state.SetComplexityN(state.range(0));
}

void BM_MonteCarlo(benchmark::State& state, TrialBackend backend) {
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_insecurity(BernoulliParams{0.3, 100}, 10, 10, trials, 1, backend));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_MarginSeries, serial, DpBackend::Serial)->Arg(100)->Arg(200)->Arg(400)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MarginSeries, parallel, DpBackend::Parallel)->Arg(100)->Arg(200)->Arg(400)->Complexity()->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MonteCarlo, serial, TrialBackend::Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MonteCarlo, parallel, TrialBackend::Parallel)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
