// Serial references against the OpenMP kernels. Arguments: level k, then
// the worker count for the parallel variants.

#include "qorder/kernels.hpp"
#include "qorder/operators.hpp"
#include "qorder/stochastic.hpp"

#include <benchmark/benchmark.h>

using namespace qorder;

namespace {

const TreeSpec kSB{TreeKind::SB, false};

void BM_LevelRowsSerial(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::level_by_rows(kSB, k));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (k - 1)));
}

void BM_LevelParallel(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const Exec exec{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(level_parallel(kSB, k, exec));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (k - 1)));
}

void BM_FourierSumSerial(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const auto f = observables::fourier(1);
  const std::function<Complex(const ExtRat&)> fn = [&f](const ExtRat& x) { return f(x); };
  for (auto _ : state) benchmark::DoNotOptimize(reference::sum_over_levels(kSB, k, fn));
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << k) - 1));
}

void BM_FourierSumParallel(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  const Exec exec{static_cast<int>(state.range(1))};
  const auto f = observables::fourier(1);
  const std::function<Complex(const ExtRat&)> fn = [&f](const ExtRat& x) { return f(x); };
  for (auto _ : state) benchmark::DoNotOptimize(sum_over_levels(kSB, k, fn, exec));
  state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << k) - 1));
}

void BM_MarkovPowerSerial(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto f = observables::inv_square_shift();
  for (auto _ : state) benchmark::DoNotOptimize(reference::markov_power(MarkovKind::MC1, f, ExtRat(2, 3), n));
}

void BM_MarkovPowerParallel(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const Exec exec{static_cast<int>(state.range(1))};
  const auto f = observables::inv_square_shift();
  for (auto _ : state) benchmark::DoNotOptimize(markov_power(MarkovKind::MC1, f, ExtRat(2, 3), n, exec));
}

void BM_Walks(benchmark::State& state) {
  const Exec exec{static_cast<int>(state.range(0))};
  const ChainSpec spec{MarkovKind::MC0, ExtRat(1, 1), 1000, 7};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_many(spec, 2000, std::nullopt, exec));
  state.SetItemsProcessed(state.iterations() * 2000);
}

}  // namespace

BENCHMARK(BM_LevelRowsSerial)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LevelParallel)->ArgsProduct({{16, 18}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FourierSumSerial)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FourierSumParallel)->ArgsProduct({{16, 18}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MarkovPowerSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MarkovPowerParallel)->ArgsProduct({{12, 16}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Walks)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
