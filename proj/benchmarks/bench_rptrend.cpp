// Copyright 2026 The rptrend Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "rptrend/analysis.hpp"
#include "rptrend/estimators.hpp"
#include "rptrend/null_dist.hpp"
#include "rptrend/trend_tests.hpp"
#include "rptrend/trp_sim.hpp"

namespace {

using namespace rptrend;

EventSeries series_with(std::int64_t n) {
  const TrpModel model{PowerLaw{1.0}, 1.5};
  return simulate_trp(model, static_cast<double>(n), 99);
}

void BM_Lr(benchmark::State& state) {
  const EventSeries s = series_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lr_value(s, 0.8));
}
BENCHMARK(BM_Lr)->Arg(30)->Arg(1000)->Arg(100000);

void BM_Ks(benchmark::State& state) {
  const EventSeries s = series_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ks_value(s, 0.8));
}
BENCHMARK(BM_Ks)->Arg(30)->Arg(1000)->Arg(100000);

void BM_Ad(benchmark::State& state) {
  const EventSeries s = series_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ad_value(s, 0.8));
}
BENCHMARK(BM_Ad)->Arg(30)->Arg(1000)->Arg(100000);

void BM_Elr(benchmark::State& state) {
  const EventSeries s = series_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(elr_value(s, 0.8, {0.5}));
}
BENCHMARK(BM_Elr)->Arg(30)->Arg(1000)->Arg(100000);

void BM_SampleEstimates(benchmark::State& state) {
  const EventSeries s = series_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_estimates(s));
}
BENCHMARK(BM_SampleEstimates)->Arg(30)->Arg(1000);

void BM_WeibullFit(benchmark::State& state) {
  const EventSeries s = series_with(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_weibull_rp(s));
}
BENCHMARK(BM_WeibullFit)->Arg(30)->Arg(1000);

void BM_AdPValueShipped(benchmark::State& state) {
  const EventSeries s = series_with(30);
  const Estimates est = sample_estimates(s);
  const LimitTable& t = shipped_limit_table(LimitKind::AD);
  for (auto _ : state) benchmark::DoNotOptimize(ad_statistic(s, est, t));
}
BENCHMARK(BM_AdPValueShipped);

void BM_BuildTable(benchmark::State& state) {
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_limit_table(LimitKind::CvM, 1000, grid, 5));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_BuildTable)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_SimulatePowerLaw(benchmark::State& state) {
  const TrpModel model{PowerLaw{1.3}, 0.75};
  const double tau = tau_for_expected(model.trend, static_cast<double>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_trp(model, tau, ++seed));
}
BENCHMARK(BM_SimulatePowerLaw)->Arg(30)->Arg(10000);

void BM_SimulateBathtub(benchmark::State& state) {
  const TrpModel model{bathtub_equal_phases(10.0, 20.0), 1.5};
  const double tau = std::get<Bathtub>(model.trend).tau;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_trp(model, tau, ++seed));
}
BENCHMARK(BM_SimulateBathtub);

void BM_PermutationLr(benchmark::State& state) {
  const EventSeries s = lhd_series();
  PValueOptions opt;
  opt.mode = PValueMode::Permutation;
  opt.permutations = 999;
  for (auto _ : state) benchmark::DoNotOptimize(run_test(s, {TestKind::LR}, opt));
}
BENCHMARK(BM_PermutationLr)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
