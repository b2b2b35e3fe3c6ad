// Copyright 2026 The iarstream Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include <benchmark/benchmark.h>

#include "iar/batch_mle.h"
#include "iar/data_pipeline.h"
#include "iar/model.h"
#include "iar/online.h"
#include "iar/sampling.h"

namespace {

iar::TimeSeries make_series(std::size_t n) {
  const auto t = iar::gen_times(iar::GammaGaps{}, n, 1);
  return iar::simulate(iar::IarParams(0.5, 1.0), t, 2);
}

void BM_NegLogLikelihood(benchmark::State& state) {
  const auto s = make_series(static_cast<std::size_t>(state.range(0)));
  const iar::IarParams p(0.6, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(iar::neg_log_likelihood(p, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NegLogLikelihood)->RangeMultiplier(4)->Range(64, 16384)
    ->Complexity();

void BM_FitMle(benchmark::State& state) {
  const auto s = make_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(iar::fit_mle(s).phi_hat);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitMle)->Arg(100)->Arg(600)->Arg(5000)->Complexity();

template <iar::OnlineMethod M>
void BM_RunOnline(benchmark::State& state) {
  const auto s = make_series(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iar::run_online(M, s, 0.5, 1).back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RunOnline<iar::OnlineMethod::kObr>)->Arg(100)->Arg(600)->Arg(5000)
    ->Complexity();
BENCHMARK(BM_RunOnline<iar::OnlineMethod::kOgd>)->Arg(100)->Arg(600)->Arg(5000)
    ->Complexity();
BENCHMARK(BM_RunOnline<iar::OnlineMethod::kOns>)->Arg(100)->Arg(600)->Arg(5000)
    ->Complexity();

// Per-observation cost of the streaming interface.
void BM_StreamingObserve(benchmark::State& state) {
  const auto s = make_series(4096);
  iar::OnlineEstimator est(iar::OnlineMethod::kObr, 0.5);
  std::size_t i = 0;
  double offset = 0.0;
  for (auto _ : state) {
    est.observe(s.time(i) + offset, s.value(i));
    if (++i == s.size()) {
      i = 0;
      offset += s.time(s.size() - 1) + 1.0;
    }
  }
  benchmark::DoNotOptimize(est.phi());
}
BENCHMARK(BM_StreamingObserve);

void BM_Lowess(benchmark::State& state) {
  const auto s = make_series(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> t(s.times().begin(), s.times().end());
  const std::vector<double> y(s.values().begin(), s.values().end());
  for (auto _ : state) benchmark::DoNotOptimize(iar::lowess_trend(t, y));
}
BENCHMARK(BM_Lowess)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
