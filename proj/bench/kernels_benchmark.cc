// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference versus OpenMP kernels on generated instances.

#include <benchmark/benchmark.h>

#include <vector>

#include "stochsub/counter_rng.h"
#include "stochsub/harness.h"
#include "stochsub/independence.h"
#include "stochsub/kernels.h"

namespace stochsub {
namespace {

Execution ExecOf(const benchmark::State& state) {
  return state.range(1) ? Execution::kParallel : Execution::kSerial;
}

Instance BenchInstance(int m) {
  CommonCauseSpec spec;
  spec.num_items = m;
  spec.states_per_item = 2;
  spec.worlds = 16;
  spec.seed = 7;
  spec.noise = 0.5;
  return GenerateCommonCause(spec);
}

void BM_SetValueTable(benchmark::State& state) {
  const Instance instance = BenchInstance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::SetValueTable(instance, ExecOf(state)));
  }
}
BENCHMARK(BM_SetValueTable)->ArgsProduct({{10, 14}, {0, 1}});

void BM_MultilinearSum(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const std::vector<double> values =
      kernels::SetValueTable(BenchInstance(m), Execution::kParallel);
  std::vector<double> x(m);
  for (int e = 0; e < m; ++e) x[e] = (e + 1.0) / (m + 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::MultilinearSum(values, x, ExecOf(state)));
  }
}
BENCHMARK(BM_MultilinearSum)->ArgsProduct({{12, 16}, {0, 1}});

void BM_Kappa(benchmark::State& state) {
  const Instance instance = BenchInstance(static_cast<int>(state.range(0)));
  IndependenceOptions options;
  options.execution = ExecOf(state);
  for (auto _ : state) benchmark::DoNotOptimize(Kappa(instance, options));
}
BENCHMARK(BM_Kappa)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SampleMean(benchmark::State& state) {
  const auto draw = [](std::int64_t i) {
    return CounterUniform({1, 0, 0, static_cast<std::uint64_t>(i)}, 0);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::SampleMean(state.range(0), draw, ExecOf(state)));
  }
}
BENCHMARK(BM_SampleMean)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}});

}  // namespace
}  // namespace stochsub

BENCHMARK_MAIN();
