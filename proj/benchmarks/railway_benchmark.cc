// Copyright 2026 The Railway Layout Authors
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

#include <benchmark/benchmark.h>

#include "railway/cost.h"
#include "railway/exact.h"
#include "railway/heuristic.h"
#include "railway/ilp.h"
#include "railway/simulate.h"

namespace railway {
namespace {

Instance MakeInstance(std::size_t attributes, std::size_t query_kinds) {
  WorkloadSpec spec;
  spec.n_attributes = attributes;
  spec.n_query_kinds = query_kinds;
  spec.seed = 42;
  return generate(spec);
}

void BM_GreedyNov(benchmark::State& state) {
  const Instance instance = MakeInstance(state.range(0), state.range(1));
  const OptimizerConfig config(1.0, SearchLimits{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_nov(instance, config));
  }
}
BENCHMARK(BM_GreedyNov)->Args({4, 5})->Args({10, 5})->Args({16, 14});

void BM_GreedyOv(benchmark::State& state) {
  const Instance instance = MakeInstance(state.range(0), state.range(1));
  const OptimizerConfig config(1.0, SearchLimits{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_ov(instance, config));
  }
}
BENCHMARK(BM_GreedyOv)->Args({4, 5})->Args({10, 5})->Args({16, 14});

void BM_ExactNov(benchmark::State& state) {
  const Instance instance = MakeInstance(state.range(0), 5);
  const OptimizerConfig config(1.0, SearchLimits{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact_nov(instance, config));
  }
}
BENCHMARK(BM_ExactNov)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ExactOv(benchmark::State& state) {
  const Instance instance = MakeInstance(state.range(0), 5);
  const OptimizerConfig config(1.0, SearchLimits{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact_ov(instance, config));
  }
}
BENCHMARK(BM_ExactOv)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_QueryIo(benchmark::State& state) {
  const Instance instance = MakeInstance(16, 14);
  const OptimizerConfig config(1.0, SearchLimits{});
  const Layout layout = greedy_ov(instance, config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(query_io(layout, instance));
  }
}
BENCHMARK(BM_QueryIo);

void BM_ExportLp(benchmark::State& state) {
  const Instance instance = MakeInstance(state.range(0), 5);
  const OptimizerConfig config(1.0, SearchLimits{});
  for (auto _ : state) {
    benchmark::DoNotOptimize(export_lp(build_ilp_ov(instance, config)));
  }
}
BENCHMARK(BM_ExportLp)->Arg(4)->Arg(16);

}  // namespace
}  // namespace railway

BENCHMARK_MAIN();
