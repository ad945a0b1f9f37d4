// Copyright 2026 The finmono Authors
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
#include <benchmark/benchmark.h>

#include "finmono/pipeline.hpp"

using namespace finmono;

static void BM_ScanAS(benchmark::State& state) {
  ScanBudget b;
  b.max_degree = static_cast<unsigned>(state.range(0));
  b.worker_count = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::scan(ASFamily{3, 2}, Criterion::Eigen, b, std::nullopt));
}
BENCHMARK(BM_ScanAS)->Args({3, 1})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ScanRankTwo(benchmark::State& state) {
  ScanBudget b;
  b.max_degree = 2;
  b.worker_count = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::scan(ASFamily{5, 3}, Criterion::Eigen, b, std::nullopt));
}
BENCHMARK(BM_ScanRankTwo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
