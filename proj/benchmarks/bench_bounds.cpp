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

#include "finmono/bounds.hpp"

using namespace finmono;

static void BM_ArtinSchreierReport(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bounds::example_bounds_artin_schreier(2, n));
}
BENCHMARK(BM_ArtinSchreierReport)->DenseRange(3, 8);

static void BM_MLcm(benchmark::State& state) {
  const unsigned r = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bounds::m_lcm(60, r));
}
BENCHMARK(BM_MLcm)->RangeMultiplier(2)->Range(1, 64);

static void BM_AdamsEvenRank(benchmark::State& state) {
  const BigInt M = bounds::m_lcm(1, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bounds::adams_even_rank(static_cast<unsigned>(state.range(0)), M));
}
BENCHMARK(BM_AdamsEvenRank)->DenseRange(2, 10, 2);

static void BM_EigenGeneral(benchmark::State& state) {
  GeneralParams g;
  g.r = static_cast<unsigned>(state.range(0));
  g.ambient_n = 2;
  g.C = 3;
  Limits lim;
  lim.max_bound_bits = 1u << 20;
  for (auto _ : state) benchmark::DoNotOptimize(bounds::n_eigen_general(g, lim));
}
BENCHMARK(BM_EigenGeneral)->DenseRange(1, 3);

BENCHMARK_MAIN();
