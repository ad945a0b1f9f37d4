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

#include "finmono/frobcheck.hpp"

using namespace finmono;

static void BM_TraceAS(benchmark::State& state) {
  const ASFamily fam{static_cast<std::uint32_t>(state.range(0)), 4};
  const unsigned m = static_cast<unsigned>(state.range(1));
  const auto L = sheaftrace::point_level(fam, m);
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sheaftrace::trace_as(fam, m, FFElem{L, t}));
    t = (t + 1) % L->size();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(L->size()));
}
BENCHMARK(BM_TraceAS)->Args({3, 2})->Args({3, 4})->Args({5, 3})->Args({7, 3});

static void BM_TraceHyp(benchmark::State& state) {
  const HypFamily fam{7, 1, 3, {1, 2}, {0}};
  const unsigned s = static_cast<unsigned>(state.range(0));
  const auto L = sheaftrace::point_level(fam, s);
  std::uint64_t t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sheaftrace::trace_hyp(fam, s, FFElem{L, t}));
    t = t % (L->size() - 1) + 1;
  }
}
BENCHMARK(BM_TraceHyp)->Arg(1)->Arg(2);

static void BM_FrobeniusCharPoly(benchmark::State& state) {
  const SheafFamily fam = ASFamily{5, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(frobcheck::frobenius_char_poly(fam, 1, 1));
}
BENCHMARK(BM_FrobeniusCharPoly)->DenseRange(2, 4);

static void BM_CycMul(benchmark::State& state) {
  const unsigned c = static_cast<unsigned>(state.range(0));
  const CycNum a = CycNum::zeta_power(c, 1) + CycNum::from_rational(c, BigRat(3, 7));
  const CycNum b = CycNum::zeta_power(c, 2) - CycNum::from_rational(c, BigRat(5, 2));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CycMul)->Arg(12)->Arg(60)->Arg(105);

BENCHMARK_MAIN();
