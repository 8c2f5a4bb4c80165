// Copyright 2026 The polldrift Authors.
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

#include <benchmark/benchmark.h>

#include "polldrift/netgen.hpp"
#include "polldrift/sampling.hpp"

using namespace polldrift;

static void BM_ErdosRenyi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double p = 0.046;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(erdos_renyi(n, p, seed++));
  }
}
BENCHMARK(BM_ErdosRenyi)->Arg(500)->Arg(2000);

static void BM_LongRangePairs(benchmark::State& state) {
  const Graph g = erdos_renyi(500, 0.211, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.long_range_pair_count());
  }
}
BENCHMARK(BM_LongRangePairs);

static void BM_Leiden(benchmark::State& state) {
  const Graph g = erdos_renyi(500, static_cast<double>(state.range(0)) / 1000.0, 7);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_communities(g, seed++));
  }
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_Leiden)->Arg(45)->Arg(460);

static void BM_IndependentSetSample(benchmark::State& state) {
  const Graph g = erdos_renyi(500, 0.046, 7);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(independent_set_sample(g, 50, seed++));
  }
}
BENCHMARK(BM_IndependentSetSample);
