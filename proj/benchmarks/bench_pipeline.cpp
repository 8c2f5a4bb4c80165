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

#include "polldrift/bounds.hpp"
#include "polldrift/harness.hpp"
#include "polldrift/netgen.hpp"

using namespace polldrift;

static void BM_ExperimentReplication(benchmark::State& state) {
  // One full replication (graph + sample + beliefs + update + W1) per
  // strategy at the densest sweep point.
  ExperimentConfig cfg;
  cfg.graph_source = GraphSourceER{500, static_cast<double>(state.range(0)) / 1000.0};
  cfg.replications = 1;
  cfg.bound_reps = 0;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    cfg.master_seed = seed++;
    benchmark::DoNotOptimize(run_experiment(cfg));
  }
}
BENCHMARK(BM_ExperimentReplication)->Arg(2)->Arg(460)->Unit(benchmark::kMillisecond);

static void BM_RandomBoundNormal(benchmark::State& state) {
  const Graph g = erdos_renyi(500, 0.045, 5);
  const SampleDesign d = random_sample(g, 50, 7);
  const auto family = DistributionSpec::normal(0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_bound(d.subgraph, family));
  }
}
BENCHMARK(BM_RandomBoundNormal)->Unit(benchmark::kMillisecond);

static void BM_RandomBoundBetaMc(benchmark::State& state) {
  const Graph g = erdos_renyi(500, 0.045, 5);
  const SampleDesign d = random_sample(g, 50, 7);
  const auto family = DistributionSpec::beta(2, 2);
  BoundOptions opts;
  opts.mc_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_bound(d.subgraph, family, opts));
  }
}
BENCHMARK(BM_RandomBoundBetaMc)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
