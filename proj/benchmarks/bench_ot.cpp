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

#include "polldrift/dist.hpp"
#include "polldrift/ot.hpp"
#include "polldrift/rng.hpp"

using namespace polldrift;

namespace {

EmpiricalDistribution draw(const DistributionSpec& d, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = d.sample(rng);
  return EmpiricalDistribution(std::move(v));
}

}  // namespace

static void BM_W1AgainstBetaCdf(benchmark::State& state) {
  const auto d = DistributionSpec::beta(2, 2);
  const auto e = draw(d, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w1_empirical_cdf(e, d));
  }
}
BENCHMARK(BM_W1AgainstBetaCdf)->Arg(50)->Arg(200);

static void BM_W1AgainstNormalCdf(benchmark::State& state) {
  const auto d = DistributionSpec::normal(0, 1);
  const auto e = draw(d, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w1_empirical_cdf(e, d));
  }
}
BENCHMARK(BM_W1AgainstNormalCdf)->Arg(50)->Arg(200);

static void BM_W1EmpiricalPair(benchmark::State& state) {
  const auto d = DistributionSpec::beta(2, 2);
  const auto a = draw(d, 500, 3);
  const auto b = draw(d, 499, 4);  // unequal sizes take the merged-grid path
  for (auto _ : state) {
    benchmark::DoNotOptimize(w1_empirical_empirical(a, b));
  }
}
BENCHMARK(BM_W1EmpiricalPair);

static void BM_KsTwoSample(benchmark::State& state) {
  const auto d = DistributionSpec::normal(0, 1);
  const auto a = draw(d, 500, 3);
  const auto b = draw(d, 500, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ks_two_sample(a, b));
  }
}
BENCHMARK(BM_KsTwoSample);

static void BM_BetaQuantile(benchmark::State& state) {
  const auto d = DistributionSpec::beta(2, 5);
  double q = 0.0;
  for (auto _ : state) {
    q += 1e-6;
    if (q >= 1.0) q = 1e-6;
    benchmark::DoNotOptimize(d.quantile(q));
  }
}
BENCHMARK(BM_BetaQuantile);
