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

#ifndef POLLDRIFT_BOUNDS_HPP_
#define POLLDRIFT_BOUNDS_HPP_

#include <cstdint>
#include <optional>

#include "polldrift/dist.hpp"
#include "polldrift/dynamics.hpp"
#include "polldrift/graph.hpp"

namespace polldrift {

// Analytic upper bounds on the expected W1 gap between the observed
// (post-update) belief ecdf and the true initial cdf, one evaluator per
// sampling/interaction setting, each returning its term breakdown.
//
// Conventions shared by all evaluators:
//  - Sample-mean laws F^r are exact Gaussians for Normal inputs and
//    Monte-Carlo ecdfs (mc_samples draws, seeded from mc_seed and r)
//    otherwise; r = 1 uses the exact initial law.
//  - Gaussian-surrogate q-q correlations use qq_grid quantile points and are
//    exactly 1 (terms vanish) for Normal inputs.
//  - The O(<d>)/sqrt(n) remainder is reported in its explicit proof-form
//    constant, sqrt((1 + 1/<d>) <d>^2 n)/n * integral sqrt(max_i v_i(t)) dt
//    with v_i = F^{d_i+1}(1 - F^{d_i+1}); it is 0 when <d> = 0.
//  - Integrals over analytic laws use adaptive Simpson to 1e-8 absolute on
//    the law's support window; integrals touching Monte-Carlo ecdfs use a
//    fixed composite grid, whose error is below the ecdfs' own ~1e-3 noise.

struct BoundOptions {
  std::size_t mc_samples = 1'000'000;         // F^r ecdf size (non-Normal families)
  std::size_t weighted_mc_samples = 100'000;  // per-row C_i ecdf size
  std::size_t qq_grid = 1000;
  std::uint64_t mc_seed = 0x51ABB1E5ULL;
};

/// No-interaction bound: (1/sqrt(n)) * integral sqrt(F(1-F)) dt.
double indep_bound(const DistributionSpec& d, std::size_t n);

struct CliqueBoundResult {
  double consensus_term = 0.0;          // sigma (1 - 1/sqrt(r))
  double sampling_term = 0.0;           // (1/sqrt(p)) int sqrt(F^r (1-F^r))
  double gaussian_gap_term = 0.0;       // sigma sqrt(2 (1-rho^{F,Ftilde}))
  double gaussian_gap_mean_term = 0.0;  // sigma sqrt((2/r)(1-rho^{F^r,Ftilde^r}))
  double total = 0.0;
};

/// p disjoint cliques of size r (n = p r), average rule.
CliqueBoundResult clique_bound(const DistributionSpec& d, std::size_t p, std::size_t r,
                               const BoundOptions& opts = {});

struct RandomBoundResult {
  double sampling_term = 0.0;           // (1/n) int sqrt(sum_i F^{d_i+1}(1-F^{d_i+1}))
  double consensus_term = 0.0;          // sigma (1 - (1/n) sum_i 1/sqrt(d_i+1))
  double gaussian_gap_term = 0.0;       // sigma sqrt(2(1-rho^{F,Ftilde}))
  double gaussian_gap_mean_term = 0.0;  // (sigma/n) sum_i sqrt(2(1-rho_i)/(d_i+1))
  double long_range_term = 0.0;         // proof-form constant (see above)
  double total = 0.0;
};

/// Uniform sample with the average rule, conditioned on the realized
/// (undirected) subgraph; degrees are taken inside the subgraph.
RandomBoundResult random_bound(const Graph& subgraph, const DistributionSpec& d,
                               const BoundOptions& opts = {});

/// Directed variant: out-degrees replace degrees and the mean out-degree
/// drives the long-range term. Requires subgraph.directed().
RandomBoundResult directed_bound(const Graph& subgraph, const DistributionSpec& d,
                                 const BoundOptions& opts = {});

struct WeightedBoundResult {
  double sampling_term = 0.0;      // (1/n) int sqrt(sum_i C_i(1-C_i))
  double gaussian_gap_term = 0.0;  // sigma sqrt(2(1-rho^{F,Ftilde}))
  double sigma_term = 0.0;         // + sigma
  double row_spread_term = 0.0;    // (sigma/n) sum_i sqrt(sum_j a_ij^2)(sqrt(2(1-rho_i)) - 1)
  double long_range_term = 0.0;
  double total = 0.0;
};

/// Weighted interaction rule on the realized subgraph; each row's
/// post-update law C_i (the a_ij-weighted mean of i.i.d. initial draws) is
/// exact for Normal inputs and Monte-Carlo otherwise, with the Gaussian
/// surrogate N(mu, sigma^2 sum_j a_ij^2).
WeightedBoundResult weighted_bound(const Graph& subgraph, const InteractionMatrix& w,
                                   const DistributionSpec& d, const BoundOptions& opts = {});

struct AssumptionCheck {
  bool holds = true;
  std::uint64_t lhs = 0;  // ordered pairs within graph distance 2
  double rhs = 0.0;       // 2 n (<d> + <d>^2)
  std::optional<double> claim1_prob;  // 1 - 2/(|V| p^2), if the generating p is known
};

/// Checks the long-range-connection budget on g; pass the generating
/// edge probability (when g is a G(n,p) draw) to also get the predicted
/// probability that the budget holds.  The prediction is reported raw; it is
/// vacuous (negative) when |V| p^2 < 2.
AssumptionCheck assumption_check(const Graph& g, std::optional<double> er_p = std::nullopt);

struct McBoundEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo expectation of the random-sampling bound over `reps`
/// independent uniform samples of n vertices from g (directed graphs use
/// the directed evaluator).  reps >= 2.
McBoundEstimate expected_bound_mc(const Graph& g, std::size_t n, const DistributionSpec& d,
                                  std::size_t reps, std::uint64_t seed,
                                  const BoundOptions& opts = {});

}  // namespace polldrift

#endif  // POLLDRIFT_BOUNDS_HPP_
