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

#ifndef POLLDRIFT_DYNAMICS_HPP_
#define POLLDRIFT_DYNAMICS_HPP_

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "polldrift/dist.hpp"
#include "polldrift/graph.hpp"

namespace polldrift {

/// One scalar belief per sampled respondent, index-aligned with
/// SampleDesign::respondent_ids.
struct BeliefState {
  std::vector<double> values;
};

enum class InteractionRule { Average, Weighted };

std::string_view to_string(InteractionRule r);
InteractionRule interaction_rule_from_string(std::string_view name);

/// Whether the weighted rule draws a random weight for the self term too, or
/// pins it to zero (isolated respondents keep a_ii = 1 either way).
enum class SelfWeightMode { Drawn, FixedZero };

/// Row-stochastic sparse interaction weights over a sampled subgraph.  Row i
/// has support {i} union N_i (out-neighbors when directed), column indices
/// sorted ascending, and sums to 1 within 1e-12.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  std::size_t rows() const { return row_offsets_.empty() ? 0 : row_offsets_.size() - 1; }
  InteractionRule rule() const { return rule_; }

  std::span<const VertexId> row_columns(std::size_t i) const;
  std::span<const double> row_weights(std::size_t i) const;

  /// sum_j a_ij^2 for row i (drives the spread of the row's post-update law).
  double row_sum_squares(std::size_t i) const;

 private:
  friend InteractionMatrix build_interaction_matrix(const Graph&, InteractionRule,
                                                    std::uint64_t, SelfWeightMode);
  friend InteractionMatrix interaction_matrix_from_raw(
      const Graph&, const std::function<double(std::size_t, VertexId)>&);
  InteractionRule rule_ = InteractionRule::Average;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<VertexId> columns_;
  std::vector<double> weights_;
};

/// n i.i.d. draws from dist.
BeliefState init_beliefs(const DistributionSpec& dist, std::size_t n, std::uint64_t seed);

/// Average rule: a_ij = 1/(|N_i|+1) over self plus (out-)neighbors.
/// Weighted rule: independent Uniform(0,1) raw weights per row entry,
/// normalized to sum 1 (self entry per `self_mode`).
InteractionMatrix build_interaction_matrix(const Graph& subgraph, InteractionRule rule,
                                           std::uint64_t seed,
                                           SelfWeightMode self_mode = SelfWeightMode::Drawn);

/// Row-normalizes caller-supplied raw weights onto the support {i} union N_i
/// (entry order = ascending column id).  This is the normalization step of
/// the weighted rule with the draws made explicit, for sensitivity studies
/// and tests.  Raws must be non-negative with a positive row sum.
InteractionMatrix interaction_matrix_from_raw(
    const Graph& subgraph,
    const std::function<double(std::size_t row, VertexId column)>& raw);

/// One synchronous step x' = A x.
BeliefState update_beliefs(const InteractionMatrix& w, const BeliefState& x);

}  // namespace polldrift

#endif  // POLLDRIFT_DYNAMICS_HPP_
