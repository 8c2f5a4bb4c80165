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

#include "polldrift/dynamics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace polldrift {

std::string_view to_string(InteractionRule r) {
  return r == InteractionRule::Average ? "average" : "weighted";
}

InteractionRule interaction_rule_from_string(std::string_view name) {
  if (name == "average") return InteractionRule::Average;
  if (name == "weighted") return InteractionRule::Weighted;
  throw std::invalid_argument("unknown interaction rule '" + std::string(name) + "'");
}

std::span<const VertexId> InteractionMatrix::row_columns(std::size_t i) const {
  if (i >= rows()) throw std::invalid_argument("InteractionMatrix: row out of range");
  return {columns_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
}

std::span<const double> InteractionMatrix::row_weights(std::size_t i) const {
  if (i >= rows()) throw std::invalid_argument("InteractionMatrix: row out of range");
  return {weights_.data() + row_offsets_[i], row_offsets_[i + 1] - row_offsets_[i]};
}

double InteractionMatrix::row_sum_squares(std::size_t i) const {
  double acc = 0.0;
  for (double w : row_weights(i)) acc += w * w;
  return acc;
}

BeliefState init_beliefs(const DistributionSpec& dist, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("init_beliefs: n must be >= 1");
  Rng rng(seed);
  BeliefState s;
  s.values.resize(n);
  for (auto& v : s.values) v = dist.sample(rng);
  return s;
}

InteractionMatrix build_interaction_matrix(const Graph& subgraph, InteractionRule rule,
                                           std::uint64_t seed, SelfWeightMode self_mode) {
  const std::size_t n = subgraph.vertex_count();
  InteractionMatrix m;
  m.rule_ = rule;
  m.row_offsets_.reserve(n + 1);

  Rng rng(seed);
  std::vector<double> raw;
  for (VertexId i = 0; i < n; ++i) {
    const auto nb = subgraph.neighbors(i);

    // Row support: {i} union N_i, columns ascending (self spliced in place).
    const auto self_at = static_cast<std::size_t>(
        std::lower_bound(nb.begin(), nb.end(), i) - nb.begin());
    const std::size_t k = nb.size() + 1;
    for (std::size_t j = 0; j < k; ++j) {
      m.columns_.push_back(j == self_at ? i : nb[j < self_at ? j : j - 1]);
    }

    if (rule == InteractionRule::Average) {
      const double w = 1.0 / static_cast<double>(k);
      m.weights_.insert(m.weights_.end(), k, w);
    } else {
      raw.assign(k, 0.0);
      double sum = 0.0;
      do {
        sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          const bool is_self = j == self_at;
          if (is_self && (self_mode == SelfWeightMode::FixedZero && k > 1)) {
            raw[j] = 0.0;
          } else {
            raw[j] = is_self && k == 1 ? 1.0 : rng.uniform01();
          }
          sum += raw[j];
        }
      } while (sum == 0.0);  // probability-zero guard: redraw an all-zero row
      for (std::size_t j = 0; j < k; ++j) m.weights_.push_back(raw[j] / sum);
    }
    m.row_offsets_.push_back(m.columns_.size());
  }
  return m;
}

InteractionMatrix interaction_matrix_from_raw(
    const Graph& subgraph,
    const std::function<double(std::size_t row, VertexId column)>& raw) {
  const std::size_t n = subgraph.vertex_count();
  InteractionMatrix m;
  m.rule_ = InteractionRule::Weighted;
  for (VertexId i = 0; i < n; ++i) {
    const auto nb = subgraph.neighbors(i);
    const auto self_at = static_cast<std::size_t>(
        std::lower_bound(nb.begin(), nb.end(), i) - nb.begin());
    const std::size_t k = nb.size() + 1;
    double sum = 0.0;
    const std::size_t row_begin = m.columns_.size();
    for (std::size_t j = 0; j < k; ++j) {
      const VertexId col = j == self_at ? i : nb[j < self_at ? j : j - 1];
      const double w = raw(i, col);
      if (w < 0.0) throw std::invalid_argument("interaction_matrix_from_raw: negative raw");
      m.columns_.push_back(col);
      m.weights_.push_back(w);
      sum += w;
    }
    if (sum <= 0.0) {
      throw std::invalid_argument("interaction_matrix_from_raw: row sum must be positive");
    }
    for (std::size_t j = row_begin; j < m.weights_.size(); ++j) m.weights_[j] /= sum;
    m.row_offsets_.push_back(m.columns_.size());
  }
  return m;
}

BeliefState update_beliefs(const InteractionMatrix& w, const BeliefState& x) {
  const std::size_t n = w.rows();
  if (x.values.size() != n) {
    throw std::invalid_argument("update_beliefs: dimension mismatch (" +
                                std::to_string(x.values.size()) + " beliefs, " +
                                std::to_string(n) + " rows)");
  }
  BeliefState out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = w.row_columns(i);
    const auto wts = w.row_weights(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < cols.size(); ++j) acc += wts[j] * x.values[cols[j]];
    out.values[i] = acc;
  }
  return out;
}

}  // namespace polldrift
