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

#ifndef POLLDRIFT_SAMPLING_HPP_
#define POLLDRIFT_SAMPLING_HPP_

#include <optional>
#include <string_view>

#include "polldrift/graph.hpp"

namespace polldrift {

enum class Strategy { IndependentSet, Cluster, Random };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

/// A chosen respondent set plus the subgraph their interactions run on.
///
/// respondent_ids are population vertex ids, sorted ascending; subgraph
/// vertex i corresponds to respondent_ids[i].  For the cluster strategy the
/// subgraph keeps only within-cluster edges (respondents in different
/// selected clusters do not interact), and cluster_assignment holds the
/// per-respondent community label.
struct SampleDesign {
  Strategy strategy = Strategy::Random;
  std::vector<VertexId> respondent_ids;
  Graph subgraph;
  std::optional<std::vector<std::uint32_t>> cluster_assignment;
  std::optional<std::size_t> clusters_selected;
};

/// Greedy independent-set sample: repeatedly pick a uniformly random
/// surviving vertex, keep it, and delete it together with its whole
/// neighborhood, until the residual graph is empty or another pick would
/// exceed size_limit.  Edge direction is ignored for the deletion
/// neighborhood.  The returned subgraph is edgeless by construction.
SampleDesign independent_set_sample(const Graph& g, std::size_t size_limit,
                                    std::uint64_t seed);

/// Modularity communities via the Leiden scheme (queue-based local moving,
/// refinement into connected sub-communities, aggregation; iterated until
/// stable).  Every returned cluster is internally connected; labels are
/// dense, 0-based, in order of first appearance by vertex id.  Directed
/// graphs are symmetrized first.  Deterministic given seed.
std::vector<std::uint32_t> detect_communities(const Graph& g, std::uint64_t seed);

/// Newman modularity of a labeling (undirected view).
double modularity(const Graph& g, std::span<const std::uint32_t> labels);

/// Shuffles the detected communities and takes whole clusters until the next
/// one would overshoot the budget, then fills up with a uniform subset of
/// that cluster; always hits the budget exactly.  A partial cluster counts
/// as selected.
SampleDesign cluster_sample(const Graph& g, std::size_t budget, std::uint64_t seed);

/// Same selection rule over an already-detected partition (labels as from
/// detect_communities); avoids re-detection when many samples are drawn from
/// one fixed population graph.
SampleDesign cluster_sample(const Graph& g, std::span<const std::uint32_t> labels,
                            std::size_t budget, std::uint64_t seed);

/// Uniform sample of `budget` respondents without replacement, with the full
/// induced subgraph attached.
SampleDesign random_sample(const Graph& g, std::size_t budget, std::uint64_t seed);

/// Upper bound on the maximum independent set size: |V| - |E|/max_degree
/// (|V| for edgeless graphs, where the bound is trivial).
double mis_upper_bound(const Graph& g);

}  // namespace polldrift

#endif  // POLLDRIFT_SAMPLING_HPP_
