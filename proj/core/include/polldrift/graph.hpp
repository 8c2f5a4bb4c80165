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

#ifndef POLLDRIFT_GRAPH_HPP_
#define POLLDRIFT_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace polldrift {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

struct GraphStats {
  double avg_degree = 0.0;
  double clustering_coefficient = 0.0;  // mean of local coefficients, deg<2 counts as 0
  double avg_path_length = 0.0;         // over connected pairs in the giant component
  std::size_t giant_component_size = 0;
};

struct Subgraph;  // below

/// Immutable population graph (CSR adjacency, neighbor lists sorted by id).
///
/// Undirected graphs store each edge in both endpoint lists; directed graphs
/// store out-neighbors.  Construction silently deduplicates parallel edges
/// and drops self-loops, keeping a counter of the drops.  Once built the
/// structure is read-only and safe to share across threads.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Endpoints must be < n_vertices.
  Graph(std::size_t n_vertices, bool directed, std::vector<Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edge_count_; }
  bool directed() const { return directed_; }
  std::size_t dropped_self_loops() const { return dropped_self_loops_; }

  /// Neighbor list of v (out-neighbors when directed), sorted ascending.
  std::span<const VertexId> neighbors(VertexId v) const;

  /// |adj(v)|; out-degree when directed.
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  std::size_t max_degree() const;

  /// 2|E|/|V| undirected, |E|/|V| directed (= mean out-degree). 0 on empty.
  double average_degree() const;

  bool has_edge(VertexId u, VertexId v) const;

  /// Subgraph induced by the vertex set `members` (duplicates rejected),
  /// re-indexed against sorted(members).  Keeps exactly the edges with both
  /// endpoints inside; preserves directedness.
  Subgraph induced_subgraph(std::span<const VertexId> members) const;

  /// Number of ordered vertex pairs (r,s), r != s, with s reachable from r
  /// in one or two hops (following edge orientation when directed), i.e. the
  /// count of nonzero off-diagonal entries of A + A^2.  Per-vertex two-hop
  /// BFS; no dense matrix products.
  std::uint64_t long_range_pair_count() const;

  /// Descriptive statistics. Path lengths follow edge orientation on
  /// directed graphs and are averaged over reachable ordered pairs within
  /// the largest weakly-connected component; clustering uses the undirected
  /// view.  O(V*E) — intended for one-off desk checks, not inner loops.
  GraphStats stats() const;

  /// Symmetrized copy (each directed edge becomes mutual). Returns *this
  /// unchanged for undirected graphs.
  Graph as_undirected() const;

  std::vector<Edge> edges() const;  // u < v once per edge when undirected

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adjacency_;
  std::size_t edge_count_ = 0;
  bool directed_ = false;
  std::size_t dropped_self_loops_ = 0;
};

/// Result of Graph::induced_subgraph: the re-indexed graph plus the map back
/// to the parent's ids (new vertex i is original_ids[i]; original_ids is
/// sorted, so the old->new map is the rank within it).
struct Subgraph {
  Graph graph;
  std::vector<VertexId> original_ids;
};

}  // namespace polldrift

#endif  // POLLDRIFT_GRAPH_HPP_
