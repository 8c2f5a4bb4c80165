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

#include "polldrift/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace polldrift {

namespace {
constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
}

Graph::Graph(std::size_t n_vertices, bool directed, std::vector<Edge> edges)
    : directed_(directed) {
  std::vector<std::vector<VertexId>> adj(n_vertices);
  for (const auto& [u, v] : edges) {
    if (u >= n_vertices || v >= n_vertices) {
      throw std::invalid_argument("graph: edge endpoint " +
                                  std::to_string(std::max(u, v)) + " out of range (n=" +
                                  std::to_string(n_vertices) + ")");
    }
    if (u == v) {
      ++dropped_self_loops_;
      continue;
    }
    adj[u].push_back(v);
    if (!directed) adj[v].push_back(u);
  }

  offsets_.assign(n_vertices + 1, 0);
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_vertices; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    total += list.size();
    offsets_[v + 1] = total;
  }
  adjacency_.reserve(total);
  for (auto& list : adj) adjacency_.insert(adjacency_.end(), list.begin(), list.end());
  edge_count_ = directed ? total : total / 2;
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  if (v >= vertex_count()) {
    throw std::invalid_argument("graph: vertex id " + std::to_string(v) + " out of range");
  }
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
    best = std::max(best, offsets_[v + 1] - offsets_[v]);
  }
  return best;
}

double Graph::average_degree() const {
  const std::size_t n = vertex_count();
  if (n == 0) return 0.0;
  const double e = static_cast<double>(edge_count_);
  return directed_ ? e / static_cast<double>(n) : 2.0 * e / static_cast<double>(n);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Subgraph Graph::induced_subgraph(std::span<const VertexId> members) const {
  std::vector<VertexId> ids(members.begin(), members.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("induced_subgraph: duplicate vertex ids");
  }
  if (!ids.empty() && ids.back() >= vertex_count()) {
    throw std::invalid_argument("induced_subgraph: vertex id out of range");
  }

  std::vector<VertexId> new_id(vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < ids.size(); ++i) new_id[ids[i]] = static_cast<VertexId>(i);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (VertexId w : neighbors(ids[i])) {
      const VertexId j = new_id[w];
      if (j == kNoVertex) continue;
      if (!directed_ && j < i) continue;  // counted once from the lower endpoint
      edges.emplace_back(static_cast<VertexId>(i), j);
    }
  }
  return Subgraph{Graph(ids.size(), directed_, std::move(edges)), std::move(ids)};
}

std::uint64_t Graph::long_range_pair_count() const {
  const std::size_t n = vertex_count();
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t epoch = 0;
  std::uint64_t count = 0;
  for (VertexId r = 0; r < n; ++r) {
    ++epoch;
    mark[r] = epoch;
    for (VertexId u : neighbors(r)) {
      if (mark[u] != epoch) {
        mark[u] = epoch;
        ++count;
      }
      for (VertexId w : neighbors(u)) {
        if (mark[w] != epoch) {
          mark[w] = epoch;
          ++count;
        }
      }
    }
  }
  return count;
}

Graph Graph::as_undirected() const {
  if (!directed_) return *this;
  std::vector<Edge> list;
  list.reserve(edge_count_);
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (VertexId w : neighbors(v)) list.emplace_back(v, w);
  }
  return Graph(vertex_count(), false, std::move(list));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> list;
  list.reserve(edge_count_);
  for (VertexId v = 0; v < vertex_count(); ++v) {
    for (VertexId w : neighbors(v)) {
      if (directed_ || v < w) list.emplace_back(v, w);
    }
  }
  return list;
}

GraphStats Graph::stats() const {
  GraphStats s;
  const std::size_t n = vertex_count();
  s.avg_degree = average_degree();
  if (n == 0) return s;

  const Graph und = as_undirected();

  // Local clustering on the undirected view.
  {
    std::vector<std::uint32_t> mark(n, 0);
    std::uint32_t epoch = 0;
    double acc = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      const auto nb = und.neighbors(v);
      const std::size_t d = nb.size();
      if (d < 2) continue;
      ++epoch;
      for (VertexId u : nb) mark[u] = epoch;
      std::uint64_t links2 = 0;  // 2 * (#edges among neighbors)
      for (VertexId u : nb) {
        for (VertexId w : und.neighbors(u)) {
          if (mark[w] == epoch) ++links2;
        }
      }
      acc += static_cast<double>(links2) / (static_cast<double>(d) * (d - 1));
    }
    s.clustering_coefficient = acc / static_cast<double>(n);
  }

  // Giant weakly-connected component.
  std::vector<std::uint32_t> comp(n, 0);
  std::uint32_t n_comp = 0;
  {
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < n; ++v) {
      if (comp[v] != 0) continue;
      ++n_comp;
      comp[v] = n_comp;
      stack.push_back(v);
      while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        for (VertexId w : und.neighbors(u)) {
          if (comp[w] == 0) {
            comp[w] = n_comp;
            stack.push_back(w);
          }
        }
      }
    }
  }
  std::vector<std::size_t> comp_size(n_comp + 1, 0);
  for (VertexId v = 0; v < n; ++v) ++comp_size[comp[v]];
  std::uint32_t giant = 1;
  for (std::uint32_t c = 1; c <= n_comp; ++c) {
    if (comp_size[c] > comp_size[giant]) giant = c;
  }
  s.giant_component_size = n_comp == 0 ? 0 : comp_size[giant];

  // Mean shortest-path length over reachable ordered pairs in the giant
  // component, BFS from every member (orientation respected when directed).
  {
    std::vector<std::int32_t> dist(n, -1);
    std::vector<VertexId> queue(n);
    long double total = 0.0L;
    std::uint64_t pairs = 0;
    for (VertexId src = 0; src < n; ++src) {
      if (comp[src] != giant) continue;
      std::fill(dist.begin(), dist.end(), -1);
      std::size_t head = 0, tail = 0;
      dist[src] = 0;
      queue[tail++] = src;
      while (head < tail) {
        const VertexId u = queue[head++];
        for (VertexId w : neighbors(u)) {
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            queue[tail++] = w;
          }
        }
      }
      for (VertexId v = 0; v < n; ++v) {
        if (v != src && dist[v] > 0) {
          total += dist[v];
          ++pairs;
        }
      }
    }
    s.avg_path_length = pairs == 0 ? 0.0 : static_cast<double>(total / pairs);
  }
  return s;
}

}  // namespace polldrift
