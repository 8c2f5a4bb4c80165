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

#include "polldrift/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polldrift/rng.hpp"

namespace polldrift {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::IndependentSet:
      return "independent";
    case Strategy::Cluster:
      return "cluster";
    case Strategy::Random:
      return "random";
  }
  return "?";
}

Strategy strategy_from_string(std::string_view name) {
  if (name == "independent" || name == "independent_set") return Strategy::IndependentSet;
  if (name == "cluster") return Strategy::Cluster;
  if (name == "random") return Strategy::Random;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

namespace {

void shuffle(std::vector<std::uint32_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

/// Uniform subset of size k from ids (order not meaningful).
std::vector<VertexId> sample_without_replacement(std::span<const VertexId> ids, std::size_t k,
                                                 Rng& rng) {
  std::vector<VertexId> pool(ids.begin(), ids.end());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

SampleDesign independent_set_sample(const Graph& g, std::size_t size_limit,
                                    std::uint64_t seed) {
  if (size_limit < 1) throw std::invalid_argument("independent_set_sample: size_limit >= 1");
  const Graph und = g.as_undirected();
  const std::size_t n = und.vertex_count();

  std::vector<VertexId> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  constexpr std::size_t kGone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  auto erase = [&](VertexId v) {
    const std::size_t p = pos[v];
    if (p == kGone) return;
    const VertexId last = alive.back();
    alive[p] = last;
    pos[last] = p;
    alive.pop_back();
    pos[v] = kGone;
  };

  Rng rng(seed);
  std::vector<VertexId> picked;
  while (!alive.empty() && picked.size() < size_limit) {
    const VertexId v = alive[rng.below(alive.size())];
    picked.push_back(v);
    erase(v);
    for (VertexId u : und.neighbors(v)) erase(u);
  }
  std::sort(picked.begin(), picked.end());

  SampleDesign d;
  d.strategy = Strategy::IndependentSet;
  d.subgraph = g.induced_subgraph(picked).graph;
  d.respondent_ids = std::move(picked);
  return d;
}

double mis_upper_bound(const Graph& g) {
  const Graph und = g.as_undirected();
  const double n = static_cast<double>(und.vertex_count());
  if (und.edge_count() == 0) return n;
  return n - static_cast<double>(und.edge_count()) / static_cast<double>(und.max_degree());
}

// ---------------------------------------------------------------------------
// Leiden-style community detection.
//
// The usual three phases on a shrinking weighted graph: fast (queue-based)
// local moving of vertices between communities, refinement of each community
// into connected sub-communities, then aggregation of the refined partition
// with the community assignment carried over as the starting point of the
// next level.  Gains are the standard modularity gains at resolution 1;
// merges in the refinement phase pick the best strictly-positive gain, which
// keeps the procedure deterministic for a given seed.
// ---------------------------------------------------------------------------

namespace {

struct WeightedGraph {
  // Neighbor lists exclude self; self_loop keeps aggregated internal weight.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> self_loop;
  std::vector<double> strength;  // sum of incident weights + 2*self_loop
  double total_2m = 0.0;

  std::size_t size() const { return adj.size(); }
};

WeightedGraph base_weighted(const Graph& g) {
  WeightedGraph w;
  const std::size_t n = g.vertex_count();
  w.adj.resize(n);
  w.self_loop.assign(n, 0.0);
  w.strength.assign(n, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    w.adj[v].reserve(nb.size());
    for (VertexId u : nb) w.adj[v].emplace_back(u, 1.0);
    w.strength[v] = static_cast<double>(nb.size());
    w.total_2m += w.strength[v];
  }
  return w;
}

// One pass of queue-based local moving; returns whether anything moved.
bool local_move(const WeightedGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
  const std::size_t n = g.size();
  std::vector<double> sigma_tot(n, 0.0);
  std::vector<std::uint32_t> comm_count(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    sigma_tot[comm[v]] += g.strength[v];
    ++comm_count[comm[v]];
  }
  std::vector<std::uint32_t> free_ids;
  for (std::uint32_t c = 0; c < n; ++c) {
    if (comm_count[c] == 0) free_ids.push_back(c);
  }

  std::vector<std::uint32_t> queue(n);
  std::iota(queue.begin(), queue.end(), 0);
  shuffle(queue, rng);
  std::vector<char> queued(n, 1);
  std::size_t head = 0;

  std::vector<double> k_to(n, 0.0);  // scratch: weight from v into community c
  std::vector<std::uint32_t> touched;
  constexpr std::uint32_t kIsolate = static_cast<std::uint32_t>(-1);
  bool any_moved = false;

  while (head < queue.size()) {
    const std::uint32_t v = queue[head++];
    queued[v] = 0;
    const std::uint32_t old_c = comm[v];
    const double s_v = g.strength[v];
    sigma_tot[old_c] -= s_v;
    --comm_count[old_c];
    if (comm_count[old_c] == 0) free_ids.push_back(old_c);

    touched.clear();
    for (const auto& [u, w] : g.adj[v]) {
      const std::uint32_t c = comm[u];
      if (k_to[c] == 0.0) touched.push_back(c);
      k_to[c] += w;
    }

    const double inv_2m = 1.0 / g.total_2m;
    double best_score = k_to[old_c] - s_v * sigma_tot[old_c] * inv_2m;
    std::uint32_t best_c = old_c;
    if (0.0 > best_score + 1e-12) {
      best_score = 0.0;  // going solo beats a now-hostile community
      best_c = kIsolate;
    }
    for (const std::uint32_t c : touched) {
      if (c == old_c) continue;
      const double score = k_to[c] - s_v * sigma_tot[c] * inv_2m;
      if (score > best_score + 1e-12) {
        best_score = score;
        best_c = c;
      }
    }
    for (const std::uint32_t c : touched) k_to[c] = 0.0;

    if (best_c == kIsolate) {
      while (comm_count[free_ids.back()] != 0) free_ids.pop_back();
      best_c = free_ids.back();
      free_ids.pop_back();
    }
    comm[v] = best_c;
    sigma_tot[best_c] += s_v;
    ++comm_count[best_c];
    if (best_c != old_c) {
      any_moved = true;
      for (const auto& [u, w] : g.adj[v]) {
        (void)w;
        if (comm[u] != best_c && !queued[u]) {
          queued[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  return any_moved;
}

// Splits each community into connected sub-communities by greedily merging
// singletons into the best positively-scoring refined community within the
// same parent community.
std::vector<std::uint32_t> refine(const WeightedGraph& g,
                                  const std::vector<std::uint32_t>& comm, Rng& rng) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> refined(n);
  std::iota(refined.begin(), refined.end(), 0);
  std::vector<double> sigma_ref(g.strength);
  std::vector<std::size_t> ref_size(n, 1);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<double> k_to(n, 0.0);
  std::vector<std::uint32_t> touched;
  const double inv_2m = 1.0 / g.total_2m;

  for (const std::uint32_t v : order) {
    if (ref_size[refined[v]] > 1) continue;  // only singletons merge
    touched.clear();
    for (const auto& [u, w] : g.adj[v]) {
      if (comm[u] != comm[v]) continue;
      const std::uint32_t r = refined[u];
      if (r == refined[v]) continue;
      if (k_to[r] == 0.0) touched.push_back(r);
      k_to[r] += w;
    }
    double best_score = 1e-12;  // require strictly positive gain
    std::uint32_t best_r = refined[v];
    for (const std::uint32_t r : touched) {
      const double score = k_to[r] - g.strength[v] * sigma_ref[r] * inv_2m;
      if (score > best_score) {
        best_score = score;
        best_r = r;
      }
    }
    for (const std::uint32_t r : touched) k_to[r] = 0.0;
    if (best_r != refined[v]) {
      sigma_ref[refined[v]] -= g.strength[v];
      --ref_size[refined[v]];
      refined[v] = best_r;
      sigma_ref[best_r] += g.strength[v];
      ++ref_size[best_r];
    }
  }
  return refined;
}

std::uint32_t renumber(std::vector<std::uint32_t>& labels) {
  constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
  std::uint32_t max_label = 0;
  for (const auto l : labels) max_label = std::max(max_label, l);
  std::vector<std::uint32_t> remap(static_cast<std::size_t>(max_label) + 1, kUnset);
  std::uint32_t next = 0;
  for (auto& l : labels) {
    if (remap[l] == kUnset) remap[l] = next++;
    l = remap[l];
  }
  return next;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& refined,
                        std::uint32_t n_refined) {
  WeightedGraph out;
  out.adj.resize(n_refined);
  out.self_loop.assign(n_refined, 0.0);
  out.strength.assign(n_refined, 0.0);
  out.total_2m = g.total_2m;

  std::vector<double> acc(n_refined, 0.0);
  std::vector<std::uint32_t> touched;
  // Gather per-meta adjacency by sweeping members grouped by label.
  std::vector<std::vector<std::uint32_t>> members(n_refined);
  for (std::uint32_t v = 0; v < g.size(); ++v) members[refined[v]].push_back(v);
  for (std::uint32_t meta = 0; meta < n_refined; ++meta) {
    touched.clear();
    double internal = 0.0;
    for (const std::uint32_t v : members[meta]) {
      internal += g.self_loop[v];
      for (const auto& [u, w] : g.adj[v]) {
        const std::uint32_t mu = refined[u];
        if (mu == meta) {
          internal += 0.5 * w;  // both endpoints sweep it once
        } else {
          if (acc[mu] == 0.0) touched.push_back(mu);
          acc[mu] += w;
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    out.adj[meta].reserve(touched.size());
    double s = 2.0 * internal;
    for (const std::uint32_t mu : touched) {
      out.adj[meta].emplace_back(mu, acc[mu]);
      s += acc[mu];
      acc[mu] = 0.0;
    }
    out.self_loop[meta] = internal;
    out.strength[meta] = s;
  }
  return out;
}

}  // namespace

double modularity(const Graph& g, std::span<const std::uint32_t> labels) {
  const Graph und = g.as_undirected();
  const std::size_t n = und.vertex_count();
  if (labels.size() != n) throw std::invalid_argument("modularity: label count != |V|");
  if (und.edge_count() == 0) return 0.0;
  const double m2 = 2.0 * static_cast<double>(und.edge_count());
  const std::uint32_t k = n == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> internal(k, 0.0), total(k, 0.0);
  for (VertexId v = 0; v < n; ++v) {
    total[labels[v]] += static_cast<double>(und.degree(v));
    for (VertexId u : und.neighbors(v)) {
      if (labels[u] == labels[v]) internal[labels[v]] += 1.0;
    }
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    q += internal[c] / m2 - (total[c] / m2) * (total[c] / m2);
  }
  return q;
}

std::vector<std::uint32_t> detect_communities(const Graph& g, std::uint64_t seed) {
  const Graph und = g.as_undirected();
  const std::size_t n = und.vertex_count();
  std::vector<std::uint32_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  if (und.edge_count() == 0) return labels;

  Rng rng(seed);
  WeightedGraph wg = base_weighted(und);
  std::vector<std::uint32_t> meta_of(n);
  std::iota(meta_of.begin(), meta_of.end(), 0);
  std::vector<std::uint32_t> comm(wg.size());
  std::iota(comm.begin(), comm.end(), 0);

  for (int level = 0; level < 64; ++level) {
    renumber(comm);
    const bool moved = local_move(wg, comm, rng);
    std::vector<std::uint32_t> refined = refine(wg, comm, rng);
    const std::uint32_t n_refined = renumber(refined);

    if (n_refined == wg.size()) break;  // nothing left to merge

    // Carry the community assignment down to the aggregated graph.
    std::vector<std::uint32_t> next_comm(n_refined, 0);
    for (std::uint32_t v = 0; v < wg.size(); ++v) next_comm[refined[v]] = comm[v];
    for (std::uint32_t v = 0; v < n; ++v) meta_of[v] = refined[meta_of[v]];
    wg = aggregate(wg, refined, n_refined);
    comm = std::move(next_comm);
    if (!moved && level > 0) break;
  }

  for (std::uint32_t v = 0; v < n; ++v) labels[v] = comm[meta_of[v]];

  // Safety: modularity moves can in principle strand a community across a
  // cut vertex; split any disconnected community into its components.
  {
    constexpr std::uint32_t kUnset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> out(n, kUnset);
    std::uint32_t next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
      if (out[s] != kUnset) continue;
      const std::uint32_t cluster = next++;
      out[s] = cluster;
      stack.push_back(s);
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (VertexId u : und.neighbors(v)) {
          if (out[u] == kUnset && labels[u] == labels[s]) {
            out[u] = cluster;
            stack.push_back(u);
          }
        }
      }
    }
    labels = std::move(out);
  }
  return labels;
}

SampleDesign cluster_sample(const Graph& g, std::size_t budget, std::uint64_t seed) {
  const std::vector<std::uint32_t> labels =
      detect_communities(g, derive_seed(seed, seed_stream::kCommunities));
  return cluster_sample(g, labels, budget, seed);
}

SampleDesign cluster_sample(const Graph& g, std::span<const std::uint32_t> labels,
                            std::size_t budget, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (budget < 1 || budget > n) {
    throw std::invalid_argument("cluster_sample: budget must be in [1, |V|]");
  }
  if (labels.size() != n) {
    throw std::invalid_argument("cluster_sample: label count != |V|");
  }
  Rng rng(seed);

  const std::uint32_t k = n == 0 ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<VertexId>> clusters(k);
  for (VertexId v = 0; v < n; ++v) clusters[labels[v]].push_back(v);

  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<std::pair<VertexId, std::uint32_t>> chosen;  // (vertex, label)
  chosen.reserve(budget);
  std::size_t remaining = budget;
  std::size_t selected = 0;
  for (const std::uint32_t c : order) {
    if (remaining == 0) break;
    const auto& cluster = clusters[c];
    ++selected;
    if (cluster.size() <= remaining) {
      for (const VertexId v : cluster) chosen.emplace_back(v, c);
      remaining -= cluster.size();
    } else {
      for (const VertexId v : sample_without_replacement(cluster, remaining, rng)) {
        chosen.emplace_back(v, c);
      }
      remaining = 0;
      break;
    }
  }
  std::sort(chosen.begin(), chosen.end());

  SampleDesign d;
  d.strategy = Strategy::Cluster;
  d.respondent_ids.reserve(chosen.size());
  std::vector<std::uint32_t> assignment;
  assignment.reserve(chosen.size());
  for (const auto& [v, c] : chosen) {
    d.respondent_ids.push_back(v);
    assignment.push_back(c);
  }

  // Induced subgraph minus cross-cluster edges: selected clusters never
  // interact with each other.
  Subgraph induced = g.induced_subgraph(d.respondent_ids);
  std::vector<Edge> kept;
  for (const auto& [u, v] : induced.graph.edges()) {
    if (assignment[u] == assignment[v]) kept.emplace_back(u, v);
  }
  d.subgraph = Graph(d.respondent_ids.size(), g.directed(), std::move(kept));
  d.cluster_assignment = std::move(assignment);
  d.clusters_selected = selected;
  return d;
}

SampleDesign random_sample(const Graph& g, std::size_t budget, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (budget < 1 || budget > n) {
    throw std::invalid_argument("random_sample: budget must be in [1, |V|]");
  }
  Rng rng(seed);
  std::vector<VertexId> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<VertexId> ids = sample_without_replacement(all, budget, rng);
  std::sort(ids.begin(), ids.end());

  SampleDesign d;
  d.strategy = Strategy::Random;
  d.subgraph = g.induced_subgraph(ids).graph;
  d.respondent_ids = std::move(ids);
  return d;
}

}  // namespace polldrift
