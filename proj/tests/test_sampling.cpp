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

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "polldrift/netgen.hpp"
#include "polldrift/rng.hpp"
#include "polldrift/sampling.hpp"

using namespace polldrift;

namespace {

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u + 1 < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, false, std::move(edges));
}

Graph disjoint_cliques(std::size_t count, std::size_t size) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < count; ++c) {
    const auto base = static_cast<VertexId>(c * size);
    for (VertexId u = 0; u + 1 < size; ++u) {
      for (VertexId v = u + 1; v < size; ++v) {
        edges.emplace_back(base + u, base + v);
      }
    }
  }
  return Graph(count * size, false, std::move(edges));
}

bool is_independent(const Graph& g, const std::vector<VertexId>& ids) {
  const Graph und = g.as_undirected();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (und.has_edge(ids[i], ids[j])) return false;
    }
  }
  return true;
}

bool is_maximal_independent(const Graph& g, const std::vector<VertexId>& ids) {
  const Graph und = g.as_undirected();
  std::set<VertexId> in(ids.begin(), ids.end());
  for (VertexId v = 0; v < und.vertex_count(); ++v) {
    if (in.count(v)) continue;
    bool adjacent = false;
    for (VertexId u : und.neighbors(v)) {
      if (in.count(u)) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("independent set on extreme graphs") {
    CHECK(independent_set_sample(complete_graph(8), 5, 1).respondent_ids.size() == 1);
    CHECK(independent_set_sample(Graph(10, false, {}), 4, 1).respondent_ids.size() == 4);
  }

  TEST_CASE("independent set on a path picks {1} or {0,2}") {
    const Graph p(3, false, {{0, 1}, {1, 2}});
    bool saw_middle = false, saw_ends = false;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto ids = independent_set_sample(p, 10, seed).respondent_ids;
      if (ids == std::vector<VertexId>{1}) saw_middle = true;
      if (ids == std::vector<VertexId>{0, 2}) saw_ends = true;
      CHECK(is_maximal_independent(p, ids));
    }
    CHECK(saw_middle);
    CHECK(saw_ends);
  }

  TEST_CASE("independent set is edgeless and respects the degree-based size bound") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const Graph g = erdos_renyi(2 + seed % 30, 0.25, 7000 + seed);
      const auto d = independent_set_sample(g, g.vertex_count(), seed);
      CHECK(d.subgraph.edge_count() == 0);
      CHECK(is_independent(g, d.respondent_ids));
      CHECK(static_cast<double>(d.respondent_ids.size()) <= mis_upper_bound(g));
    }
  }

  TEST_CASE("size limit caps the sample") {
    const Graph g(10, false, {});
    for (std::size_t cap : {1u, 3u, 9u}) {
      CHECK(independent_set_sample(g, cap, 3).respondent_ids.size() == cap);
    }
  }

  TEST_CASE("deletion neighborhood ignores direction") {
    // Directed star: center 0 points at every leaf.  Whichever vertex is
    // picked first, the sample never contains both the center and a leaf.
    const Graph star(6, true, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto ids = independent_set_sample(star, 6, seed).respondent_ids;
      const bool has_center = std::find(ids.begin(), ids.end(), 0u) != ids.end();
      if (has_center) CHECK(ids.size() == 1);
    }
  }

  TEST_CASE("mis upper bound") {
    CHECK(mis_upper_bound(complete_graph(6)) == doctest::Approx(3.0));
    const Graph star(5, false, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(mis_upper_bound(star) == doctest::Approx(4.0));
    CHECK(oracle::brute_force_mis(star) == 4);
    const Graph p(3, false, {{0, 1}, {1, 2}});
    CHECK(mis_upper_bound(p) == doctest::Approx(2.0));
    CHECK(oracle::brute_force_mis(p) == 2);
    CHECK(mis_upper_bound(Graph(7, false, {})) == doctest::Approx(7.0));
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const Graph g = erdos_renyi(10, 0.3, 100 + seed);
      CHECK(static_cast<double>(oracle::brute_force_mis(g)) <= mis_upper_bound(g) + 1e-12);
    }
  }

  TEST_CASE("communities: two disjoint triangles") {
    const Graph g(6, false, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    const auto labels = detect_communities(g, 42);
    CHECK(labels[0] == labels[1]);
    CHECK(labels[1] == labels[2]);
    CHECK(labels[3] == labels[4]);
    CHECK(labels[4] == labels[5]);
    CHECK(labels[0] != labels[3]);
    // The component split is the global modularity maximum over all 203
    // partitions of 6 vertices.
    std::vector<std::uint32_t> best;
    const double best_q = oracle::best_partition_modularity(g, &best);
    CHECK(modularity(g, labels) == doctest::Approx(best_q).epsilon(1e-12));
  }

  TEST_CASE("communities: complete graph collapses to one cluster") {
    const Graph k6 = complete_graph(6);
    const auto labels = detect_communities(k6, 1);
    CHECK(*std::max_element(labels.begin(), labels.end()) == 0);
    // Any split has negative modularity.
    double best_nontrivial = -1.0;
    oracle::for_each_partition(6, [&](const std::vector<std::uint32_t>& part) {
      if (*std::max_element(part.begin(), part.end()) == 0) return;
      best_nontrivial = std::max(best_nontrivial, oracle::partition_modularity(k6, part));
    });
    CHECK(best_nontrivial < 0.0);
  }

  TEST_CASE("communities: empty graph is all singletons") {
    const auto labels = detect_communities(Graph(5, false, {}), 9);
    const std::set<std::uint32_t> distinct(labels.begin(), labels.end());
    CHECK(distinct.size() == 5);
  }

  TEST_CASE("communities: ring of cliques") {
    // Four K5s joined in a ring by single edges; the planted split is the
    // textbook answer.
    std::vector<Edge> edges;
    for (int c = 0; c < 4; ++c) {
      const auto base = static_cast<VertexId>(5 * c);
      for (VertexId u = 0; u < 5; ++u) {
        for (VertexId v = u + 1; v < 5; ++v) edges.emplace_back(base + u, base + v);
      }
    }
    for (int c = 0; c < 4; ++c) {
      edges.emplace_back(static_cast<VertexId>(5 * c),
                         static_cast<VertexId>((5 * (c + 1) + 1) % 20));
    }
    const Graph g(20, false, std::move(edges));
    const auto labels = detect_communities(g, 3);
    const std::set<std::uint32_t> distinct(labels.begin(), labels.end());
    CHECK(distinct.size() == 4);
    for (int c = 0; c < 4; ++c) {
      for (int v = 1; v < 5; ++v) CHECK(labels[5 * c + v] == labels[5 * c]);
    }
  }

  TEST_CASE("communities are deterministic given the seed and internally connected") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Graph g = erdos_renyi(40, 0.12, 8000 + seed);
      const auto a = detect_communities(g, seed);
      const auto b = detect_communities(g, seed);
      CHECK(a == b);
      const std::uint32_t k = *std::max_element(a.begin(), a.end()) + 1;
      // Internal connectivity: within a cluster, everyone is reachable via
      // same-cluster vertices.
      for (std::uint32_t c = 0; c < k; ++c) {
        std::vector<VertexId> members;
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
          if (a[v] == c) members.push_back(v);
        }
        REQUIRE(!members.empty());
        std::set<VertexId> seen{members[0]};
        std::vector<VertexId> stack{members[0]};
        while (!stack.empty()) {
          const VertexId v = stack.back();
          stack.pop_back();
          for (VertexId u : g.neighbors(v)) {
            if (a[u] == c && !seen.count(u)) {
              seen.insert(u);
              stack.push_back(u);
            }
          }
        }
        CHECK(seen.size() == members.size());
      }
    }
  }

  TEST_CASE("modularity agrees with the hand-rolled oracle") {
    Rng rng(21);
    for (int inst = 0; inst < 30; ++inst) {
      const Graph g = erdos_renyi(12, 0.3, 600 + inst);
      std::vector<std::uint32_t> labels(12);
      for (auto& l : labels) l = static_cast<std::uint32_t>(rng.below(4));
      CHECK(modularity(g, labels) ==
            doctest::Approx(oracle::partition_modularity(g, labels)).epsilon(1e-10));
    }
  }

  TEST_CASE("cluster sample fills the budget with whole then partial clusters") {
    const Graph five_k2 = disjoint_cliques(5, 2);
    SUBCASE("two full cliques") {
      const auto d = cluster_sample(five_k2, 4, 17);
      CHECK(d.respondent_ids.size() == 4);
      CHECK(d.clusters_selected == 2);
      CHECK(d.subgraph.edge_count() == 2);  // both pairs intact
    }
    SUBCASE("one full plus one partial") {
      const auto d = cluster_sample(five_k2, 3, 17);
      CHECK(d.respondent_ids.size() == 3);
      CHECK(d.clusters_selected == 2);
    }
    SUBCASE("full population selects every cluster") {
      const auto d = cluster_sample(five_k2, 10, 17);
      CHECK(d.respondent_ids.size() == 10);
      CHECK(d.clusters_selected == 5);
    }
  }

  TEST_CASE("cluster sample drops cross-cluster edges") {
    // Two triangles bridged by one edge: if both clusters are selected, the
    // bridge must not appear in the interaction subgraph.
    const Graph g(6, false, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
    const auto d = cluster_sample(g, 6, 5);
    REQUIRE(d.respondent_ids.size() == 6);
    REQUIRE(d.cluster_assignment.has_value());
    const auto& labels = *d.cluster_assignment;
    for (const auto& [u, v] : d.subgraph.edges()) {
      CHECK(labels[u] == labels[v]);
    }
    CHECK(d.subgraph.edge_count() == 6);  // both triangles, no bridge
  }

  TEST_CASE("cluster sample hits the budget exactly on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Graph g = erdos_renyi(60, 0.08, 100 + seed);
      const std::size_t budget = 1 + seed % 59;
      const auto d = cluster_sample(g, budget, seed);
      CHECK(d.respondent_ids.size() == budget);
      CHECK(std::is_sorted(d.respondent_ids.begin(), d.respondent_ids.end()));
      const auto same = cluster_sample(g, budget, seed);
      CHECK(same.respondent_ids == d.respondent_ids);
    }
    CHECK_THROWS_AS(cluster_sample(complete_graph(4), 5, 1), std::invalid_argument);
  }

  TEST_CASE("cluster sample honors a precomputed partition") {
    // Hand the sampler a partition that disagrees with what detection would
    // find; the selection must follow the given labels.
    const Graph g = disjoint_cliques(3, 4);  // 12 vertices
    std::vector<std::uint32_t> labels(12);
    for (VertexId v = 0; v < 12; ++v) labels[v] = v / 6;  // two 6-vertex blocks
    const auto d = cluster_sample(g, labels, 6, 9);
    CHECK(d.respondent_ids.size() == 6);
    CHECK(d.clusters_selected == 1);  // one full 6-vertex block
    REQUIRE(d.cluster_assignment.has_value());
    for (std::uint32_t c : *d.cluster_assignment) {
      CHECK(c == (*d.cluster_assignment)[0]);
    }
    CHECK_THROWS_AS(cluster_sample(g, std::vector<std::uint32_t>(5, 0), 6, 9),
                    std::invalid_argument);
  }

  TEST_CASE("random sample basics") {
    const Graph g = erdos_renyi(30, 0.2, 5);
    const auto full = random_sample(g, 30, 2);
    CHECK(full.respondent_ids.size() == 30);
    CHECK(full.subgraph.edge_count() == g.edge_count());

    const auto one = random_sample(g, 1, 2);
    CHECK(one.subgraph.edge_count() == 0);

    const auto again = random_sample(g, 10, 77);
    CHECK(again.respondent_ids == random_sample(g, 10, 77).respondent_ids);
    CHECK_THROWS_AS(random_sample(g, 31, 1), std::invalid_argument);
  }

  TEST_CASE("random sample induced edge count matches the binomial expectation") {
    // E-R(500, 0.45), 50 respondents: expected C(50,2) * 0.45 ~ 551 edges.
    double acc = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      const Graph g = erdos_renyi(500, 0.45, 52'000 + s);
      acc += static_cast<double>(random_sample(g, 50, 91'000 + s).subgraph.edge_count());
    }
    CHECK(acc / seeds == doctest::Approx(1225 * 0.45).epsilon(40.0 / 551.0));
  }

  TEST_CASE("strategy names round trip") {
    for (Strategy s :
         {Strategy::IndependentSet, Strategy::Cluster, Strategy::Random}) {
      CHECK(strategy_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(strategy_from_string("stratified"), std::invalid_argument);
  }
}
