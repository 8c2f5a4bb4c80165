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

#include "polldrift/netgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "polldrift/rng.hpp"

namespace polldrift {

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("erdos_renyi: p must be in [0,1]");
  std::vector<Edge> edges;
  const std::uint64_t n_pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;

  if (p >= 1.0) {
    edges.reserve(n_pairs);
    for (VertexId u = 0; u + 1 < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph(n, false, std::move(edges));
  }
  if (p > 0.0 && n_pairs > 0) {
    // Geometric skip over the linearized pair index; O(expected edges).
    Rng rng(seed);
    const double log1mp = std::log1p(-p);
    edges.reserve(static_cast<std::size_t>(static_cast<double>(n_pairs) * p * 1.1) + 16);
    double idx = -1.0;
    VertexId row = 0;
    std::uint64_t row_start = 0;  // linear index of pair (row, row+1)
    for (;;) {
      double u;
      do {
        u = rng.uniform01();
      } while (u == 0.0);
      idx += 1.0 + std::floor(std::log(u) / log1mp);
      if (idx >= static_cast<double>(n_pairs)) break;
      auto k = static_cast<std::uint64_t>(idx);
      while (k >= row_start + (n - 1 - row)) {
        row_start += n - 1 - row;
        ++row;
      }
      const auto col = static_cast<VertexId>(row + 1 + (k - row_start));
      edges.emplace_back(row, col);
    }
  }
  return Graph(n, false, std::move(edges));
}

Graph scale_free_static(std::size_t n, double exponent, double target_mean_degree,
                        std::uint64_t seed) {
  if (exponent <= 2.0) throw std::invalid_argument("scale_free_static: exponent must be > 2");
  if (target_mean_degree <= 0.0) {
    throw std::invalid_argument("scale_free_static: target_mean_degree must be > 0");
  }
  const std::uint64_t n_pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto target = static_cast<std::uint64_t>(
      std::llround(static_cast<double>(n) * target_mean_degree / 2.0));
  if (target > n_pairs) {
    throw std::invalid_argument("scale_free_static: edge target exceeds C(n,2)");
  }

  const double xi = 1.0 / (exponent - 1.0);
  std::vector<double> cumulative(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -xi);
    cumulative[i] = acc;
  }

  Rng rng(seed);
  auto draw_vertex = [&]() -> VertexId {
    const double x = rng.uniform01() * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<VertexId>(std::min<std::size_t>(it - cumulative.begin(), n - 1));
  };

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(target * 2);
  std::vector<Edge> edges;
  edges.reserve(target);
  while (edges.size() < target) {
    VertexId u = draw_vertex();
    VertexId v = draw_vertex();
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (seen.insert(key).second) edges.emplace_back(u, v);
  }
  return Graph(n, false, std::move(edges));
}

Graph load_edge_list(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
  return load_edge_list(in, directed, path);
}

Graph load_edge_list(std::istream& in, bool directed, const std::string& name) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;

    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    std::int64_t ids[2];
    for (int k = 0; k < 2; ++k) {
      while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
      auto [next, ec] = std::from_chars(begin, end, ids[k]);
      if (ec != std::errc() || ids[k] < 0) {
        throw ParseError(name + ":" + std::to_string(line_no) + ": expected two vertex ids");
      }
      begin = next;
    }
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    if (begin != end) {
      throw ParseError(name + ":" + std::to_string(line_no) + ": trailing junk after edge");
    }
    raw.emplace_back(ids[0], ids[1]);
  }

  std::unordered_map<std::int64_t, VertexId> compact;
  compact.reserve(raw.size() * 2);
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  auto id_of = [&](std::int64_t v) -> VertexId {
    auto [it, inserted] = compact.try_emplace(v, static_cast<VertexId>(compact.size()));
    (void)inserted;
    return it->second;
  };
  for (const auto& [u, v] : raw) edges.emplace_back(id_of(u), id_of(v));
  return Graph(compact.size(), directed, std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "# vertices " << g.vertex_count() << (g.directed() ? " directed" : " undirected")
      << "\n";
  for (const auto& [u, v] : g.edges()) out << u << "\t" << v << "\n";
}

}  // namespace polldrift
