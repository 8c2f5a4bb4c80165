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

#ifndef POLLDRIFT_NETGEN_HPP_
#define POLLDRIFT_NETGEN_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "polldrift/graph.hpp"

namespace polldrift {

/// G(n, p): every unordered pair is an edge independently with probability p
/// (undirected). Deterministic given (n, p, seed).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Static-model scale-free graph: vertex i carries weight (i+1)^(-xi) with
/// xi = 1/(exponent-1); endpoints of each new edge are drawn with
/// probability proportional to the weights, rejecting self-loops and
/// duplicates, until round(n * target_mean_degree / 2) edges exist.
/// Requires exponent > 2 and an edge target <= C(n,2).
Graph scale_free_static(std::size_t n, double exponent, double target_mean_degree,
                        std::uint64_t seed);

/// Thrown by load_edge_list on malformed input; message carries the line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a whitespace-separated edge list ("u v" per line, '#' comments),
/// the convention used by SNAP downloads.  Vertex ids are compacted to a
/// dense 0-based range in order of first appearance; duplicate edges are
/// merged and self-loops dropped (see Graph).  An empty file yields the
/// empty graph.
Graph load_edge_list(const std::string& path, bool directed);
Graph load_edge_list(std::istream& in, bool directed, const std::string& name = "<stream>");

/// Writes the matching edge-list format (one "u v" line per edge, '#' header).
void write_edge_list(std::ostream& out, const Graph& g, const std::string& comment = "");

}  // namespace polldrift

#endif  // POLLDRIFT_NETGEN_HPP_
