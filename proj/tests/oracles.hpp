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

// Independent reference implementations used only by the test suites.  They
// deliberately avoid the library's algorithms: the transport LP is solved by
// successive shortest paths, two-hop counts come from dense boolean matrix
// products, maximum independent sets from brute-force enumeration, and
// modularity maxima from enumerating all set partitions.

#ifndef POLLDRIFT_TESTS_ORACLES_HPP_
#define POLLDRIFT_TESTS_ORACLES_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "polldrift/graph.hpp"

namespace polldrift::oracle {

/// Exact optimum of the transportation LP between uniform discrete measures
/// on x and y with cost |x_i - y_j| (min-cost flow, successive shortest
/// paths).  Sizes are expected to be small (tests use <= 8).
double lp_w1(const std::vector<double>& x, const std::vector<double>& y);

/// Nonzero off-diagonal entries of A + A^2 via dense boolean products.
std::uint64_t dense_long_range_count(const Graph& g);

/// Exact maximum independent set size by enumeration (n <= ~20).
std::size_t brute_force_mis(const Graph& g);

/// Hand-rolled Newman modularity of a labeling.
double partition_modularity(const Graph& g, const std::vector<std::uint32_t>& labels);

/// Visits every set partition of {0..n-1} (restricted growth strings).
void for_each_partition(std::size_t n,
                        const std::function<void(const std::vector<std::uint32_t>&)>& visit);

/// Maximum modularity over all partitions (n <= ~10).
double best_partition_modularity(const Graph& g, std::vector<std::uint32_t>* best = nullptr);

/// Hill estimator of the tail exponent alpha from the top-k order statistics
/// of a positive sample: alpha = 1 + k / sum log(x_(i)/x_(n-k)).
double hill_tail_exponent(std::vector<double> values, std::size_t top_k);

/// Composite-Simpson quadrature used as an independent numeric integrator.
double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

}  // namespace polldrift::oracle

#endif  // POLLDRIFT_TESTS_ORACLES_HPP_
