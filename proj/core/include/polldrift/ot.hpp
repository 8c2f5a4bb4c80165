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

#ifndef POLLDRIFT_OT_HPP_
#define POLLDRIFT_OT_HPP_

#include <functional>

#include "polldrift/dist.hpp"

namespace polldrift {

/// Exact W1 between two empirical distributions.  Equal sizes reduce to the
/// mean absolute difference of paired order statistics; unequal sizes are
/// integrated piecewise over the merged breakpoints of the two ecdfs.
double w1_empirical_empirical(const EmpiricalDistribution& x, const EmpiricalDistribution& y);

/// Exact W1 between an ecdf and an analytic cdf, evaluated in closed pieces
/// in quantile space: over each segment ((i-1)/n, i/n] the integrand
/// |x_(i) - Q(q)| is split at q* = F(x_(i)) and the quantile is integrated
/// through the analytic partial moment of d.
double w1_empirical_cdf(const EmpiricalDistribution& x, const DistributionSpec& d);

/// W2 between two Gaussians: sqrt((mu1-mu2)^2 + (sigma1-sigma2)^2).
double w2_gaussian(double mu1, double sigma1, double mu2, double sigma2);

/// Anything with a quantile function; adapts the three distribution types so
/// the q-q correlation works across them.
struct QuantileView {
  std::function<double(double)> quantile;
  QuantileView(const DistributionSpec& d)  // NOLINT(google-explicit-constructor)
      : quantile([d](double q) { return d.quantile(q); }) {}
  QuantileView(const EmpiricalDistribution& e)  // NOLINT(google-explicit-constructor)
      : quantile([&e](double q) { return e.quantile(q); }) {}
  QuantileView(const SampleMeanLaw& s)  // NOLINT(google-explicit-constructor)
      : quantile([&s](double q) { return s.quantile(q); }) {}
};

/// Pearson correlation of the quantile-quantile points {(f^-1(q_k), g^-1(q_k))}
/// at q_k = (k - 0.5)/grid_size.  Throws std::domain_error when either
/// quantile sequence has zero variance (undefined correlation).
double qq_pearson(const QuantileView& f, const QuantileView& g, std::size_t grid_size);

struct KsResult {
  double d_stat = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov: exact D over the merged order statistics,
/// asymptotic p-value at effective size n_x n_y / (n_x + n_y).
KsResult ks_two_sample(const EmpiricalDistribution& x, const EmpiricalDistribution& y);

/// Asymptotic Kolmogorov survival function Q(lambda) = P(sup > lambda).
double kolmogorov_survival(double lambda);

}  // namespace polldrift

#endif  // POLLDRIFT_OT_HPP_
