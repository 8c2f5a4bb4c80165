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

#ifndef POLLDRIFT_DIST_HPP_
#define POLLDRIFT_DIST_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polldrift/rng.hpp"

namespace polldrift {

/// Regularized incomplete beta I_x(a,b), continued-fraction evaluation,
/// absolute error <= 1e-12 for moderate parameters.
double regularized_incomplete_beta(double a, double b, double x);

/// Analytic initial-belief law: Beta(a,b) on [0,1] or Normal(mu,sigma).
class DistributionSpec {
 public:
  enum class Family { Beta, Normal };

  static DistributionSpec beta(double a, double b);
  static DistributionSpec normal(double mu, double sigma);

  /// Accepts "beta(a,b)" and "normal(mu,sigma)" (case-insensitive).
  static DistributionSpec parse(std::string_view text);

  Family family() const { return family_; }
  double param1() const { return p1_; }  // a or mu
  double param2() const { return p2_; }  // b or sigma

  double mean() const;
  double sd() const;

  double pdf(double t) const;
  double cdf(double t) const;

  /// Inverse cdf; cdf(quantile(q)) = q within 1e-10. Requires q in (0,1).
  double quantile(double q) const;

  /// Partial first moment M(x) = integral of t*f(t) over (-inf, x]; the
  /// closed form behind exact piecewise W1 integrals (M(inf) = mean).
  double partial_moment(double x) const;

  /// Integration window: the support for Beta, mu +/- 12 sigma for Normal.
  double support_lo() const;
  double support_hi() const;

  double sample(Rng& rng) const;

  std::string to_string() const;
  bool operator==(const DistributionSpec&) const = default;

 private:
  DistributionSpec(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}
  Family family_;
  double p1_;
  double p2_;
};

/// Sorted sample standing in for a distribution (right-continuous ecdf;
/// quantile is the usual inverse, x_(ceil(q n))).
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> values);  // sorts, checks finiteness

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const std::vector<double>& values() const { return values_; }

  double cdf(double t) const;
  double quantile(double q) const;  // q in (0,1]
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double mean() const;
  double sd() const;  // sample sd (n-1 denominator)

 private:
  std::vector<double> values_;
};

/// The law of the mean of r i.i.d. draws: exact N(mu, sigma^2/r) for Normal
/// inputs, a Monte-Carlo ecdf otherwise.
class SampleMeanLaw {
 public:
  explicit SampleMeanLaw(DistributionSpec analytic) : analytic_(std::move(analytic)) {}
  explicit SampleMeanLaw(EmpiricalDistribution mc) : empirical_(std::move(mc)) {}

  bool is_analytic() const { return analytic_.has_value(); }
  const DistributionSpec& analytic() const { return *analytic_; }
  const EmpiricalDistribution& empirical() const { return *empirical_; }

  double cdf(double t) const;
  double quantile(double q) const;
  double mean() const;
  double sd() const;

 private:
  std::optional<DistributionSpec> analytic_;
  std::optional<EmpiricalDistribution> empirical_;
};

/// Law of the mean of r i.i.d. draws from d, as m Monte-Carlo realizations
/// (Normal inputs short-circuit to the exact N(mu, sigma^2/r)).
SampleMeanLaw sample_mean_distribution(const DistributionSpec& d, std::size_t r, std::size_t m,
                                       std::uint64_t seed);

}  // namespace polldrift

#endif  // POLLDRIFT_DIST_HPP_
