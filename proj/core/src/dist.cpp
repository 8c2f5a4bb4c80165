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

#include "polldrift/dist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polldrift {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }
double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Acklam's rational approximation to the standard normal quantile, refined
// with one Halley step; relative error well below 1e-13.
double std_normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = std_normal_cdf(x) - p;
  const double u = e / std_normal_pdf(x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) {
    throw std::invalid_argument("regularized_incomplete_beta: a, b must be positive");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_prefactor = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                               a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(log_prefactor);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b;
}

DistributionSpec DistributionSpec::beta(double a, double b) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("Beta: a, b must be positive");
  return DistributionSpec(Family::Beta, a, b);
}

DistributionSpec DistributionSpec::normal(double mu, double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("Normal: sigma must be positive");
  return DistributionSpec(Family::Normal, mu, sigma);
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  const auto open = s.find('(');
  const auto comma = s.find(',', open);
  const auto close = s.find(')', comma);
  if (open == std::string::npos || comma == std::string::npos || close == std::string::npos) {
    throw std::invalid_argument("distribution: expected name(p1,p2), got '" +
                                std::string(text) + "'");
  }
  const std::string name = s.substr(0, open);
  const double p1 = std::stod(s.substr(open + 1, comma - open - 1));
  const double p2 = std::stod(s.substr(comma + 1, close - comma - 1));
  if (name == "beta") return beta(p1, p2);
  if (name == "normal" || name == "gaussian") return normal(p1, p2);
  throw std::invalid_argument("distribution: unknown family '" + name + "'");
}

double DistributionSpec::mean() const {
  return family_ == Family::Beta ? p1_ / (p1_ + p2_) : p1_;
}

double DistributionSpec::sd() const {
  if (family_ == Family::Normal) return p2_;
  const double s = p1_ + p2_;
  return std::sqrt(p1_ * p2_ / (s * s * (s + 1.0)));
}

double DistributionSpec::pdf(double t) const {
  if (family_ == Family::Normal) {
    return std_normal_pdf((t - p1_) / p2_) / p2_;
  }
  if (t <= 0.0 || t >= 1.0) {
    // Density endpoints: finite only when the exponent vanishes.
    if (t == 0.0 && p1_ == 1.0) return p2_;
    if (t == 1.0 && p2_ == 1.0) return p1_;
    return 0.0;
  }
  const double log_norm = std::lgamma(p1_ + p2_) - std::lgamma(p1_) - std::lgamma(p2_);
  return std::exp(log_norm + (p1_ - 1.0) * std::log(t) + (p2_ - 1.0) * std::log1p(-t));
}

double DistributionSpec::cdf(double t) const {
  if (family_ == Family::Normal) return std_normal_cdf((t - p1_) / p2_);
  return regularized_incomplete_beta(p1_, p2_, t);
}

double DistributionSpec::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile: q must be in (0,1)");
  if (family_ == Family::Normal) return p1_ + p2_ * std_normal_quantile(q);

  // Safeguarded Newton on the incomplete beta.
  double lo = 0.0, hi = 1.0;
  double x = p1_ / (p1_ + p2_);
  for (int it = 0; it < 200; ++it) {
    const double f = cdf(x) - q;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (std::fabs(f) < 1e-14 || hi - lo < 1e-16) break;
    const double deriv = pdf(x);
    double next = deriv > 0.0 ? x - f / deriv : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

double DistributionSpec::partial_moment(double x) const {
  if (family_ == Family::Normal) {
    const double z = (x - p1_) / p2_;
    return p1_ * std_normal_cdf(z) - p2_ * std_normal_pdf(z);
  }
  // int_0^x t f(t) dt = mean * I_x(a+1, b)
  return mean() * regularized_incomplete_beta(p1_ + 1.0, p2_, x);
}

double DistributionSpec::support_lo() const {
  return family_ == Family::Beta ? 0.0 : p1_ - 12.0 * p2_;
}

double DistributionSpec::support_hi() const {
  return family_ == Family::Beta ? 1.0 : p1_ + 12.0 * p2_;
}

double DistributionSpec::sample(Rng& rng) const {
  if (family_ == Family::Normal) return p1_ + p2_ * rng.normal();
  return rng.beta(p1_, p2_);
}

std::string DistributionSpec::to_string() const {
  const auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf);
  };
  if (family_ == Family::Beta) return "beta(" + fmt(p1_) + "," + fmt(p2_) + ")";
  return "normal(" + fmt(p1_) + "," + fmt(p2_) + ")";
}

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("EmpiricalDistribution: values must be finite");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double t) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double EmpiricalDistribution::quantile(double q) const {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("EmpiricalDistribution::quantile: q must be in (0,1]");
  }
  const auto n = values_.size();
  auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (idx == 0) idx = 1;
  if (idx > n) idx = n;
  return values_[idx - 1];
}

double EmpiricalDistribution::mean() const {
  double acc = 0.0;
  for (double v : values_) acc += v;
  return acc / static_cast<double>(values_.size());
}

double EmpiricalDistribution::sd() const {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double acc = 0.0;
  for (double v : values_) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values_.size() - 1));
}

double SampleMeanLaw::cdf(double t) const {
  return is_analytic() ? analytic_->cdf(t) : empirical_->cdf(t);
}

double SampleMeanLaw::quantile(double q) const {
  return is_analytic() ? analytic_->quantile(q) : empirical_->quantile(q);
}

double SampleMeanLaw::mean() const {
  return is_analytic() ? analytic_->mean() : empirical_->mean();
}

double SampleMeanLaw::sd() const { return is_analytic() ? analytic_->sd() : empirical_->sd(); }

SampleMeanLaw sample_mean_distribution(const DistributionSpec& d, std::size_t r, std::size_t m,
                                       std::uint64_t seed) {
  if (r < 1 || m < 1) throw std::invalid_argument("sample_mean_distribution: r, m must be >= 1");
  if (d.family() == DistributionSpec::Family::Normal) {
    return SampleMeanLaw(
        DistributionSpec::normal(d.mean(), d.sd() / std::sqrt(static_cast<double>(r))));
  }
  Rng rng(seed);
  std::vector<double> means(m);
  for (std::size_t k = 0; k < m; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r; ++i) acc += d.sample(rng);
    means[k] = acc / static_cast<double>(r);
  }
  return SampleMeanLaw(EmpiricalDistribution(std::move(means)));
}

}  // namespace polldrift
