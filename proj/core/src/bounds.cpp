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

#include "polldrift/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

#include "polldrift/ot.hpp"
#include "polldrift/rng.hpp"
#include "polldrift/sampling.hpp"

namespace polldrift {

namespace {

// --- quadrature ------------------------------------------------------------

template <typename F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson over [a,b], absolute tolerance `tol`, seeded with
/// `panels` uniform panels so narrow features are not skipped.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int panels = 32) {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  const double h = (b - a) / panels;
  const double panel_tol = tol / panels;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + k * h;
    const double x1 = k + 1 == panels ? b : x0 + h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), f1 = f(x1), fm = f(xm);
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += simpson_rec(f, x0, f0, x1, f1, xm, fm, whole, panel_tol, 40);
  }
  return total;
}

/// Composite Simpson on a fixed grid; used whenever the integrand contains a
/// Monte-Carlo ecdf (piecewise constant, so adaptive refinement would chase
/// noise).
template <typename F>
double grid_simpson(const F& f, double a, double b, int intervals = 1 << 14) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) {
    acc += f(a + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

// --- law handling -----------------------------------------------------------

// A post-update belief law: analytic or Monte-Carlo ecdf.
struct LawRef {
  const DistributionSpec* analytic = nullptr;
  const EmpiricalDistribution* empirical = nullptr;

  bool is_analytic() const { return analytic != nullptr; }
  double cdf(double t) const { return analytic ? analytic->cdf(t) : empirical->cdf(t); }
  double lo() const { return analytic ? analytic->support_lo() : empirical->min(); }
  double hi() const { return analytic ? analytic->support_hi() : empirical->max(); }
};

/// Exact integral of sqrt(ecdf (1-ecdf)) — the integrand is constant between
/// consecutive order statistics.
double integral_sqrt_p_one_minus_p(const EmpiricalDistribution& e) {
  const auto& xs = e.values();
  const double n = static_cast<double>(xs.size());
  double acc = 0.0;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double p = static_cast<double>(k) / n;
    acc += std::sqrt(p * (1.0 - p)) * (xs[k] - xs[k - 1]);
  }
  return acc;
}

/// Merges entries referring to the same underlying law, summing counts.
void coalesce_laws(std::vector<LawRef>& laws, std::vector<double>& counts) {
  std::vector<LawRef> out_laws;
  std::vector<double> out_counts;
  for (std::size_t i = 0; i < laws.size(); ++i) {
    bool merged = false;
    for (std::size_t j = 0; j < out_laws.size(); ++j) {
      if (out_laws[j].analytic == laws[i].analytic &&
          out_laws[j].empirical == laws[i].empirical) {
        out_counts[j] += counts[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      out_laws.push_back(laws[i]);
      out_counts.push_back(counts[i]);
    }
  }
  laws = std::move(out_laws);
  counts = std::move(out_counts);
}

/// integral sqrt(sum_k count_k * F_k (1 - F_k)) dt over the joint window.
double integral_sqrt_weighted_sum(std::vector<LawRef> laws, std::vector<double> counts) {
  coalesce_laws(laws, counts);
  if (laws.empty()) return 0.0;
  // One law: factor the multiplicity out so algebraic collapses are exact.
  if (laws.size() == 1) {
    const double scale = std::sqrt(counts[0]);
    if (laws[0].is_analytic()) {
      const auto& d = *laws[0].analytic;
      return scale * adaptive_simpson(
                         [&](double t) {
                           const double p = d.cdf(t);
                           return std::sqrt(std::max(0.0, p * (1.0 - p)));
                         },
                         d.support_lo(), d.support_hi(), 1e-8);
    }
    return scale * integral_sqrt_p_one_minus_p(*laws[0].empirical);
  }
  double lo = laws[0].lo(), hi = laws[0].hi();
  bool any_mc = false;
  for (const auto& l : laws) {
    lo = std::min(lo, l.lo());
    hi = std::max(hi, l.hi());
    any_mc = any_mc || !l.is_analytic();
  }
  const auto f = [&](double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < laws.size(); ++k) {
      const double p = laws[k].cdf(t);
      acc += counts[k] * p * (1.0 - p);
    }
    return std::sqrt(std::max(0.0, acc));
  };
  return any_mc ? grid_simpson(f, lo, hi) : adaptive_simpson(f, lo, hi, 1e-8);
}

/// integral sqrt(max_k F_k (1 - F_k)) dt.
double integral_sqrt_max(std::vector<LawRef> laws) {
  {
    std::vector<double> dummy(laws.size(), 1.0);
    coalesce_laws(laws, dummy);
  }
  if (laws.empty()) return 0.0;
  double lo = laws[0].lo(), hi = laws[0].hi();
  bool any_mc = false;
  for (const auto& l : laws) {
    lo = std::min(lo, l.lo());
    hi = std::max(hi, l.hi());
    any_mc = any_mc || !l.is_analytic();
  }
  const auto f = [&](double t) {
    double best = 0.0;
    for (const auto& l : laws) {
      const double p = l.cdf(t);
      best = std::max(best, p * (1.0 - p));
    }
    return std::sqrt(best);
  };
  return any_mc ? grid_simpson(f, lo, hi) : adaptive_simpson(f, lo, hi, 1e-8);
}

/// Cache of sample-mean laws F^r keyed by r.  r = 1 is the exact initial
/// law; Normal families stay analytic for every r.
class MeanLawCache {
 public:
  MeanLawCache(const DistributionSpec& d, const BoundOptions& opts) : d_(d), opts_(opts) {}

  LawRef law(std::size_t r) {
    if (r == 1) return LawRef{&d_, nullptr};
    auto it = cache_.find(r);
    if (it == cache_.end()) {
      it = cache_
               .emplace(r, sample_mean_distribution(d_, r, opts_.mc_samples,
                                                    derive_seed(opts_.mc_seed, r)))
               .first;
    }
    const SampleMeanLaw& l = it->second;
    if (l.is_analytic()) return LawRef{&l.analytic(), nullptr};
    return LawRef{nullptr, &l.empirical()};
  }

  /// rho of the q-q plot of F^r against its Gaussian surrogate
  /// N(mu, sigma^2/r); exactly 1 (so the gap term vanishes) when the family
  /// is Normal.
  double rho_vs_gaussian(std::size_t r) {
    if (d_.family() == DistributionSpec::Family::Normal) return 1.0;
    auto it = rho_.find(r);
    if (it != rho_.end()) return it->second;
    const auto surrogate =
        DistributionSpec::normal(d_.mean(), d_.sd() / std::sqrt(static_cast<double>(r)));
    const LawRef l = law(r);
    const double value =
        l.is_analytic()
            ? qq_pearson(QuantileView(*l.analytic), QuantileView(surrogate), opts_.qq_grid)
            : qq_pearson(QuantileView(*l.empirical), QuantileView(surrogate), opts_.qq_grid);
    rho_.emplace(r, value);
    return value;
  }

 private:
  const DistributionSpec& d_;
  const BoundOptions& opts_;
  std::map<std::size_t, SampleMeanLaw> cache_;
  std::map<std::size_t, double> rho_;
};

RandomBoundResult random_bound_impl(const Graph& subgraph, const DistributionSpec& d,
                                    const BoundOptions& opts) {
  const std::size_t n = subgraph.vertex_count();
  if (n == 0) throw std::invalid_argument("random_bound: empty subgraph");
  const double nd = static_cast<double>(n);
  const double sigma = d.sd();

  std::map<std::size_t, double> degree_count;  // r = d_i + 1 -> multiplicity
  for (VertexId v = 0; v < n; ++v) ++degree_count[subgraph.degree(v) + 1];

  MeanLawCache laws(d, opts);
  std::vector<LawRef> refs;
  std::vector<double> counts;
  for (const auto& [r, c] : degree_count) {
    refs.push_back(laws.law(r));
    counts.push_back(c);
  }

  RandomBoundResult out;
  out.sampling_term = integral_sqrt_weighted_sum(refs, counts) / nd;

  double inv_sqrt_sum = 0.0;
  for (const auto& [r, c] : degree_count) {
    inv_sqrt_sum += c / std::sqrt(static_cast<double>(r));
  }
  out.consensus_term = sigma * (1.0 - inv_sqrt_sum / nd);

  if (d.family() != DistributionSpec::Family::Normal) {
    const double rho_f = laws.rho_vs_gaussian(1);
    out.gaussian_gap_term = sigma * std::sqrt(std::max(0.0, 2.0 * (1.0 - rho_f)));
    double acc = 0.0;
    for (const auto& [r, c] : degree_count) {
      const double rho_r = laws.rho_vs_gaussian(r);
      acc += c * std::sqrt(std::max(0.0, 2.0 * (1.0 - rho_r)) / static_cast<double>(r));
    }
    out.gaussian_gap_mean_term = sigma * acc / nd;
  }

  const double avg_deg = subgraph.average_degree();
  if (avg_deg > 0.0) {
    const double constant =
        std::sqrt((1.0 + 1.0 / avg_deg) * avg_deg * avg_deg * nd) / nd;
    out.long_range_term = constant * integral_sqrt_max(refs);
  }

  out.total = out.sampling_term + out.consensus_term + out.gaussian_gap_term +
              out.gaussian_gap_mean_term + out.long_range_term;
  return out;
}

}  // namespace

double indep_bound(const DistributionSpec& d, std::size_t n) {
  if (n < 1) throw std::invalid_argument("indep_bound: n must be >= 1");
  const double integral = adaptive_simpson(
      [&](double t) {
        const double p = d.cdf(t);
        return std::sqrt(std::max(0.0, p * (1.0 - p)));
      },
      d.support_lo(), d.support_hi(), 1e-8);
  return integral / std::sqrt(static_cast<double>(n));
}

CliqueBoundResult clique_bound(const DistributionSpec& d, std::size_t p, std::size_t r,
                               const BoundOptions& opts) {
  if (p < 1 || r < 1) throw std::invalid_argument("clique_bound: p, r must be >= 1");
  const double sigma = d.sd();
  const double rd = static_cast<double>(r);

  CliqueBoundResult out;
  out.consensus_term = sigma * (1.0 - 1.0 / std::sqrt(rd));

  MeanLawCache laws(d, opts);
  const LawRef fr = laws.law(r);
  out.sampling_term =
      integral_sqrt_weighted_sum({fr}, {1.0}) / std::sqrt(static_cast<double>(p));

  if (d.family() != DistributionSpec::Family::Normal) {
    const double rho_f = laws.rho_vs_gaussian(1);
    const double rho_fr = laws.rho_vs_gaussian(r);
    out.gaussian_gap_term = sigma * std::sqrt(std::max(0.0, 2.0 * (1.0 - rho_f)));
    out.gaussian_gap_mean_term =
        sigma * std::sqrt(std::max(0.0, 2.0 / rd * (1.0 - rho_fr)));
  }
  out.total = out.consensus_term + out.sampling_term + out.gaussian_gap_term +
              out.gaussian_gap_mean_term;
  return out;
}

RandomBoundResult random_bound(const Graph& subgraph, const DistributionSpec& d,
                               const BoundOptions& opts) {
  if (subgraph.directed()) {
    throw std::invalid_argument("random_bound: directed subgraph, use directed_bound");
  }
  return random_bound_impl(subgraph, d, opts);
}

RandomBoundResult directed_bound(const Graph& subgraph, const DistributionSpec& d,
                                 const BoundOptions& opts) {
  if (!subgraph.directed()) {
    throw std::invalid_argument("directed_bound: subgraph must be directed");
  }
  // Same shape as the undirected bound with out-degrees everywhere; the
  // implementation already reads out-degrees and mean out-degree.
  return random_bound_impl(subgraph, d, opts);
}

WeightedBoundResult weighted_bound(const Graph& subgraph, const InteractionMatrix& w,
                                   const DistributionSpec& d, const BoundOptions& opts) {
  const std::size_t n = subgraph.vertex_count();
  if (n == 0) throw std::invalid_argument("weighted_bound: empty subgraph");
  if (w.rows() != n) throw std::invalid_argument("weighted_bound: matrix/subgraph mismatch");
  const double nd = static_cast<double>(n);
  const double sigma = d.sd();
  const double mu = d.mean();
  const bool normal_family = d.family() == DistributionSpec::Family::Normal;

  // Validate row-stochasticity and support.
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = w.row_columns(i);
    const auto wts = w.row_weights(i);
    double sum = 0.0;
    bool has_self = false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (wts[j] < 0.0) throw std::invalid_argument("weighted_bound: negative weight");
      sum += wts[j];
      if (cols[j] == i) {
        has_self = true;
      } else if (!subgraph.has_edge(static_cast<VertexId>(i), cols[j])) {
        throw std::invalid_argument("weighted_bound: weight outside {i} union N_i");
      }
    }
    if (!has_self || std::fabs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("weighted_bound: rows must be stochastic over {i} union N_i");
    }
  }

  std::deque<DistributionSpec> analytic_store;
  std::deque<EmpiricalDistribution> mc_store;
  std::vector<LawRef> laws(n);
  std::vector<double> s2(n);
  Rng mc_rng(derive_seed(opts.mc_seed, seed_stream::kBoundMc));

  for (std::size_t i = 0; i < n; ++i) {
    s2[i] = w.row_sum_squares(i);
    const auto cols = w.row_columns(i);
    const auto wts = w.row_weights(i);
    if (cols.size() == 1) {
      laws[i] = LawRef{&d, nullptr};  // a_ii = 1: the row's law is F itself
    } else if (normal_family) {
      analytic_store.push_back(DistributionSpec::normal(mu, sigma * std::sqrt(s2[i])));
      laws[i] = LawRef{&analytic_store.back(), nullptr};
    } else {
      std::vector<double> draws(opts.weighted_mc_samples);
      for (auto& x : draws) {
        double acc = 0.0;
        for (std::size_t j = 0; j < wts.size(); ++j) acc += wts[j] * d.sample(mc_rng);
        x = acc;
      }
      mc_store.push_back(EmpiricalDistribution(std::move(draws)));
      laws[i] = LawRef{nullptr, &mc_store.back()};
    }
  }

  WeightedBoundResult out;
  std::vector<double> ones(n, 1.0);
  out.sampling_term = integral_sqrt_weighted_sum(laws, ones) / nd;
  out.sigma_term = sigma;

  double rho_f = 1.0;
  if (!normal_family) {
    rho_f = qq_pearson(QuantileView(d), QuantileView(DistributionSpec::normal(mu, sigma)),
                       opts.qq_grid);
    out.gaussian_gap_term = sigma * std::sqrt(std::max(0.0, 2.0 * (1.0 - rho_f)));
  }

  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rho_i = 1.0;
    if (!normal_family) {
      const auto surrogate = DistributionSpec::normal(mu, sigma * std::sqrt(s2[i]));
      rho_i = laws[i].is_analytic()
                  ? (laws[i].analytic == &d
                         ? rho_f  // C_i = F and surrogate = Ftilde when s2 = 1
                         : qq_pearson(QuantileView(*laws[i].analytic), QuantileView(surrogate),
                                      opts.qq_grid))
                  : qq_pearson(QuantileView(*laws[i].empirical), QuantileView(surrogate),
                               opts.qq_grid);
    }
    spread +=
        std::sqrt(s2[i]) * (std::sqrt(std::max(0.0, 2.0 * (1.0 - rho_i))) - 1.0);
  }
  out.row_spread_term = sigma * spread / nd;

  const double avg_deg = subgraph.average_degree();
  if (avg_deg > 0.0) {
    const double constant =
        std::sqrt((1.0 + 1.0 / avg_deg) * avg_deg * avg_deg * nd) / nd;
    out.long_range_term = constant * integral_sqrt_max(laws);
  }

  out.total = out.sampling_term + out.gaussian_gap_term + out.sigma_term +
              out.row_spread_term + out.long_range_term;
  return out;
}

AssumptionCheck assumption_check(const Graph& g, std::optional<double> er_p) {
  AssumptionCheck out;
  out.lhs = g.long_range_pair_count();
  const double avg = g.average_degree();
  out.rhs = 2.0 * static_cast<double>(g.vertex_count()) * (avg + avg * avg);
  out.holds = static_cast<double>(out.lhs) <= out.rhs;
  if (er_p.has_value()) {
    const double p = *er_p;
    if (p > 0.0 && g.vertex_count() > 0) {
      out.claim1_prob = 1.0 - 2.0 / (static_cast<double>(g.vertex_count()) * p * p);
    }
  }
  return out;
}

McBoundEstimate expected_bound_mc(const Graph& g, std::size_t n, const DistributionSpec& d,
                                  std::size_t reps, std::uint64_t seed,
                                  const BoundOptions& opts) {
  if (reps < 2) throw std::invalid_argument("expected_bound_mc: reps must be >= 2");
  std::vector<double> values(reps);
  for (std::size_t k = 0; k < reps; ++k) {
    const SampleDesign sample = random_sample(g, n, derive_seed(seed, k));
    values[k] = g.directed() ? directed_bound(sample.subgraph, d, opts).total
                             : random_bound(sample.subgraph, d, opts).total;
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(reps - 1);
  return McBoundEstimate{mean, std::sqrt(var / static_cast<double>(reps))};
}

}  // namespace polldrift
