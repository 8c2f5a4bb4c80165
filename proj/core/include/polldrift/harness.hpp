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

#ifndef POLLDRIFT_HARNESS_HPP_
#define POLLDRIFT_HARNESS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polldrift/bounds.hpp"
#include "polldrift/dist.hpp"
#include "polldrift/dynamics.hpp"
#include "polldrift/graph.hpp"
#include "polldrift/sampling.hpp"

namespace polldrift {

/// What the post-update ecdf is measured against: the analytic initial law
/// (default) or the replication's own pre-update draws.
enum class W1Target { AnalyticF, InitialEmpirical };

struct GraphSourceER {
  std::size_t n = 500;
  double p = 0.002;
};
struct GraphSourceSF {
  std::size_t n = 998;
  double exponent = 2.5;
  double mean_degree = 1.0;
};
struct GraphSourceFile {
  std::string path;
  bool directed = false;
};
using GraphSource = std::variant<GraphSourceER, GraphSourceSF, GraphSourceFile>;

/// Full description of a Monte-Carlo experiment.  Parsed from a flat
/// "key = value" config file ('#' comments); see the README for the schema.
struct ExperimentConfig {
  GraphSource graph_source = GraphSourceER{};
  std::vector<Strategy> strategies = {Strategy::IndependentSet, Strategy::Random,
                                      Strategy::Cluster};
  double budget_fraction = 0.10;
  std::optional<std::size_t> budget;  // absolute override of the fraction
  std::optional<std::size_t> independent_set_cap;
  DistributionSpec belief_family = DistributionSpec::beta(2.0, 2.0);
  InteractionRule rule = InteractionRule::Average;
  SelfWeightMode weighted_self = SelfWeightMode::Drawn;
  W1Target w1_target = W1Target::AnalyticF;
  std::size_t replications = 500;
  std::uint64_t master_seed = 1;
  bool fixed_graph = false;     // reuse one graph instead of regenerating per replication
  std::size_t update_rounds = 1;

  // Bound column of the summary: Monte-Carlo average of the matching bound
  // over bound_reps realized samples (0 disables it).  These MC sizes trade
  // accuracy for speed relative to the BoundOptions defaults.
  std::size_t bound_reps = 4;
  std::size_t bound_mc = 100'000;
  std::size_t bound_weighted_mc = 20'000;
  std::size_t qq_grid = 1000;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_stream(std::istream& in, const std::string& name = "<config>");
};

struct SummaryStats {
  double mean = 0.0;
  double sd = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double lo_whisker = 0.0;  // most extreme points within 1.5 IQR of the quartiles
  double hi_whisker = 0.0;
};

/// Quartiles by linear interpolation between closest ranks; whiskers at the
/// most extreme data points within 1.5 IQR.
SummaryStats summarize(std::vector<double> values);

struct StrategyResult {
  Strategy strategy = Strategy::Random;
  std::vector<double> w1;                // one value per replication
  std::vector<std::uint64_t> seeds;      // replication seeds
  std::vector<std::size_t> sample_sizes;
  SummaryStats summary;
  std::optional<double> bound;
  double avg_sample_size = 0.0;
  std::optional<double> avg_clusters_selected;
};

struct KsComparison {
  double d_stat = 0.0;
  double p_value = 1.0;
  bool significant_5pct = false;
  bool significant_1pct = false;
};

/// Two-sample K-S between result columns, flagged at 5% and 1%.
KsComparison ks_compare(std::span<const double> a, std::span<const double> b);

struct ExperimentResult {
  struct PairwiseKs {
    Strategy a = Strategy::Random;
    Strategy b = Strategy::Random;
    KsComparison ks;
  };
  std::vector<StrategyResult> strategies;
  std::vector<PairwiseKs> pairwise_ks;  // within-run, between strategies
};

/// Runs the experiment: per replication, (re)generate the population graph,
/// draw each strategy's sample, draw initial beliefs, apply the interaction
/// rule for update_rounds synchronous steps, and measure W1 against the
/// configured target.  Replications are independent jobs keyed by
/// (master_seed, index); they may run on any number of workers (see
/// POLLDRIFT_WORKERS) with identical results.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

enum class SweepAxis { SampleSize, CliqueSize };

struct SweepSpec {
  SweepAxis axis = SweepAxis::SampleSize;
  std::vector<std::size_t> values;
  std::size_t clique_total_n = 200;  // fixed n for the clique-size axis
};

struct SweepPoint {
  std::size_t axis_value = 0;
  double empirical_mean = 0.0;
  double empirical_se = 0.0;
  double bound = 0.0;
};

/// Empirical mean W1 (cfg.replications reps) next to the matching bound,
/// along an independent-set sample-size axis or a clique-size axis at fixed
/// total n (which each clique size must divide).
std::vector<SweepPoint> bound_sweep(const ExperimentConfig& cfg, const SweepSpec& spec);

// CSV emitters (byte-stable for a given result).
void write_runs_csv(std::ostream& out, const ExperimentResult& r);
void write_summary_csv(std::ostream& out, const ExperimentResult& r);
void write_descriptives_csv(std::ostream& out, const ExperimentResult& r);
void write_ks_csv(std::ostream& out, const ExperimentResult& r);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points);

// Static SVG charts.
std::string render_boxplot_svg(const ExperimentResult& r, const std::string& title);
std::string render_sweep_svg(const std::vector<SweepPoint>& points, const std::string& title);

/// POLLDRIFT_WORKERS when set, else hardware concurrency, else 1.
std::size_t worker_count();

}  // namespace polldrift

#endif  // POLLDRIFT_HARNESS_HPP_
