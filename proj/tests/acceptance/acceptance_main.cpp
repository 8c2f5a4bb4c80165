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

// End-to-end acceptance checks.  Each numbered criterion prints exactly one
// [PASS]/[FAIL] line (or [SKIP] when its dataset is absent); the process
// exit code is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polldrift/bounds.hpp"
#include "polldrift/harness.hpp"
#include "polldrift/netgen.hpp"
#include "polldrift/ot.hpp"
#include "polldrift/rng.hpp"

using namespace polldrift;

namespace {

int g_failures = 0;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(clock::now() - start_).count();
  }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

void report(int index, const char* name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] %2d. %s — %s (%.1fs)\n", pass ? "PASS" : "FAIL", index, name,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void report_skip(int index, const char* name, const std::string& notice) {
  std::printf("[SKIP] %2d. %s — %s\n", index, name, notice.c_str());
  std::fflush(stdout);
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

bool near(double got, double want, double tol) { return std::fabs(got - want) <= tol; }

ExperimentConfig er_config(double p, const DistributionSpec& d, InteractionRule rule,
                           std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.graph_source = GraphSourceER{500, p};
  cfg.belief_family = d;
  cfg.rule = rule;
  cfg.replications = 500;
  cfg.master_seed = seed;
  cfg.bound_reps = 0;
  return cfg;
}

struct StrategyMeans {
  double independent = 0.0;
  double random = 0.0;
  double cluster = 0.0;
};

StrategyMeans means_of(const ExperimentResult& r) {
  StrategyMeans m;
  for (const auto& sr : r.strategies) {
    switch (sr.strategy) {
      case Strategy::IndependentSet:
        m.independent = sr.summary.mean;
        break;
      case Strategy::Random:
        m.random = sr.summary.mean;
        break;
      case Strategy::Cluster:
        m.cluster = sr.summary.mean;
        break;
    }
  }
  return m;
}

// --- criteria ---------------------------------------------------------------

void criterion_1_sparse_regime() {
  Timer timer;
  struct Row {
    DistributionSpec d;
    double want;
    double tol;
  };
  const std::vector<Row> rows = {{DistributionSpec::beta(2, 2), 0.037, 0.004},
                                 {DistributionSpec::beta(2, 5), 0.027, 0.004},
                                 {DistributionSpec::normal(0, 1), 0.180, 0.015}};
  bool pass = true;
  std::string detail;
  for (const auto& row : rows) {
    const auto r = run_experiment(er_config(4e-6, row.d, InteractionRule::Average, 101));
    const auto m = means_of(r);
    for (double got : {m.independent, m.random, m.cluster}) {
      if (!near(got, row.want, row.tol)) pass = false;
    }
    detail += row.d.to_string() + " " + fmt3(m.independent) + "/" + fmt3(m.random) + "/" +
              fmt3(m.cluster) + " ";
  }
  const double secs = timer.seconds();
  if (secs >= 60.0) pass = false;
  report(1, "sparse regime, all strategies agree with the no-interaction value", pass,
         detail + "limit 60s", secs);
}

void criterion_2_interaction_regime() {
  Timer timer;
  const auto r = run_experiment(
      er_config(0.045, DistributionSpec::beta(2, 2), InteractionRule::Average, 202));
  const auto m = means_of(r);
  bool pass = near(m.independent, 0.037, 0.01) && near(m.random, 0.085, 0.01) &&
              near(m.cluster, 0.123, 0.01);
  const bool ordered = m.independent < m.random && m.random < m.cluster;
  pass = pass && ordered;
  const double secs = timer.seconds();
  if (secs >= 300.0) pass = false;
  report(2, "interaction-dominant regime reproduces 0.037/0.085/0.123 with strict ordering",
         pass,
         fmt3(m.independent) + "/" + fmt3(m.random) + "/" + fmt3(m.cluster) +
             (ordered ? ", ordered" : ", ORDER BROKEN") + ", limit 300s",
         secs);
}

void criterion_3_dense_regime() {
  Timer timer;
  const auto r = run_experiment(
      er_config(0.460, DistributionSpec::normal(0, 1), InteractionRule::Average, 303));
  const auto m = means_of(r);
  const bool indep_cell = near(m.independent, 0.180, 0.04);
  const bool values = near(m.random, 0.689, 0.04) && near(m.cluster, 0.715, 0.04);
  const bool ordered = m.independent < m.random && m.random < m.cluster;
  const bool gap = m.cluster - m.random < 0.1;

  double avg_indep_size = 0.0;
  for (const auto& sr : r.strategies) {
    if (sr.strategy == Strategy::IndependentSet) avg_indep_size = sr.avg_sample_size;
  }
  std::string detail =
      fmt3(m.independent) + "/" + fmt3(m.random) + "/" + fmt3(m.cluster);
  if (!indep_cell) {
    // The source table freezes the independent cell at its sparse-regime
    // value, but the greedy independent set on G(500, 0.46) empties out near
    // 10 respondents (the source's own descriptives agree), which pins the
    // cell near 0.40.  See the analysis in the decisions ledger.
    detail += "; independent cell unattainable: realized sets average " +
              fmt3(avg_indep_size) + " respondents, not the budget of 50";
  }
  report(3, "dense regime reproduces 0.180/0.689/0.715 with ordering and a small gap",
         indep_cell && values && ordered && gap, detail, timer.seconds());
}

std::vector<SweepPoint> g_normal_indep_sweep;  // reused by criterion 5

void criterion_4_bound_dominance() {
  Timer timer;
  const std::vector<DistributionSpec> families = {DistributionSpec::beta(2, 2),
                                                  DistributionSpec::beta(2, 5),
                                                  DistributionSpec::normal(0, 1)};
  SweepSpec indep;
  indep.axis = SweepAxis::SampleSize;
  for (std::size_t n = 10; n <= 200; n += 10) indep.values.push_back(n);
  SweepSpec cliques;
  cliques.axis = SweepAxis::CliqueSize;
  cliques.values = {1, 2, 4, 5, 8, 10, 20, 25, 40, 50};
  cliques.clique_total_n = 200;

  int violations = 0, points = 0;
  for (const auto& d : families) {
    ExperimentConfig cfg;
    cfg.belief_family = d;
    cfg.replications = 500;
    cfg.master_seed = 404;
    cfg.bound_mc = 200'000;
    for (const auto* spec : {&indep, &cliques}) {
      const auto pts = bound_sweep(cfg, *spec);
      for (const auto& pt : pts) {
        ++points;
        if (pt.bound < pt.empirical_mean) ++violations;
      }
      if (&d == &families[2] && spec == &indep) g_normal_indep_sweep = pts;
    }
  }
  const double secs = timer.seconds();
  bool pass = violations == 0 && secs < 600.0;
  report(4, "theoretical bound dominates the empirical mean at every sweep point", pass,
         std::to_string(violations) + " violations over " + std::to_string(points) +
             " points, limit 600s",
         secs);
}

void criterion_5_rate_check() {
  Timer timer;
  const auto& pts = g_normal_indep_sweep;
  bool pass = !pts.empty();
  double slope = 0.0;
  if (pass) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& pt : pts) {
      const double x = std::log(static_cast<double>(pt.axis_value));
      const double y = std::log(pt.empirical_mean);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
    pass = near(slope, -0.5, 0.05);
  }
  report(5, "independent-set mean W1 decays like n^(-1/2)", pass,
         "log-log slope " + fmt3(slope), timer.seconds());
}

void criterion_6_variance_shrink() {
  Timer timer;
  auto sparse_cfg = er_config(0.002, DistributionSpec::beta(2, 2), InteractionRule::Average, 606);
  sparse_cfg.strategies = {Strategy::Random};
  auto dense_cfg = er_config(0.460, DistributionSpec::beta(2, 2), InteractionRule::Average, 606);
  dense_cfg.strategies = {Strategy::Random};
  const double sd_sparse = run_experiment(sparse_cfg).strategies[0].summary.sd;
  const double sd_dense = run_experiment(dense_cfg).strategies[0].summary.sd;
  const bool pass = sd_dense <= 0.6 * sd_sparse;
  report(6, "density shrinks the random-strategy W1 spread by at least 40%", pass,
         "sd " + fmt3(sd_sparse) + " -> " + fmt3(sd_dense), timer.seconds());
}

void criterion_7_assumption_claim() {
  Timer timer;
  const double p = 0.211;
  int holds = 0;
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) {
    const Graph g = erdos_renyi(500, p, 70'000 + s);
    if (assumption_check(g, p).holds) ++holds;
  }
  const double fraction = static_cast<double>(holds) / seeds;
  const double predicted = 1.0 - 2.0 / (500 * p * p);
  const bool pass = fraction >= 0.90;
  report(7, "long-range budget holds at least as often as the prediction", pass,
         "fraction " + fmt3(fraction) + ", predicted >= " + fmt3(predicted), timer.seconds());
}

void criterion_8_ks_reproduction() {
  // One average-rule and one weighted-rule experiment sharing the master
  // seed (so graphs, samples and beliefs coincide and the independent
  // column must be bit-identical), compared column-wise by K-S.
  Timer timer;
  auto avg_cfg = er_config(0.460, DistributionSpec::beta(2, 2), InteractionRule::Average, 808);
  avg_cfg.strategies = {Strategy::IndependentSet, Strategy::Cluster};
  auto wtd_cfg = avg_cfg;
  wtd_cfg.rule = InteractionRule::Weighted;
  const auto avg = run_experiment(avg_cfg);
  const auto wtd = run_experiment(wtd_cfg);

  const auto indep = ks_compare(avg.strategies[0].w1, wtd.strategies[0].w1);
  const auto cluster = ks_compare(avg.strategies[1].w1, wtd.strategies[1].w1);
  const bool pass = indep.d_stat == 0.0 && near(cluster.d_stat, 0.69, 0.08) &&
                    cluster.significant_1pct;
  report(8, "average-vs-weighted K-S: cluster D = 0.69 significant, independent D = 0", pass,
         "cluster D " + fmt3(cluster.d_stat) + " (p " + fmt3(cluster.p_value) +
             "), independent D " + fmt3(indep.d_stat),
         timer.seconds());
}

void criterion_9_lp_oracle() {
  Timer timer;
  Rng rng(909);
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + rng.below(8);
    const std::size_t m = 1 + rng.below(8);
    std::vector<double> x(n), y(m);
    for (auto& v : x) v = 10.0 * (rng.uniform01() - 0.5);
    for (auto& v : y) v = 10.0 * (rng.uniform01() - 0.5);
    const double got =
        w1_empirical_empirical(EmpiricalDistribution(x), EmpiricalDistribution(y));
    worst = std::max(worst, std::fabs(got - oracle::lp_w1(x, y)));
  }
  char buf[48];
  std::snprintf(buf, sizeof(buf), "max |diff| %.2e over 200 instances", worst);
  report(9, "closed-form W1 equals the transportation LP optimum", worst <= 1e-9, buf,
         timer.seconds());
}

std::string find_dataset(const char* env_var, std::vector<std::string> candidates) {
  if (const char* env = std::getenv(env_var)) {
    if (std::filesystem::exists(env)) return env;
  }
  for (const auto& c : candidates) {
    if (std::filesystem::exists(c)) return c;
  }
  return {};
}

void criterion_10_real_networks() {
  const std::string fb = find_dataset(
      "POLLDRIFT_FACEBOOK_PATH", {"data/facebook_combined.txt", "data/ego-facebook.txt"});
  if (fb.empty()) {
    report_skip(10,
                "real-network desk check",
                "ego-Facebook edge list not found (set POLLDRIFT_FACEBOOK_PATH or place "
                "data/facebook_combined.txt); criterion skipped with notice");
    return;
  }
  Timer timer;
  const Graph g = load_edge_list(fb, false);
  const auto stats = g.stats();
  bool pass = near(stats.clustering_coefficient, 0.6055, 0.005) &&
              near(stats.avg_path_length, 3.69, 0.05);
  std::string detail = "clustering " + fmt3(stats.clustering_coefficient) + ", path " +
                       fmt3(stats.avg_path_length);

  ExperimentConfig cfg;
  cfg.graph_source = GraphSourceFile{fb, false};
  cfg.belief_family = DistributionSpec::beta(2, 2);
  cfg.replications = 500;
  cfg.master_seed = 1010;
  cfg.bound_reps = 0;
  const auto m = means_of(run_experiment(cfg));
  pass = pass && near(m.independent, 0.013, 0.02) && near(m.random, 0.083, 0.02) &&
         near(m.cluster, 0.143, 0.02) && m.independent < m.random && m.random < m.cluster;
  detail += ", W1 " + fmt3(m.independent) + "/" + fmt3(m.random) + "/" + fmt3(m.cluster);

  const std::string email =
      find_dataset("POLLDRIFT_EMAIL_PATH", {"data/email-Eu-core.txt"});
  if (!email.empty()) {
    ExperimentConfig dir_cfg;
    dir_cfg.graph_source = GraphSourceFile{email, true};
    dir_cfg.strategies = {Strategy::Random};
    dir_cfg.belief_family = DistributionSpec::beta(2, 2);
    dir_cfg.replications = 500;
    dir_cfg.master_seed = 1011;
    dir_cfg.bound_reps = 0;
    auto und_cfg = dir_cfg;
    und_cfg.graph_source = GraphSourceFile{email, false};
    const double d_mean = run_experiment(dir_cfg).strategies[0].summary.mean;
    const double u_mean = run_experiment(und_cfg).strategies[0].summary.mean;
    pass = pass && d_mean >= u_mean;
    detail += ", email directed " + fmt3(d_mean) + " >= undirected " + fmt3(u_mean);
  } else {
    detail += ", email-Eu-core not found (ordering check skipped)";
  }
  report(10, "real-network desk check", pass, detail, timer.seconds());
}

}  // namespace

int main() {
  std::printf("polldrift acceptance suite\n");
  criterion_1_sparse_regime();
  criterion_2_interaction_regime();
  criterion_3_dense_regime();
  criterion_4_bound_dominance();
  criterion_5_rate_check();
  criterion_6_variance_shrink();
  criterion_7_assumption_claim();
  criterion_8_ks_reproduction();
  criterion_9_lp_oracle();
  criterion_10_real_networks();
  if (g_failures == 0) {
    std::printf("all acceptance criteria satisfied\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
