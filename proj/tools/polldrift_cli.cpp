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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polldrift/bounds.hpp"
#include "polldrift/harness.hpp"
#include "polldrift/netgen.hpp"
#include "polldrift/ot.hpp"
#include "polldrift/rng.hpp"

using namespace polldrift;

namespace {

struct GraphArgs {
  std::string model = "er";  // er | sf | edgelist
  std::size_t n = 500;
  double p = 0.002;
  double exponent = 2.5;
  double mean_degree = 1.0;
  std::string path;
  bool directed = false;
  std::uint64_t seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "graph source: er | sf | edgelist")
        ->check(CLI::IsMember({"er", "sf", "edgelist"}));
    app->add_option("--n", n, "vertex count (er/sf)");
    app->add_option("--p", p, "edge probability (er)");
    app->add_option("--exponent", exponent, "tail exponent (sf)");
    app->add_option("--mean-degree", mean_degree, "target mean degree (sf)");
    app->add_option("--graph", path, "edge-list file (edgelist)");
    app->add_flag("--directed", directed, "treat the edge list as directed");
    app->add_option("--seed", seed, "generator seed");
  }

  Graph build() const {
    if (model == "er") return erdos_renyi(n, p, seed);
    if (model == "sf") return scale_free_static(n, exponent, mean_degree, seed);
    if (path.empty()) throw CLI::ValidationError("--graph is required with --model edgelist");
    return load_edge_list(path, directed);
  }
};

void warn_dropped(const Graph& g) {
  if (g.dropped_self_loops() > 0) {
    std::cerr << "warning: dropped " << g.dropped_self_loops() << " self-loop(s)\n";
  }
}

SampleDesign run_sample(const Graph& g, const std::string& strategy, std::size_t budget,
                        std::size_t cap, std::uint64_t seed) {
  const Strategy s = strategy_from_string(strategy);
  switch (s) {
    case Strategy::IndependentSet:
      return independent_set_sample(g, cap > 0 ? std::min(cap, budget) : budget, seed);
    case Strategy::Cluster:
      return cluster_sample(g, budget, seed);
    case Strategy::Random:
      return random_sample(g, budget, seed);
  }
  throw std::logic_error("bad strategy");
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

int cmd_generate(const GraphArgs& graph_args, const std::string& out_path) {
  const Graph g = graph_args.build();
  warn_dropped(g);
  std::ostringstream header;
  header << "polldrift generate model=" << graph_args.model << " seed=" << graph_args.seed;
  if (out_path.empty() || out_path == "-") {
    write_edge_list(std::cout, g, header.str());
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_edge_list(out, g, header.str());
  }
  std::cerr << "generated " << g.vertex_count() << " vertices, " << g.edge_count()
            << " edges\n";
  return 0;
}

int cmd_stats(const GraphArgs& graph_args) {
  const Graph g = graph_args.build();
  warn_dropped(g);
  const GraphStats s = g.stats();
  std::cout << "vertices: " << g.vertex_count() << "\n"
            << "edges: " << g.edge_count() << "\n"
            << "directed: " << (g.directed() ? "yes" : "no") << "\n"
            << "avg_degree: " << s.avg_degree << "\n"
            << "clustering_coefficient: " << s.clustering_coefficient << "\n"
            << "avg_path_length: " << s.avg_path_length << "\n"
            << "giant_component_size: " << s.giant_component_size << "\n"
            << "max_independent_set_bound: " << mis_upper_bound(g) << "\n";
  const auto check = assumption_check(g);
  std::cout << "long_range_pairs: " << check.lhs << " (budget " << check.rhs << ", "
            << (check.holds ? "holds" : "exceeded") << ")\n";
  return 0;
}

int cmd_sample(const GraphArgs& graph_args, const std::string& strategy, double fraction,
               std::size_t budget, std::size_t cap, std::uint64_t seed) {
  const Graph g = graph_args.build();
  warn_dropped(g);
  if (budget == 0) {
    budget = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(g.vertex_count())));
    budget = std::max<std::size_t>(1, budget);
  }
  const SampleDesign d = run_sample(g, strategy, budget, cap, seed);
  std::cout << "strategy: " << to_string(d.strategy) << "\n"
            << "sample_size: " << d.respondent_ids.size() << "\n"
            << "subgraph_edges: " << d.subgraph.edge_count() << "\n";
  if (d.clusters_selected) std::cout << "clusters_selected: " << *d.clusters_selected << "\n";
  std::cout << "respondents:";
  for (VertexId v : d.respondent_ids) std::cout << ' ' << v;
  std::cout << "\n";
  return 0;
}

int cmd_simulate(const GraphArgs& graph_args, const std::string& strategy,
                 const std::string& dist, const std::string& rule, double fraction,
                 std::size_t budget, std::size_t cap, std::uint64_t seed,
                 std::size_t rounds) {
  const Graph g = graph_args.build();
  warn_dropped(g);
  if (budget == 0) {
    budget = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(fraction * static_cast<double>(g.vertex_count()))));
  }
  const DistributionSpec family = DistributionSpec::parse(dist);
  const SampleDesign d =
      run_sample(g, strategy, budget, cap, derive_seed(seed, seed_stream::kSample));
  const BeliefState initial = init_beliefs(family, d.respondent_ids.size(),
                                           derive_seed(seed, seed_stream::kBeliefs));
  const InteractionMatrix matrix =
      build_interaction_matrix(d.subgraph, interaction_rule_from_string(rule),
                               derive_seed(seed, seed_stream::kWeights));
  BeliefState updated = initial;
  for (std::size_t r = 0; r < rounds; ++r) updated = update_beliefs(matrix, updated);

  std::cout << "respondent,initial,updated\n";
  for (std::size_t i = 0; i < d.respondent_ids.size(); ++i) {
    std::cout << d.respondent_ids[i] << ',' << initial.values[i] << ',' << updated.values[i]
              << '\n';
  }
  const EmpiricalDistribution before(initial.values);
  const EmpiricalDistribution after(updated.values);
  std::cout << "w1_vs_analytic: " << w1_empirical_cdf(after, family) << "\n"
            << "w1_vs_initial: " << w1_empirical_empirical(after, before) << "\n";
  return 0;
}

int cmd_bound(const GraphArgs& graph_args, const std::string& which, const std::string& dist,
              std::size_t n, std::size_t cliques, std::size_t clique_size,
              std::uint64_t seed, BoundOptions opts) {
  const DistributionSpec family = DistributionSpec::parse(dist);
  const auto line = [](const char* name, double value) {
    std::cout << "  " << name << ": " << value << "\n";
  };
  if (which == "independent") {
    std::cout << "independent-set bound (n = " << n << ")\n";
    line("total", indep_bound(family, n));
    return 0;
  }
  if (which == "clique") {
    const auto r = clique_bound(family, cliques, clique_size, opts);
    std::cout << "clique bound (p = " << cliques << ", r = " << clique_size << ")\n";
    line("consensus", r.consensus_term);
    line("sampling", r.sampling_term);
    line("gaussian_gap", r.gaussian_gap_term);
    line("gaussian_gap_mean", r.gaussian_gap_mean_term);
    line("total", r.total);
    return 0;
  }
  if (which == "assumption") {
    const Graph g = graph_args.build();
    const auto check = assumption_check(
        g, graph_args.model == "er" ? std::optional<double>(graph_args.p) : std::nullopt);
    std::cout << "long-range budget check\n";
    std::cout << "  lhs (pairs within two hops): " << check.lhs << "\n";
    std::cout << "  rhs 2n(<d> + <d>^2): " << check.rhs << "\n";
    std::cout << "  holds: " << (check.holds ? "yes" : "no") << "\n";
    if (check.claim1_prob) std::cout << "  predicted_probability: " << *check.claim1_prob << "\n";
    return 0;
  }

  // Subgraph-conditioned bounds: sample n respondents from the built graph.
  const Graph g = graph_args.build();
  const SampleDesign d = random_sample(g, n, derive_seed(seed, seed_stream::kSample));
  if (which == "random" || which == "directed") {
    const auto r = d.subgraph.directed() ? directed_bound(d.subgraph, family, opts)
                                         : random_bound(d.subgraph, family, opts);
    std::cout << (d.subgraph.directed() ? "directed" : "random")
              << " sampling bound on a realized subgraph (n = " << n << ")\n";
    line("sampling", r.sampling_term);
    line("consensus", r.consensus_term);
    line("gaussian_gap", r.gaussian_gap_term);
    line("gaussian_gap_mean", r.gaussian_gap_mean_term);
    line("long_range (proof-form constant)", r.long_range_term);
    line("total", r.total);
    return 0;
  }
  if (which == "weighted") {
    const InteractionMatrix w = build_interaction_matrix(
        d.subgraph, InteractionRule::Weighted, derive_seed(seed, seed_stream::kWeights));
    const auto r = weighted_bound(d.subgraph, w, family, opts);
    std::cout << "weighted-rule bound on a realized subgraph (n = " << n << ")\n";
    line("sampling", r.sampling_term);
    line("gaussian_gap", r.gaussian_gap_term);
    line("sigma", r.sigma_term);
    line("row_spread", r.row_spread_term);
    line("long_range (proof-form constant)", r.long_range_term);
    line("total", r.total);
    return 0;
  }
  if (which == "expected") {
    const auto est = expected_bound_mc(g, n, family, 16, seed, opts);
    std::cout << "expected random-sampling bound (16 subgraph draws)\n";
    line("mean", est.mean);
    line("std_error", est.std_error);
    return 0;
  }
  throw CLI::ValidationError("unknown bound '" + which + "'");
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, bool svg,
                   bool quiet) {
  const ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
  const ExperimentResult result = run_experiment(cfg);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    std::ostringstream runs, summary, desc, ks;
    write_runs_csv(runs, result);
    write_summary_csv(summary, result);
    write_descriptives_csv(desc, result);
    write_ks_csv(ks, result);
    write_file(dir / "runs.csv", runs.str());
    write_file(dir / "summary.csv", summary.str());
    write_file(dir / "descriptives.csv", desc.str());
    write_file(dir / "ks.csv", ks.str());
    if (svg) {
      write_file(dir / "boxplot.svg",
                 render_boxplot_svg(result, "W1 by strategy (" +
                                                cfg.belief_family.to_string() + ", " +
                                                std::string(to_string(cfg.rule)) + ")"));
    }
  }
  if (!quiet) {
    write_summary_csv(std::cout, result);
    std::cout << "\n";
    write_descriptives_csv(std::cout, result);
    std::cout << "\n";
    write_ks_csv(std::cout, result);
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values_csv, std::size_t total_n, const std::string& out_dir,
              bool svg) {
  ExperimentConfig cfg =
      config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(config_path);
  SweepSpec spec;
  spec.axis = axis == "clique" ? SweepAxis::CliqueSize : SweepAxis::SampleSize;
  spec.clique_total_n = total_n;
  std::stringstream ss(values_csv);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (!tok.empty()) spec.values.push_back(std::stoull(tok));
  }
  const auto points = bound_sweep(cfg, spec);
  write_sweep_csv(std::cout, points);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    write_sweep_csv(csv, points);
    write_file(std::filesystem::path(out_dir) / "sweep.csv", csv.str());
    if (svg) {
      write_file(std::filesystem::path(out_dir) / "sweep.svg",
                 render_sweep_svg(points, "mean W1 vs bound (" +
                                              cfg.belief_family.to_string() + ")"));
    }
  }
  return 0;
}

std::vector<double> read_w1_column(const std::string& path, const std::string& strategy) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("strategy,")) {
    throw std::runtime_error(path + ": not a polldrift runs.csv");
  }
  std::vector<double> out;
  while (std::getline(in, line)) {
    const auto first = line.find(',');
    if (first == std::string::npos) continue;
    if (!strategy.empty() && line.substr(0, first) != strategy) continue;
    const auto last = line.rfind(',');
    out.push_back(std::stod(line.substr(last + 1)));
  }
  if (out.empty()) {
    throw std::runtime_error(path + ": no rows for strategy '" + strategy + "'");
  }
  return out;
}

int cmd_ks(const std::string& file_a, const std::string& file_b, const std::string& strat_a,
           const std::string& strat_b) {
  const auto a = read_w1_column(file_a, strat_a);
  const auto b = read_w1_column(file_b, strat_b.empty() ? strat_a : strat_b);
  const KsComparison r = ks_compare(a, b);
  std::cout << "n_a: " << a.size() << "\nn_b: " << b.size() << "\nd_stat: " << r.d_stat
            << "\np_value: " << r.p_value
            << "\nsignificant_5pct: " << (r.significant_5pct ? "yes" : "no")
            << "\nsignificant_1pct: " << (r.significant_1pct ? "yes" : "no") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"opinion-dynamics survey sampling experiments"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic graph as an edge list");
  GraphArgs gen_graph;
  gen_graph.attach(generate);
  std::string gen_out;
  generate->add_option("--out", gen_out, "output path ('-' for stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "descriptive statistics of a graph");
  GraphArgs stats_graph;
  stats_graph.attach(stats);

  // sample
  auto* sample = app.add_subcommand("sample", "draw a respondent sample");
  GraphArgs sample_graph;
  sample_graph.attach(sample);
  std::string sample_strategy = "random";
  double sample_fraction = 0.10;
  std::size_t sample_budget = 0, sample_cap = 0;
  std::uint64_t sample_seed = 1;
  sample->add_option("--strategy", sample_strategy, "independent | cluster | random");
  sample->add_option("--fraction", sample_fraction, "budget as a population fraction");
  sample->add_option("--budget", sample_budget, "absolute budget (overrides --fraction)");
  sample->add_option("--cap", sample_cap, "independent-set size cap");
  sample->add_option("--sample-seed", sample_seed, "sampling seed");

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "one replication; prints beliefs before/after");
  GraphArgs sim_graph;
  sim_graph.attach(simulate);
  std::string sim_strategy = "random", sim_dist = "beta(2,2)", sim_rule = "average";
  double sim_fraction = 0.10;
  std::size_t sim_budget = 0, sim_cap = 0, sim_rounds = 1;
  std::uint64_t sim_seed = 1;
  simulate->add_option("--strategy", sim_strategy, "independent | cluster | random");
  simulate->add_option("--dist", sim_dist, "initial belief law, e.g. beta(2,2)");
  simulate->add_option("--rule", sim_rule, "average | weighted");
  simulate->add_option("--fraction", sim_fraction, "budget fraction");
  simulate->add_option("--budget", sim_budget, "absolute budget");
  simulate->add_option("--cap", sim_cap, "independent-set cap");
  simulate->add_option("--rounds", sim_rounds, "update rounds");
  simulate->add_option("--sim-seed", sim_seed, "replication seed");

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate an analytic W1 bound");
  GraphArgs bound_graph;
  bound_graph.attach(bound);
  std::string bound_which = "independent", bound_dist = "beta(2,2)";
  std::size_t bound_n = 50, bound_cliques = 10, bound_clique_size = 5;
  std::uint64_t bound_seed = 1;
  BoundOptions bound_opts;
  bound->add_option("--which", bound_which,
                    "independent | clique | random | directed | weighted | expected | "
                    "assumption");
  bound->add_option("--dist", bound_dist, "belief law");
  bound->add_option("--sample-n", bound_n, "respondents (independent/random/weighted)");
  bound->add_option("--cliques", bound_cliques, "clique count p");
  bound->add_option("--clique-size", bound_clique_size, "clique size r");
  bound->add_option("--bound-seed", bound_seed, "subgraph draw seed");
  bound->add_option("--mc", bound_opts.mc_samples, "MC sample size for mean laws");
  bound->add_option("--weighted-mc", bound_opts.weighted_mc_samples,
                    "MC sample size for per-row laws");
  bound->add_option("--grid", bound_opts.qq_grid, "q-q correlation grid");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "full Monte-Carlo sweep from a config");
  std::string exp_config, exp_out;
  bool exp_svg = false, exp_quiet = false;
  experiment->add_option("--config", exp_config, "config file")->required();
  experiment->add_option("--out", exp_out, "output directory for CSV/SVG");
  experiment->add_flag("--svg", exp_svg, "also write charts");
  experiment->add_flag("--quiet", exp_quiet, "suppress stdout tables");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bound-vs-empirical curve data");
  std::string sweep_config, sweep_axis = "sample-size", sweep_values = "10,50,100,200";
  std::string sweep_out;
  std::size_t sweep_total = 200;
  bool sweep_svg = false;
  sweep->add_option("--config", sweep_config, "config file (optional)");
  sweep->add_option("--axis", sweep_axis, "sample-size | clique")
      ->check(CLI::IsMember({"sample-size", "clique"}));
  sweep->add_option("--values", sweep_values, "comma-separated axis values");
  sweep->add_option("--total-n", sweep_total, "fixed n for the clique axis");
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_flag("--svg", sweep_svg, "also write the chart");

  // ks
  auto* ks = app.add_subcommand("ks", "two-sample K-S between result columns");
  std::string ks_a, ks_b, ks_strat_a = "random", ks_strat_b;
  ks->add_option("--a", ks_a, "first runs.csv")->required();
  ks->add_option("--b", ks_b, "second runs.csv")->required();
  ks->add_option("--strategy", ks_strat_a, "strategy column to compare");
  ks->add_option("--strategy-b", ks_strat_b, "strategy column in --b (defaults to --strategy)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen_graph, gen_out);
    if (stats->parsed()) return cmd_stats(stats_graph);
    if (sample->parsed()) {
      return cmd_sample(sample_graph, sample_strategy, sample_fraction, sample_budget,
                        sample_cap, sample_seed);
    }
    if (simulate->parsed()) {
      return cmd_simulate(sim_graph, sim_strategy, sim_dist, sim_rule, sim_fraction,
                          sim_budget, sim_cap, sim_seed, sim_rounds);
    }
    if (bound->parsed()) {
      return cmd_bound(bound_graph, bound_which, bound_dist, bound_n, bound_cliques,
                       bound_clique_size, bound_seed, bound_opts);
    }
    if (experiment->parsed()) return cmd_experiment(exp_config, exp_out, exp_svg, exp_quiet);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_config, sweep_axis, sweep_values, sweep_total, sweep_out,
                       sweep_svg);
    }
    if (ks->parsed()) return cmd_ks(ks_a, ks_b, ks_strat_a, ks_strat_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
