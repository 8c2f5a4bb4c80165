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

#include "polldrift/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "polldrift/netgen.hpp"
#include "polldrift/ot.hpp"
#include "polldrift/rng.hpp"

namespace polldrift {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool parse_bool(const std::string& v, const std::string& key) {
  const std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw std::invalid_argument("config: key '" + key + "' wants a boolean, got '" + v + "'");
}

Graph generate_graph(const GraphSource& src, std::uint64_t seed) {
  if (const auto* er = std::get_if<GraphSourceER>(&src)) {
    return erdos_renyi(er->n, er->p, seed);
  }
  if (const auto* sf = std::get_if<GraphSourceSF>(&src)) {
    return scale_free_static(sf->n, sf->exponent, sf->mean_degree, seed);
  }
  const auto& file = std::get<GraphSourceFile>(src);
  return load_edge_list(file.path, file.directed);
}

bool source_is_file(const GraphSource& src) {
  return std::holds_alternative<GraphSourceFile>(src);
}

std::size_t resolve_budget(const ExperimentConfig& cfg, std::size_t n) {
  if (n == 0) throw std::invalid_argument("experiment: population graph has no vertices");
  std::size_t b = cfg.budget.has_value()
                      ? *cfg.budget
                      : static_cast<std::size_t>(
                            std::llround(cfg.budget_fraction * static_cast<double>(n)));
  if (b < 1) b = 1;
  if (b > n) throw std::invalid_argument("experiment: budget exceeds population size");
  return b;
}

SampleDesign draw_sample(Strategy strategy, const Graph& g,
                         const std::vector<std::uint32_t>* labels, std::size_t budget,
                         std::optional<std::size_t> indep_cap, std::uint64_t seed) {
  switch (strategy) {
    case Strategy::IndependentSet:
      return independent_set_sample(g, std::min(budget, indep_cap.value_or(budget)), seed);
    case Strategy::Cluster:
      return cluster_sample(g, *labels, budget, seed);
    case Strategy::Random:
      return random_sample(g, budget, seed);
  }
  throw std::logic_error("draw_sample: bad strategy");
}

bool wants_clusters(const ExperimentConfig& cfg) {
  for (Strategy s : cfg.strategies) {
    if (s == Strategy::Cluster) return true;
  }
  return false;
}

struct RepRecord {
  double w1 = 0.0;
  std::size_t sample_size = 0;
  double clusters_selected = 0.0;
};

void run_one_replication(const ExperimentConfig& cfg, const Graph* shared_graph,
                         const std::vector<std::uint32_t>* shared_labels, std::size_t k,
                         std::vector<std::vector<RepRecord>>& records) {
  const std::uint64_t rep_seed = derive_seed(cfg.master_seed, k);
  Graph local;
  const Graph* g = shared_graph;
  if (g == nullptr) {
    local = generate_graph(cfg.graph_source, derive_seed(rep_seed, seed_stream::kGraph));
    g = &local;
  }
  // Fixed populations get one community partition for the whole experiment;
  // regenerated ones need a fresh detection per replication.
  std::vector<std::uint32_t> local_labels;
  const std::vector<std::uint32_t>* labels = shared_labels;
  if (labels == nullptr && wants_clusters(cfg)) {
    local_labels = detect_communities(*g, derive_seed(rep_seed, seed_stream::kCommunities));
    labels = &local_labels;
  }
  const std::size_t budget = resolve_budget(cfg, g->vertex_count());

  for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
    const Strategy strategy = cfg.strategies[si];
    const std::uint64_t tag = si * seed_stream::kStrategyStride;
    const SampleDesign design =
        draw_sample(strategy, *g, labels, budget, cfg.independent_set_cap,
                    derive_seed(rep_seed, seed_stream::kSample + tag));
    const std::size_t ns = design.respondent_ids.size();

    const BeliefState initial = init_beliefs(
        cfg.belief_family, ns, derive_seed(rep_seed, seed_stream::kBeliefs + tag));
    const InteractionMatrix matrix = build_interaction_matrix(
        design.subgraph, cfg.rule, derive_seed(rep_seed, seed_stream::kWeights + tag),
        cfg.weighted_self);

    BeliefState x = initial;
    for (std::size_t round = 0; round < cfg.update_rounds; ++round) {
      x = update_beliefs(matrix, x);
    }

    double w1;
    if (cfg.w1_target == W1Target::AnalyticF) {
      w1 = w1_empirical_cdf(EmpiricalDistribution(x.values), cfg.belief_family);
    } else {
      w1 = w1_empirical_empirical(EmpiricalDistribution(x.values),
                                  EmpiricalDistribution(initial.values));
    }
    records[si][k] = RepRecord{
        w1, ns, static_cast<double>(design.clusters_selected.value_or(0))};
  }
}

}  // namespace

std::size_t worker_count() {
  if (const char* env = std::getenv("POLLDRIFT_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  const std::size_t n = values.size();
  if (n == 0) return s;
  std::sort(values.begin(), values.end());

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  s.mean = mean;
  s.sd = n < 2 ? 0.0 : std::sqrt(var / static_cast<double>(n - 1));

  const auto quantile = [&](double q) {
    const double h = (static_cast<double>(n) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= n) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
  };
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.lo_whisker = *std::find_if(values.begin(), values.end(),
                               [&](double v) { return v >= lo_fence; });
  for (double v : values) {
    if (v <= hi_fence) s.hi_whisker = v;
  }
  return s;
}

KsComparison ks_compare(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_compare: empty column");
  const KsResult r = ks_two_sample(EmpiricalDistribution({a.begin(), a.end()}),
                                   EmpiricalDistribution({b.begin(), b.end()}));
  KsComparison out;
  out.d_stat = r.d_stat;
  out.p_value = r.p_value;
  out.significant_5pct = r.p_value < 0.05;
  out.significant_1pct = r.p_value < 0.01;
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.replications < 1) throw std::invalid_argument("experiment: replications >= 1");
  if (!(cfg.budget_fraction > 0.0 && cfg.budget_fraction <= 1.0)) {
    throw std::invalid_argument("experiment: budget_fraction must be in (0, 1]");
  }
  if (cfg.strategies.empty()) throw std::invalid_argument("experiment: no strategies");

  // File-backed populations are loaded once; synthetic ones are regenerated
  // per replication unless fixed_graph is set.
  Graph shared_storage;
  const Graph* shared = nullptr;
  std::vector<std::uint32_t> shared_labels_storage;
  const std::vector<std::uint32_t>* shared_labels = nullptr;
  if (source_is_file(cfg.graph_source) || cfg.fixed_graph) {
    shared_storage = generate_graph(cfg.graph_source,
                                    derive_seed(cfg.master_seed, seed_stream::kGraph));
    shared = &shared_storage;
    resolve_budget(cfg, shared_storage.vertex_count());  // fail fast on bad budgets
    if (wants_clusters(cfg)) {
      shared_labels_storage = detect_communities(
          shared_storage, derive_seed(cfg.master_seed, seed_stream::kCommunities));
      shared_labels = &shared_labels_storage;
    }
  }

  const std::size_t reps = cfg.replications;
  std::vector<std::vector<RepRecord>> records(cfg.strategies.size(),
                                              std::vector<RepRecord>(reps));

  const std::size_t workers = std::min(worker_count(), reps);
  if (workers <= 1) {
    for (std::size_t k = 0; k < reps; ++k) {
      run_one_replication(cfg, shared, shared_labels, k, records);
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < reps; k += workers) {
          run_one_replication(cfg, shared, shared_labels, k, records);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  result.strategies.resize(cfg.strategies.size());
  for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
    StrategyResult& sr = result.strategies[si];
    sr.strategy = cfg.strategies[si];
    sr.w1.resize(reps);
    sr.seeds.resize(reps);
    sr.sample_sizes.resize(reps);
    double size_acc = 0.0, cluster_acc = 0.0;
    for (std::size_t k = 0; k < reps; ++k) {
      sr.w1[k] = records[si][k].w1;
      sr.seeds[k] = derive_seed(cfg.master_seed, k);
      sr.sample_sizes[k] = records[si][k].sample_size;
      size_acc += static_cast<double>(records[si][k].sample_size);
      cluster_acc += records[si][k].clusters_selected;
    }
    sr.summary = summarize(sr.w1);
    sr.avg_sample_size = size_acc / static_cast<double>(reps);
    if (cfg.strategies[si] == Strategy::Cluster) {
      sr.avg_clusters_selected = cluster_acc / static_cast<double>(reps);
    }
  }

  // Bound column: short Monte-Carlo average of the matching bound over the
  // first bound_reps replications' realized samples.
  if (cfg.bound_reps > 0) {
    const BoundOptions opts{cfg.bound_mc, cfg.bound_weighted_mc, cfg.qq_grid,
                            derive_seed(cfg.master_seed, seed_stream::kBoundMc)};
    const std::size_t breps = std::min(cfg.bound_reps, reps);
    for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
      const Strategy strategy = cfg.strategies[si];
      const std::uint64_t tag = si * seed_stream::kStrategyStride;
      double acc = 0.0;
      for (std::size_t k = 0; k < breps; ++k) {
        const std::uint64_t rep_seed = derive_seed(cfg.master_seed, k);
        Graph local;
        const Graph* g = shared;
        if (g == nullptr) {
          local = generate_graph(cfg.graph_source, derive_seed(rep_seed, seed_stream::kGraph));
          g = &local;
        }
        std::vector<std::uint32_t> local_labels;
        const std::vector<std::uint32_t>* labels = shared_labels;
        if (labels == nullptr && strategy == Strategy::Cluster) {
          local_labels =
              detect_communities(*g, derive_seed(rep_seed, seed_stream::kCommunities));
          labels = &local_labels;
        }
        const std::size_t budget = resolve_budget(cfg, g->vertex_count());
        const SampleDesign design =
            draw_sample(strategy, *g, labels, budget, cfg.independent_set_cap,
                        derive_seed(rep_seed, seed_stream::kSample + tag));
        if (strategy == Strategy::IndependentSet) {
          acc += indep_bound(cfg.belief_family, design.respondent_ids.size());
        } else if (cfg.rule == InteractionRule::Weighted) {
          const InteractionMatrix matrix = build_interaction_matrix(
              design.subgraph, cfg.rule, derive_seed(rep_seed, seed_stream::kWeights + tag),
              cfg.weighted_self);
          acc += weighted_bound(design.subgraph, matrix, cfg.belief_family, opts).total;
        } else if (design.subgraph.directed()) {
          acc += directed_bound(design.subgraph, cfg.belief_family, opts).total;
        } else {
          acc += random_bound(design.subgraph, cfg.belief_family, opts).total;
        }
      }
      result.strategies[si].bound = acc / static_cast<double>(breps);
    }
  }

  for (std::size_t i = 0; i < result.strategies.size(); ++i) {
    for (std::size_t j = i + 1; j < result.strategies.size(); ++j) {
      ExperimentResult::PairwiseKs pk;
      pk.a = result.strategies[i].strategy;
      pk.b = result.strategies[j].strategy;
      pk.ks = ks_compare(result.strategies[i].w1, result.strategies[j].w1);
      result.pairwise_ks.push_back(pk);
    }
  }
  return result;
}

std::vector<SweepPoint> bound_sweep(const ExperimentConfig& cfg, const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("bound_sweep: no axis values");
  const BoundOptions opts{cfg.bound_mc, cfg.bound_weighted_mc, cfg.qq_grid,
                          derive_seed(cfg.master_seed, seed_stream::kBoundMc)};
  const DistributionSpec& d = cfg.belief_family;
  std::vector<SweepPoint> points;
  points.reserve(spec.values.size());

  for (std::size_t idx = 0; idx < spec.values.size(); ++idx) {
    const std::size_t value = spec.values[idx];
    std::size_t n, r;
    if (spec.axis == SweepAxis::SampleSize) {
      n = value;
      r = 1;
      if (n < 1) throw std::invalid_argument("bound_sweep: sample size must be >= 1");
    } else {
      r = value;
      n = spec.clique_total_n;
      if (r < 1 || n % r != 0) {
        throw std::invalid_argument("bound_sweep: clique size must divide total n");
      }
    }
    const std::size_t p = n / r;

    const std::uint64_t axis_seed = derive_seed(cfg.master_seed, 0xA715ULL + idx);
    double sum = 0.0, sum_sq = 0.0;
    std::vector<double> observed(n);
    for (std::size_t k = 0; k < cfg.replications; ++k) {
      const BeliefState x =
          init_beliefs(d, n, derive_seed(axis_seed, seed_stream::kBeliefs + k));
      if (r == 1) {
        observed = x.values;
      } else {
        for (std::size_t c = 0; c < p; ++c) {
          double m = 0.0;
          for (std::size_t j = 0; j < r; ++j) m += x.values[c * r + j];
          m /= static_cast<double>(r);
          for (std::size_t j = 0; j < r; ++j) observed[c * r + j] = m;
        }
      }
      const double w1 = w1_empirical_cdf(EmpiricalDistribution(observed), d);
      sum += w1;
      sum_sq += w1 * w1;
    }
    const double reps = static_cast<double>(cfg.replications);
    const double mean = sum / reps;
    const double var = reps < 2 ? 0.0 : std::max(0.0, (sum_sq - reps * mean * mean) / (reps - 1));

    SweepPoint pt;
    pt.axis_value = value;
    pt.empirical_mean = mean;
    pt.empirical_se = std::sqrt(var / reps);
    pt.bound = spec.axis == SweepAxis::SampleSize ? indep_bound(d, n)
                                                  : clique_bound(d, p, r, opts).total;
    points.push_back(pt);
  }
  return points;
}

// --- config file -------------------------------------------------------------

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  return from_stream(in, path);
}

ExperimentConfig ExperimentConfig::from_stream(std::istream& in, const std::string& name) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string key = lower(trim(stripped.substr(0, eq)));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument(name + ":" + std::to_string(line_no) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw std::invalid_argument(name + ":" + std::to_string(line_no) + ": duplicate key '" +
                                  key + "'");
    }
  }

  ExperimentConfig cfg;
  const auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  const std::string kind = lower(take("graph").value_or("er"));
  const auto n = take("n");
  const auto p = take("p");
  const auto exponent = take("exponent");
  const auto mean_degree = take("mean_degree");
  const auto path = take("path");
  const auto directed = take("directed");
  if (kind == "er") {
    GraphSourceER er;
    if (n) er.n = std::stoull(*n);
    if (p) er.p = std::stod(*p);
    cfg.graph_source = er;
  } else if (kind == "sf") {
    GraphSourceSF sf;
    if (n) sf.n = std::stoull(*n);
    if (exponent) sf.exponent = std::stod(*exponent);
    if (mean_degree) sf.mean_degree = std::stod(*mean_degree);
    cfg.graph_source = sf;
  } else if (kind == "edgelist") {
    GraphSourceFile f;
    if (!path) throw std::invalid_argument("config: graph = edgelist requires 'path'");
    f.path = *path;
    if (directed) f.directed = parse_bool(*directed, "directed");
    cfg.graph_source = f;
  } else {
    throw std::invalid_argument("config: unknown graph kind '" + kind + "'");
  }

  if (const auto v = take("strategies")) {
    cfg.strategies.clear();
    std::size_t start = 0;
    const std::string s = *v;
    while (start <= s.size()) {
      const auto comma = s.find(',', start);
      const std::string tok = trim(s.substr(start, comma - start));
      if (!tok.empty()) cfg.strategies.push_back(strategy_from_string(lower(tok)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cfg.strategies.empty()) throw std::invalid_argument("config: empty strategies list");
  }
  if (const auto v = take("budget_fraction")) cfg.budget_fraction = std::stod(*v);
  if (const auto v = take("budget")) cfg.budget = std::stoull(*v);
  if (const auto v = take("independent_set_cap")) cfg.independent_set_cap = std::stoull(*v);
  if (const auto v = take("distribution")) cfg.belief_family = DistributionSpec::parse(*v);
  if (const auto v = take("rule")) cfg.rule = interaction_rule_from_string(lower(*v));
  if (const auto v = take("weighted_self")) {
    const std::string s = lower(*v);
    if (s == "drawn") {
      cfg.weighted_self = SelfWeightMode::Drawn;
    } else if (s == "fixed-zero" || s == "fixed_zero") {
      cfg.weighted_self = SelfWeightMode::FixedZero;
    } else {
      throw std::invalid_argument("config: weighted_self must be drawn or fixed-zero");
    }
  }
  if (const auto v = take("w1_target")) {
    const std::string s = lower(*v);
    if (s == "analytic") {
      cfg.w1_target = W1Target::AnalyticF;
    } else if (s == "initial") {
      cfg.w1_target = W1Target::InitialEmpirical;
    } else {
      throw std::invalid_argument("config: w1_target must be analytic or initial");
    }
  }
  if (const auto v = take("replications")) cfg.replications = std::stoull(*v);
  if (const auto v = take("seed")) cfg.master_seed = std::stoull(*v);
  if (const auto v = take("fixed_graph")) cfg.fixed_graph = parse_bool(*v, "fixed_graph");
  if (const auto v = take("update_rounds")) cfg.update_rounds = std::stoull(*v);
  if (const auto v = take("bound_reps")) cfg.bound_reps = std::stoull(*v);
  if (const auto v = take("bound_mc")) cfg.bound_mc = std::stoull(*v);
  if (const auto v = take("bound_weighted_mc")) cfg.bound_weighted_mc = std::stoull(*v);
  if (const auto v = take("qq_grid")) cfg.qq_grid = std::stoull(*v);

  if (!kv.empty()) {
    throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");
  }
  if (cfg.replications < 1) throw std::invalid_argument("config: replications must be >= 1");
  if (!(cfg.budget_fraction > 0.0 && cfg.budget_fraction <= 1.0)) {
    throw std::invalid_argument("config: budget_fraction must be in (0, 1]");
  }
  return cfg;
}

// --- CSV ----------------------------------------------------------------------

void write_runs_csv(std::ostream& out, const ExperimentResult& r) {
  out << "strategy,replication,seed,sample_size,w1\n";
  for (const auto& sr : r.strategies) {
    for (std::size_t k = 0; k < sr.w1.size(); ++k) {
      out << to_string(sr.strategy) << ',' << k << ',' << sr.seeds[k] << ','
          << sr.sample_sizes[k] << ',' << fmt(sr.w1[k]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& r) {
  out << "strategy,mean,sd,q1,median,q3,lo_whisker,hi_whisker,bound\n";
  for (const auto& sr : r.strategies) {
    const auto& s = sr.summary;
    out << to_string(sr.strategy) << ',' << fmt(s.mean) << ',' << fmt(s.sd) << ','
        << fmt(s.q1) << ',' << fmt(s.median) << ',' << fmt(s.q3) << ',' << fmt(s.lo_whisker)
        << ',' << fmt(s.hi_whisker) << ',' << (sr.bound ? fmt(*sr.bound) : std::string())
        << '\n';
  }
}

void write_descriptives_csv(std::ostream& out, const ExperimentResult& r) {
  out << "strategy,avg_sample_size,avg_clusters_selected\n";
  for (const auto& sr : r.strategies) {
    out << to_string(sr.strategy) << ',' << fmt(sr.avg_sample_size) << ','
        << (sr.avg_clusters_selected ? fmt(*sr.avg_clusters_selected) : std::string()) << '\n';
  }
}

void write_ks_csv(std::ostream& out, const ExperimentResult& r) {
  out << "strategy_a,strategy_b,d_stat,p_value,significant_5pct,significant_1pct\n";
  for (const auto& pk : r.pairwise_ks) {
    out << to_string(pk.a) << ',' << to_string(pk.b) << ',' << fmt(pk.ks.d_stat) << ','
        << fmt(pk.ks.p_value) << ',' << (pk.ks.significant_5pct ? 1 : 0) << ','
        << (pk.ks.significant_1pct ? 1 : 0) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << "axis,empirical_mean,empirical_se,bound\n";
  for (const auto& pt : points) {
    out << pt.axis_value << ',' << fmt(pt.empirical_mean) << ',' << fmt(pt.empirical_se)
        << ',' << fmt(pt.bound) << '\n';
  }
}

}  // namespace polldrift
