// prosa_sim: command-line driver for overlay experiments.
//
//   prosa_sim run    --peers 400 --queries 10000 --strategy prosa --out-dir out
//   prosa_sim sweep  --sizes 400,600,800,1000,3000,5000 --out-dir out
//   prosa_sim corpus --peers 400 --out corpus.txt
//
// Every subcommand accepts --config FILE with `key = value` lines using the
// long flag names; flags given on the command line override the file.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "prosa/prosa.hpp"

namespace fs = std::filesystem;
using namespace prosa;

namespace {

struct Options {
  ExperimentConfig config;
  std::string strategy = "prosa";
  std::string baseline_topology = "bootstrap";
  std::string out_dir = "out";
  std::string corpus_in;
  std::size_t repeats = 1;
  bool exclude_low_degree = false;
};

void add_experiment_flags(CLI::App& app, Options& o) {
  auto& c = o.config;
  app.add_option("--peers", c.n_peers, "Number of peers")->capture_default_str();
  app.add_option("--docs-mean", c.docs_mean, "Mean documents per peer")->capture_default_str();
  app.add_option("--queries", c.n_queries, "Queries in the workload")->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--theta-match", c.routing.theta_match, "Document match threshold")
      ->capture_default_str();
  app.add_option("--theta-flood", c.routing.theta_flood, "Semantic flooding threshold")
      ->capture_default_str();
  app.add_option("--ttl", c.routing.ttl, "PROSA hop limit")->capture_default_str();
  app.add_option("--flood-ttl", c.flood_ttl, "Flooding hop limit")->capture_default_str();
  app.add_option("--walk-ttl", c.walk_ttl, "Random-walk hop limit")->capture_default_str();
  app.add_option("--join-links", c.join_links, "Acquaintance links per joining peer")
      ->capture_default_str();
  app.add_option("--pl-capacity", c.routing.pl_capacity, "Peer List bound (0 = unbounded)")
      ->capture_default_str();
  app.add_flag("--tsl-to-source", c.routing.tsl_to_source,
               "Receivers link to the query source rather than the forwarding peer");
  app.add_flag("--partial-fallback-forward", c.routing.partial_fallback_forward,
               "Forward partial matches to the best link when nothing clears theta-flood");
  app.add_option("--ingest-downloads", c.routing.ingest_downloads,
                 "Downloaded documents join the requester's shared set")
      ->capture_default_str();
  app.add_option("--topics", c.topics.n_topics, "Topic count")->capture_default_str();
  app.add_option("--terms-per-topic", c.topics.terms_per_topic, "Terms per topic")
      ->capture_default_str();
  app.add_option("--overlap", c.topics.overlap_fraction, "Topic overlap fraction")
      ->capture_default_str();
  app.add_option("--zipf", c.topics.zipf_exponent, "Zipf exponent")->capture_default_str();
  app.add_option("--noise", c.topics.noise_fraction, "Cross-topic token fraction")
      ->capture_default_str();
  app.add_option("--doc-terms-mean", c.topics.doc_terms_mean, "Mean tokens per document")
      ->capture_default_str();
  app.add_option("--query-terms-mean", c.topics.query_terms_mean, "Mean terms per query")
      ->capture_default_str();
  app.add_option("--max-required", c.topics.max_required, "Largest requested result count")
      ->capture_default_str();
  app.add_option("--home-interest", c.topics.home_interest,
                 "Probability that a peer queries its own topic")
      ->capture_default_str();
  app.add_option("--snapshot-interval", c.snapshot_interval,
                 "Write stats every N queries (0 = final only)")
      ->capture_default_str();
  app.add_option("--true-apl-max-nodes", c.true_apl_max_nodes,
                 "Largest snapshot for the BFS path-length check (0 = off)")
      ->capture_default_str();
  app.add_flag("--exclude-low-degree", o.exclude_low_degree,
               "Leave out-degree <= 1 nodes out of the clustering mean");
  app.add_option("--repeats", o.repeats, "Average over N consecutive seeds")->capture_default_str();
  app.add_option("--out-dir", o.out_dir, "Output directory")->capture_default_str();
}

void finalize(Options& o) {
  o.config.cc_policy =
      o.exclude_low_degree ? LowDegreePolicy::Exclude : LowDegreePolicy::CountAsZero;
  if (o.baseline_topology == "bootstrap") {
    o.config.baseline_topology = BaselineTopology::Bootstrap;
  } else if (o.baseline_topology == "evolved") {
    o.config.baseline_topology = BaselineTopology::Evolved;
  } else {
    throw ConfigError("baseline-topology must be bootstrap or evolved");
  }
  if (o.repeats == 0) throw ConfigError("repeats must be positive");
  o.config.validate();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::vector<Strategy> strategies_from(const std::string& text) {
  if (text == "all") return {Strategy::Prosa, Strategy::Flood, Strategy::RandomWalk};
  std::vector<Strategy> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(parse_strategy(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<std::vector<std::vector<Document>>> load_corpus_file(const std::string& path,
                                                                  std::size_t n_peers) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return load_corpus(in, n_peers);
}

int cmd_run(Options& o) {
  finalize(o);
  const auto strategies = strategies_from(o.strategy);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  auto stats = open_out(dir / "stats.csv");
  auto traces = open_out(dir / "traces.csv");
  stats << csv::kStatsHeader << '\n';
  traces << csv::kTraceHeader << '\n';
  std::ofstream snapshots;
  if (o.config.snapshot_interval != 0) {
    snapshots = open_out(dir / "snapshots.csv");
    snapshots << "queries_done," << csv::kStatsHeader << '\n';
  }

  for (Strategy s : strategies) {
    ExperimentConfig config = o.config;
    config.strategy = s;
    if (o.repeats > 1) {
      const auto mean = run_repeated(config, o.repeats);
      csv::write_stats_row(stats, mean, s);
      std::cout << to_string(s) << ": success " << csv::real(mean.success_rate) << " (mean of "
                << o.repeats << " seeds)\n";
      continue;
    }
    auto result = run_experiment(config, load_corpus_file(o.corpus_in, config.n_peers));
    csv::write_stats_row(stats, result.stats, s);
    csv::write_traces(traces, result.traces, s, false);
    for (const auto& snap : result.snapshots) {
      snapshots << snap.queries_done << ',';
      csv::write_stats_row(snapshots, snap.stats, s);
    }
    auto graph = open_out(dir / ("graph_" + std::string(to_string(s)) + ".txt"));
    write_edge_list(graph, result.final_edges);

    const auto& st = result.stats;
    std::cout << to_string(s) << ": nodes " << st.nodes << " edges " << st.edges << " success "
              << csv::real(st.success_rate) << " links " << csv::real(st.avg_links_visited)
              << " docs " << csv::real(st.avg_docs_retrieved) << " deepness "
              << csv::real(st.avg_deepness) << " cc " << csv::real(st.cc) << " cc_ratio "
              << csv::real(st.cc_ratio());
    if (result.true_apl) std::cout << " bfs_apl " << csv::real(result.true_apl->mean);
    std::cout << '\n';
  }
  return 0;
}

int cmd_sweep(Options& o, const std::vector<std::size_t>& sizes) {
  finalize(o);
  std::vector<ExperimentConfig> configs;
  for (std::size_t n : sizes) {
    ExperimentConfig c = o.config;
    c.n_peers = n;
    c.true_apl_max_nodes = 0;
    c.validate();
    configs.push_back(c);
  }
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  auto out = open_out(dir / "sweep.csv");
  out << csv::kSweepHeader << '\n';
  for (const auto& row : sweep(configs, o.repeats)) {
    csv::write_sweep_row(out, row);
    csv::write_sweep_row(std::cout, row);
  }
  return 0;
}

int cmd_corpus(Options& o, const std::string& path) {
  finalize(o);
  SeedStreams rng(o.config.seed);
  auto profiles = generate_profiles(o.config.n_peers, o.config.topics, o.config.docs_mean,
                                    rng.profiles);
  auto corpus = generate_corpus(o.config.topics, profiles, rng.corpus);
  auto out = open_out(path);
  dump_corpus(out, corpus);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PROSA overlay simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file (flags override it)");

  Options run_opts;
  auto* run = app.add_subcommand("run", "Run one experiment per strategy");
  add_experiment_flags(*run, run_opts);
  run->add_option("--strategy", run_opts.strategy, "prosa, flood, randomwalk, a list, or all")
      ->capture_default_str();
  run->add_option("--baseline-topology", run_opts.baseline_topology,
                  "Overlay used by baselines: bootstrap or evolved")
      ->capture_default_str();
  run->add_option("--corpus", run_opts.corpus_in, "Load the corpus from a dump file");

  Options sweep_opts;
  std::vector<std::size_t> sizes{400, 600, 800, 1000, 3000, 5000};
  auto* sw = app.add_subcommand("sweep", "PROSA clustering/APL table across network sizes");
  add_experiment_flags(*sw, sweep_opts);
  sw->add_option("--sizes", sizes, "Network sizes")->delimiter(',')->capture_default_str();

  Options corpus_opts;
  std::string corpus_path = "corpus.txt";
  auto* cp = app.add_subcommand("corpus", "Write the generated corpus to a file");
  add_experiment_flags(*cp, corpus_opts);
  cp->add_option("--out", corpus_path, "Destination file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*sw) return cmd_sweep(sweep_opts, sizes);
    if (*cp) return cmd_corpus(corpus_opts, corpus_path);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
