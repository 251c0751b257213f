// Experiment orchestration: bootstrap, workload, strategy execution and CSV
// output.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prosa/baselines.hpp"
#include "prosa/corpus.hpp"
#include "prosa/metrics.hpp"
#include "prosa/overlay.hpp"
#include "prosa/routing.hpp"

namespace prosa {

enum class Strategy { Prosa, Flood, RandomWalk };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Prosa: return "prosa";
    case Strategy::Flood: return "flood";
    case Strategy::RandomWalk: return "randomwalk";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view text) {
  if (text == "prosa") return Strategy::Prosa;
  if (text == "flood") return Strategy::Flood;
  if (text == "randomwalk") return Strategy::RandomWalk;
  throw std::invalid_argument("unknown strategy: " + std::string(text));
}

enum class BaselineTopology { Bootstrap, Evolved };

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::size_t n_peers = 400;
  double docs_mean = 20.0;
  std::size_t n_queries = 10000;
  Strategy strategy = Strategy::Prosa;
  std::uint64_t seed = 1;
  RoutingConfig routing;  // theta_match, theta_flood, ttl, ...
  std::uint32_t flood_ttl = 7;
  std::uint32_t walk_ttl = 15;
  std::size_t join_links = 3;
  JoinOrder join_order = JoinOrder::Population;
  TopicModel topics;
  std::size_t snapshot_interval = 0;  // 0 = final snapshot only
  BaselineTopology baseline_topology = BaselineTopology::Bootstrap;
  LowDegreePolicy cc_policy = LowDegreePolicy::CountAsZero;
  std::size_t true_apl_max_nodes = 1000;  // 0 disables the BFS cross-check

  void validate() const {
    if (n_peers == 0) throw ConfigError("peers must be positive");
    if (!(docs_mean > 0.0)) throw ConfigError("docs-mean must be positive");
    if (n_queries == 0) throw ConfigError("queries must be positive");
    if (join_links == 0) throw ConfigError("join-links must be positive");
    if (routing.ttl == 0 || flood_ttl == 0 || walk_ttl == 0) throw ConfigError("ttl must be positive");
    if (!(routing.theta_match >= 0.0) || !(routing.theta_flood >= 0.0)) {
      throw ConfigError("thresholds must be non-negative");
    }
    try {
      topics.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
};

/// Independent RNG streams per concern, so that every strategy sees the same
/// corpus, topology and workload for a given seed.
struct SeedStreams {
  Rng profiles, corpus, join, workload, routing;

  explicit SeedStreams(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      0x50524f53u};
    std::uint64_t s[5];
    std::vector<std::uint32_t> words(10);
    seq.generate(words.begin(), words.end());
    for (int i = 0; i < 5; ++i) s[i] = (std::uint64_t{words[2 * i]} << 32) | words[2 * i + 1];
    profiles.seed(s[0]);
    corpus.seed(s[1]);
    join.seed(s[2]);
    workload.seed(s[3]);
    routing.seed(s[4]);
  }
};

struct WorkloadItem {
  PeerId origin = 0;
  Query query;
};

struct World {
  std::vector<PeerProfile> profiles;
  Network network;
  std::vector<WorkloadItem> workload;
};

/// Corpus, bootstrapped overlay and query workload for `config`.
inline World build_world(const ExperimentConfig& config,
                         std::optional<std::vector<std::vector<Document>>> corpus = std::nullopt) {
  config.validate();
  SeedStreams rng(config.seed);
  World w;
  w.profiles = generate_profiles(config.n_peers, config.topics, config.docs_mean, rng.profiles);
  auto docs = corpus ? std::move(*corpus) : generate_corpus(config.topics, w.profiles, rng.corpus);
  if (docs.size() < config.n_peers) docs.resize(config.n_peers);
  if (docs.size() > config.n_peers) throw ConfigError("corpus holds more peers than configured");
  w.network = bootstrap_network(config.n_peers, std::move(docs), config.join_links, rng.join,
                                config.routing.pl_capacity, config.join_order);
  TopicSampler sampler(config.topics);
  std::uniform_int_distribution<PeerId> origin(0, static_cast<PeerId>(config.n_peers - 1));
  w.workload.reserve(config.n_queries);
  for (std::size_t q = 0; q < config.n_queries; ++q) {
    WorkloadItem item;
    item.origin = origin(rng.workload);
    item.query = generate_query(w.profiles[item.origin], sampler, rng.workload);
    w.workload.push_back(std::move(item));
  }
  return w;
}

struct Snapshot {
  std::size_t queries_done = 0;
  ExperimentStats stats;
};

struct ExperimentResult {
  Strategy strategy = Strategy::Prosa;
  ExperimentStats stats;
  std::vector<QueryTrace> traces;
  std::vector<Edge> final_edges;
  std::vector<Snapshot> snapshots;
  std::optional<PathLengthStats> true_apl;
};

namespace detail {

inline QueryTrace run_one(Strategy strategy, Network& net, const WorkloadItem& item,
                          const ExperimentConfig& config, Rng& rng, std::uint64_t query_id) {
  const auto& q = item.query;
  switch (strategy) {
    case Strategy::Prosa:
      return execute_query(net, item.origin, q.qv, q.required, config.routing, rng, query_id);
    case Strategy::Flood:
      return flood_query(net, item.origin, q.qv, q.required, config.flood_ttl,
                         config.routing.theta_match, query_id);
    case Strategy::RandomWalk:
      return random_walk_query(net, item.origin, q.qv, q.required, config.walk_ttl,
                               config.routing.theta_match, rng, query_id);
  }
  throw std::logic_error("unhandled strategy");
}

inline void strip_trace(QueryTrace& t) {
  // Keep what the CSVs and aggregates need; responses carry full PVs.
  t.responses.clear();
  t.responses.shrink_to_fit();
}

}  // namespace detail

/// Runs config.strategy over a freshly built world. Baselines use the
/// bootstrap overlay unless baseline_topology asks for the PROSA-evolved one,
/// in which case the PROSA workload is replayed first.
inline ExperimentResult run_experiment(
    const ExperimentConfig& config,
    std::optional<std::vector<std::vector<Document>>> corpus = std::nullopt) {
  World world = build_world(config, std::move(corpus));
  SeedStreams rng(config.seed);
  ExperimentResult result;
  result.strategy = config.strategy;

  if (config.strategy != Strategy::Prosa &&
      config.baseline_topology == BaselineTopology::Evolved) {
    Rng evolve = rng.routing;
    for (std::size_t q = 0; q < world.workload.size(); ++q) {
      detail::run_one(Strategy::Prosa, world.network, world.workload[q], config, evolve, q);
    }
  }

  Network& net = world.network;
  result.traces.reserve(world.workload.size());
  for (std::size_t q = 0; q < world.workload.size(); ++q) {
    result.traces.push_back(
        detail::run_one(config.strategy, net, world.workload[q], config, rng.routing, q));
    detail::strip_trace(result.traces.back());
    const std::size_t done = q + 1;
    if (config.snapshot_interval != 0 && done % config.snapshot_interval == 0 &&
        done != world.workload.size()) {
      auto g = GraphSnapshot::from_network(net);
      result.snapshots.push_back(
          {done, aggregate_stats(std::span(result.traces.data(), done), g, config.cc_policy)});
    }
  }

  result.final_edges = export_graph(net);
  const auto g = GraphSnapshot::from_edges(net.size(), result.final_edges);
  result.stats = aggregate_stats(result.traces, g, config.cc_policy);
  if (config.snapshot_interval != 0) result.snapshots.push_back({result.traces.size(), result.stats});
  if (config.true_apl_max_nodes != 0 && net.size() <= config.true_apl_max_nodes) {
    result.true_apl = shortest_path_apl(g);
  }
  return result;
}

/// Mean of `repeats` runs with seeds seed, seed+1, ...
inline ExperimentStats run_repeated(ExperimentConfig config, std::size_t repeats) {
  if (repeats == 0) throw ConfigError("repeats must be positive");
  if (repeats == 1) return run_experiment(config).stats;
  ExperimentStats mean;
  const std::uint64_t base = config.seed;
  double edges = 0.0;
  double cc_rnd = 0.0;
  double apl_rnd = 0.0;
  for (std::size_t r = 0; r < repeats; ++r) {
    config.seed = base + r;
    const auto s = run_experiment(config).stats;
    mean.nodes = s.nodes;
    mean.queries = s.queries;
    edges += static_cast<double>(s.edges);
    mean.success_rate += s.success_rate;
    mean.avg_links_visited += s.avg_links_visited;
    mean.avg_docs_retrieved += s.avg_docs_retrieved;
    mean.avg_deepness += s.avg_deepness;
    mean.cc += s.cc;
    mean.apl += s.apl;
    cc_rnd += s.cc_rnd;
    apl_rnd += s.apl_rnd;
    mean.has_successes = mean.has_successes || s.has_successes;
  }
  const double n = static_cast<double>(repeats);
  mean.edges = static_cast<std::size_t>(std::llround(edges / n));
  mean.success_rate /= n;
  mean.avg_links_visited /= n;
  mean.avg_docs_retrieved /= n;
  mean.avg_deepness /= n;
  mean.cc /= n;
  mean.apl /= n;
  mean.cc_rnd = cc_rnd / n;
  mean.apl_rnd = apl_rnd / n;
  return mean;
}

// ---------------------------------------------------------------------------
// CSV output

namespace csv {

inline std::string real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline constexpr std::string_view kTraceHeader =
    "query_id,origin,strategy,success,deepness,links_visited,docs_found,messages";
inline constexpr std::string_view kStatsHeader =
    "nodes,edges,strategy,success_rate,avg_links,avg_docs,avg_deepness,cc,apl,cc_rnd,apl_rnd,"
    "cc_ratio";
inline constexpr std::string_view kSweepHeader =
    "n_nodes,n_edges,CC_prosa,APL_prosa,CC_rnd,APL_rnd,ratio";

inline void write_trace_row(std::ostream& out, const QueryTrace& t, Strategy s) {
  out << t.query_id << ',' << t.origin << ',' << to_string(s) << ',' << (t.success ? 1 : 0)
      << ',' << t.deepness << ',' << t.edges_traversed.size() << ',' << t.total_docs_found << ','
      << t.messages_sent << '\n';
}

inline void write_traces(std::ostream& out, std::span<const QueryTrace> traces, Strategy s,
                         bool header = true) {
  if (header) out << kTraceHeader << '\n';
  for (const auto& t : traces) write_trace_row(out, t, s);
}

inline void write_stats_row(std::ostream& out, const ExperimentStats& st, Strategy s) {
  out << st.nodes << ',' << st.edges << ',' << to_string(s) << ',' << real(st.success_rate) << ','
      << real(st.avg_links_visited) << ',' << real(st.avg_docs_retrieved) << ','
      << real(st.avg_deepness) << ',' << real(st.cc) << ',' << real(st.apl) << ','
      << real(st.cc_rnd) << ',' << real(st.apl_rnd) << ',' << real(st.cc_ratio()) << '\n';
}

inline void write_sweep_row(std::ostream& out, const ExperimentStats& st) {
  out << st.nodes << ',' << st.edges << ',' << real(st.cc) << ',' << real(st.apl) << ','
      << real(st.cc_rnd) << ',' << real(st.apl_rnd) << ',' << real(st.cc_ratio()) << '\n';
}

}  // namespace csv

/// One PROSA run per config, rows in config order.
inline std::vector<ExperimentStats> sweep(std::span<const ExperimentConfig> configs,
                                          std::size_t repeats = 1) {
  std::vector<ExperimentStats> rows;
  rows.reserve(configs.size());
  for (auto config : configs) {
    config.strategy = Strategy::Prosa;
    rows.push_back(run_repeated(config, repeats));
  }
  return rows;
}

}  // namespace prosa
