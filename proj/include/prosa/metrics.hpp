// Small-world measurements over directed overlay snapshots.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "prosa/overlay.hpp"
#include "prosa/routing.hpp"

namespace prosa {

/// Directed graph over nodes 0..n-1 stored as sorted out-adjacency lists.
class GraphSnapshot {
 public:
  GraphSnapshot() = default;

  GraphSnapshot(std::size_t n_nodes, std::span<const std::pair<PeerId, PeerId>> edges)
      : out_(n_nodes) {
    for (const auto& [src, dst] : edges) add(src, dst);
    finish();
  }

  static GraphSnapshot from_edges(std::size_t n_nodes, std::span<const Edge> edges) {
    GraphSnapshot g;
    g.out_.resize(n_nodes);
    for (const auto& e : edges) g.add(e.src, e.dst);
    g.finish();
    return g;
  }

  static GraphSnapshot from_network(const Network& net) {
    auto edges = export_graph(net);
    return from_edges(net.size(), edges);
  }

  std::size_t node_count() const { return out_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const PeerId> out(PeerId n) const { return out_.at(n); }
  bool has_edge(PeerId a, PeerId b) const {
    const auto& adj = out_.at(a);
    return std::binary_search(adj.begin(), adj.end(), b);
  }

 private:
  void add(PeerId src, PeerId dst) {
    if (src == dst) throw std::invalid_argument("self-edge in graph snapshot");
    if (src >= out_.size() || dst >= out_.size()) {
      throw std::out_of_range("edge endpoint outside node range");
    }
    out_[src].push_back(dst);
  }
  void finish() {
    edge_count_ = 0;
    for (auto& adj : out_) {
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
      edge_count_ += adj.size();
    }
  }

  std::vector<std::vector<PeerId>> out_;
  std::size_t edge_count_ = 0;
};

/// How nodes with out-degree <= 1 (0/0 coefficient) enter the graph mean.
enum class LowDegreePolicy { CountAsZero, Exclude };

/// E_real / (k (k-1)) over the out-neighbourhood of `n`; 0 when k <= 1.
inline double clustering_coefficient_node(const GraphSnapshot& g, PeerId n) {
  if (n >= g.node_count()) throw std::out_of_range("unknown node");
  const auto neighbours = g.out(n);
  const std::size_t k = neighbours.size();
  if (k <= 1) return 0.0;
  std::size_t real = 0;
  for (PeerId a : neighbours) {
    // Both lists are sorted: count the intersection.
    const auto adj = g.out(a);
    auto ia = adj.begin();
    auto ib = neighbours.begin();
    while (ia != adj.end() && ib != neighbours.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        real += (*ia != a);
        ++ia;
        ++ib;
      }
    }
  }
  return static_cast<double>(real) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

inline double clustering_coefficient_graph(const GraphSnapshot& g,
                                           LowDegreePolicy policy = LowDegreePolicy::CountAsZero) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  double sum = 0.0;
  std::size_t counted = 0;
  for (PeerId n = 0; n < g.node_count(); ++n) {
    if (policy == LowDegreePolicy::Exclude && g.out(n).size() <= 1) continue;
    sum += clustering_coefficient_node(g, n);
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

/// Clustering coefficient of the equivalent random directed graph.
inline double cc_random(std::uint64_t v, std::uint64_t e) {
  if (v < 2) throw std::invalid_argument("cc_random needs at least two nodes");
  return static_cast<double>(e) / (static_cast<double>(v) * static_cast<double>(v - 1));
}

/// Average path length of the equivalent random graph, ln|V| / ln(|E|/|V|).
inline double apl_random(std::uint64_t v, std::uint64_t e) {
  if (v < 2) throw std::invalid_argument("apl_random needs at least two nodes");
  if (e <= v) throw std::invalid_argument("mean degree <= 1; formula undefined");
  return std::log(static_cast<double>(v)) /
         std::log(static_cast<double>(e) / static_cast<double>(v));
}

struct PathLengthStats {
  double mean = 0.0;              // over reachable ordered pairs
  double reachable_fraction = 0.0;
};

/// All-pairs BFS. Cost is O(V (V + E)); intended for snapshots up to a few
/// thousand nodes.
inline PathLengthStats shortest_path_apl(const GraphSnapshot& g) {
  const std::size_t n = g.node_count();
  PathLengthStats out;
  if (n < 2) return out;
  std::vector<std::uint32_t> dist(n);
  std::vector<PeerId> frontier;
  frontier.reserve(n);
  double total = 0.0;
  std::uint64_t pairs = 0;
  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  for (PeerId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), unseen);
    dist[s] = 0;
    frontier.assign(1, s);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const PeerId u = frontier[head];
      for (PeerId w : g.out(u)) {
        if (dist[w] != unseen) continue;
        dist[w] = dist[u] + 1;
        total += dist[w];
        ++pairs;
        frontier.push_back(w);
      }
    }
  }
  out.mean = pairs == 0 ? 0.0 : total / static_cast<double>(pairs);
  out.reachable_fraction = static_cast<double>(pairs) / (static_cast<double>(n) * (n - 1));
  return out;
}

struct ExperimentStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t queries = 0;
  double success_rate = 0.0;
  double avg_links_visited = 0.0;   // over successful queries
  double avg_docs_retrieved = 0.0;  // over all queries
  double avg_deepness = 0.0;        // over successful queries
  double cc = 0.0;
  double apl = 0.0;                 // mean deepness of network-resolved successes
  double cc_rnd = std::numeric_limits<double>::quiet_NaN();
  double apl_rnd = std::numeric_limits<double>::quiet_NaN();
  bool has_successes = false;       // false: success-only averages are reported as 0

  double cc_ratio() const { return cc_rnd > 0.0 ? cc / cc_rnd : std::numeric_limits<double>::quiet_NaN(); }
};

inline ExperimentStats aggregate_stats(std::span<const QueryTrace> traces, const GraphSnapshot& g,
                                       LowDegreePolicy policy = LowDegreePolicy::CountAsZero) {
  if (traces.empty()) throw std::invalid_argument("no traces to aggregate");
  ExperimentStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.queries = traces.size();
  std::size_t successes = 0;
  double links = 0.0;
  double docs = 0.0;
  double deep = 0.0;
  std::size_t routed = 0;
  for (const auto& t : traces) {
    docs += static_cast<double>(t.total_docs_found);
    if (!t.success) continue;
    ++successes;
    links += static_cast<double>(t.edges_traversed.size());
    deep += t.deepness;
    routed += t.deepness > 0;
  }
  s.success_rate = static_cast<double>(successes) / static_cast<double>(traces.size());
  s.avg_docs_retrieved = docs / static_cast<double>(traces.size());
  s.has_successes = successes > 0;
  if (s.has_successes) {
    s.avg_links_visited = links / static_cast<double>(successes);
    s.avg_deepness = deep / static_cast<double>(successes);
  }
  // Path lengths are defined between distinct peers, so queries answered
  // from the origin's own documents do not enter the estimate.
  s.apl = routed == 0 ? 0.0 : deep / static_cast<double>(routed);
  s.cc = s.nodes == 0 ? 0.0 : clustering_coefficient_graph(g, policy);
  if (s.nodes >= 2) {
    s.cc_rnd = cc_random(s.nodes, s.edges);
    if (s.edges > s.nodes) s.apl_rnd = apl_random(s.nodes, s.edges);
  }
  return s;
}

}  // namespace prosa
