// Peer state, the Peer List and the directed link lifecycle AL -> TSL -> FSL.
#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prosa/vsm.hpp"

namespace prosa {

using PeerId = std::uint32_t;
using Rng = std::mt19937_64;

/// Strength order: AL < TSL < FSL. Links only ever move upward.
enum class LinkKind : std::uint8_t { AL = 0, TSL = 1, FSL = 2 };

inline std::string_view to_string(LinkKind kind) {
  switch (kind) {
    case LinkKind::AL: return "AL";
    case LinkKind::TSL: return "TSL";
    case LinkKind::FSL: return "FSL";
  }
  return "?";
}

inline LinkKind parse_link_kind(std::string_view text) {
  if (text == "AL") return LinkKind::AL;
  if (text == "TSL") return LinkKind::TSL;
  if (text == "FSL") return LinkKind::FSL;
  throw std::invalid_argument("unknown link kind: " + std::string(text));
}

struct LinkEntry {
  PeerId target = 0;
  LinkKind kind = LinkKind::AL;
  // Absent for AL; the TPV for TSL; the provider PV for FSL.
  std::optional<TermVector> knowledge;
  // Insertion order within the owning Peer List, used for eviction.
  std::uint64_t seq = 0;
};

struct Peer {
  PeerId id = 0;
  std::vector<Document> documents;
  std::vector<TermVector> doc_vectors;  // parallel to documents
  TermVector pv;
  std::map<PeerId, LinkEntry> peer_list;
  std::uint64_t next_link_seq = 0;

  // term -> (index into documents, DV weight). Rebuilt incrementally.
  std::unordered_map<TermId, std::vector<std::pair<std::uint32_t, double>>> postings;

  bool holds(std::uint64_t doc_id) const {
    return std::any_of(documents.begin(), documents.end(),
                       [&](const Document& d) { return d.doc_id == doc_id; });
  }
};

struct Network {
  std::vector<Peer> peers;  // peers[i].id == i

  std::size_t size() const { return peers.size(); }
  Peer& at(PeerId id) {
    if (id >= peers.size()) throw std::out_of_range("unknown peer " + std::to_string(id));
    return peers[id];
  }
  const Peer& at(PeerId id) const {
    if (id >= peers.size()) throw std::out_of_range("unknown peer " + std::to_string(id));
    return peers[id];
  }
};

namespace detail {

// Drops the weakest-kind, oldest entry other than `keep` while the list is
// over capacity. capacity 0 means unbounded.
inline void enforce_capacity(Peer& peer, std::size_t capacity, PeerId keep) {
  if (capacity == 0) return;
  while (peer.peer_list.size() > capacity) {
    auto victim = peer.peer_list.end();
    for (auto it = peer.peer_list.begin(); it != peer.peer_list.end(); ++it) {
      if (it->first == keep) continue;
      if (victim == peer.peer_list.end() || it->second.kind < victim->second.kind ||
          (it->second.kind == victim->second.kind && it->second.seq < victim->second.seq)) {
        victim = it;
      }
    }
    if (victim == peer.peer_list.end()) return;
    peer.peer_list.erase(victim);
  }
}

inline LinkEntry& insert_link(Peer& peer, PeerId target, LinkKind kind,
                              std::optional<TermVector> knowledge, std::size_t capacity) {
  if (target == peer.id) throw std::invalid_argument("peer cannot link to itself");
  LinkEntry entry{target, kind, std::move(knowledge), peer.next_link_seq++};
  peer.peer_list.insert_or_assign(target, std::move(entry));
  enforce_capacity(peer, capacity, target);
  return peer.peer_list.at(target);
}

}  // namespace detail

/// Adds min(n_links, |candidates|) distinct ALs drawn uniformly from
/// `candidates`. The peer itself is never linked even if listed.
inline void join_network(Peer& peer, std::span<const PeerId> candidates, std::size_t n_links,
                         Rng& rng, std::size_t pl_capacity = 0) {
  std::vector<PeerId> pool;
  pool.reserve(candidates.size());
  for (PeerId c : candidates) {
    if (c != peer.id && !peer.peer_list.contains(c)) pool.push_back(c);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.empty()) throw std::invalid_argument("network empty; first peer joins with empty PL");
  if (n_links == 0) throw std::invalid_argument("n_links must be at least 1");

  const std::size_t take = std::min(n_links, pool.size());
  // Partial Fisher-Yates: the first `take` slots become the sample.
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  for (std::size_t i = 0; i < take; ++i) {
    detail::insert_link(peer, pool[i], LinkKind::AL, std::nullopt, pl_capacity);
  }
}

/// Peer List update on query receipt. Unknown or AL sender becomes a TSL
/// whose TPV is the QV; a TSL accumulates normalize(TPV + QV); FSL is kept.
inline void note_incoming_query(Peer& receiver, PeerId sender, const TermVector& qv,
                                std::size_t pl_capacity = 0) {
  if (sender == receiver.id) throw std::invalid_argument("peer cannot receive its own query");
  auto it = receiver.peer_list.find(sender);
  if (it == receiver.peer_list.end() || it->second.kind == LinkKind::AL) {
    if (it != receiver.peer_list.end()) {
      it->second.kind = LinkKind::TSL;
      it->second.knowledge = qv.normalize();
      return;
    }
    detail::insert_link(receiver, sender, LinkKind::TSL, qv.normalize(), pl_capacity);
    return;
  }
  if (it->second.kind == LinkKind::TSL) {
    it->second.knowledge = (*it->second.knowledge + qv).normalize();
  }
}

/// After a completed download: the provider's entry becomes an FSL holding
/// its current PV. An existing FSL has its PV refreshed.
inline void promote_to_fsl(Peer& requester, PeerId provider, const TermVector& provider_pv,
                           std::size_t pl_capacity = 0) {
  if (provider == requester.id) throw std::invalid_argument("peer cannot download from itself");
  auto it = requester.peer_list.find(provider);
  if (it != requester.peer_list.end()) {
    it->second.kind = LinkKind::FSL;
    it->second.knowledge = provider_pv;
    return;
  }
  detail::insert_link(requester, provider, LinkKind::FSL, provider_pv, pl_capacity);
}

/// Appends a document and recomputes the peer vector.
inline void ingest_document(Peer& peer, Document doc) {
  TermVector dv = build_document_vector(doc);
  const auto index = static_cast<std::uint32_t>(peer.documents.size());
  for (const auto& [term, weight] : dv.entries()) peer.postings[term].emplace_back(index, weight);
  peer.documents.push_back(std::move(doc));
  peer.doc_vectors.push_back(std::move(dv));
  peer.pv = build_peer_vector(peer.documents);
}

/// Bulk variant of ingest_document: one PV recomputation at the end.
inline void ingest_documents(Peer& peer, std::vector<Document> docs) {
  if (docs.empty()) return;
  for (auto& doc : docs) {
    TermVector dv = build_document_vector(doc);
    const auto index = static_cast<std::uint32_t>(peer.documents.size());
    for (const auto& [term, weight] : dv.entries()) peer.postings[term].emplace_back(index, weight);
    peer.documents.push_back(std::move(doc));
    peer.doc_vectors.push_back(std::move(dv));
  }
  peer.pv = build_peer_vector(peer.documents);
}

/// Which peers a newcomer may pick its ALs from during bootstrap.
enum class JoinOrder {
  Population,  // every other peer of the run is assumed up
  Sequential,  // only peers that joined earlier; peer 0 starts alone
};

/// Creates `n_peers` peers that join in id order, each picking up to
/// `n_links` ALs among the admissible candidates.
inline Network bootstrap_network(std::size_t n_peers, std::vector<std::vector<Document>> corpus,
                                 std::size_t n_links, Rng& rng, std::size_t pl_capacity = 0,
                                 JoinOrder order = JoinOrder::Population) {
  if (!corpus.empty() && corpus.size() != n_peers) {
    throw std::invalid_argument("corpus size does not match peer count");
  }
  Network net;
  net.peers.resize(n_peers);
  std::vector<PeerId> all(n_peers);
  for (std::size_t i = 0; i < n_peers; ++i) {
    all[i] = static_cast<PeerId>(i);
    net.peers[i].id = all[i];
    if (!corpus.empty()) ingest_documents(net.peers[i], std::move(corpus[i]));
  }
  for (std::size_t i = 0; i < n_peers; ++i) {
    const auto candidates = order == JoinOrder::Population
                                ? std::span<const PeerId>(all)
                                : std::span<const PeerId>(all.data(), i);
    if (n_peers > 1 && (order == JoinOrder::Population || i > 0)) {
      join_network(net.peers[i], candidates, n_links, rng, pl_capacity);
    }
  }
  return net;
}

struct Edge {
  PeerId src = 0;
  PeerId dst = 0;
  LinkKind kind = LinkKind::AL;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One directed edge per Peer List entry, sorted by (src, dst).
inline std::vector<Edge> export_graph(const Network& net) {
  std::vector<Edge> edges;
  for (const auto& peer : net.peers) {
    // peer_list is ordered by target, peers by id: output is already sorted.
    for (const auto& [target, link] : peer.peer_list) edges.push_back({peer.id, target, link.kind});
  }
  return edges;
}

inline void write_edge_list(std::ostream& out, std::span<const Edge> edges) {
  for (const auto& e : edges) out << e.src << ' ' << e.dst << ' ' << to_string(e.kind) << '\n';
}

inline std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    Edge e;
    std::string kind;
    if (!(fields >> e.src >> e.dst >> kind)) {
      throw std::runtime_error("malformed edge on line " + std::to_string(line_no));
    }
    e.kind = parse_link_kind(kind);
    edges.push_back(e);
  }
  return edges;
}

}  // namespace prosa
