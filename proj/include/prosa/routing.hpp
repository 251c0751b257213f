// Semantic query routing: local matching, best-link forwarding, semantic
// flooding, responses, downloads and FSL creation.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "prosa/overlay.hpp"
#include "prosa/vsm.hpp"

namespace prosa {

struct RoutingConfig {
  double theta_match = 1.0;   // minimum relevance for a document to count
  double theta_flood = 0.5;   // link relevance needed to receive a flooded copy
  std::uint32_t ttl = 15;
  bool partial_fallback_forward = false;
  bool ingest_downloads = false;  // copies join the requester's shared set
  std::size_t pl_capacity = 0;  // 0 = unbounded
  bool record_events = false;   // fill QueryTrace::events
  bool tsl_to_source = false;   // TSL points at the query source instead of the forwarder
};

struct QueryMessage {
  std::uint64_t query_id = 0;
  TermVector qv;
  PeerId source = 0;
  std::uint32_t remaining = 1;
  std::uint32_t hops = 0;
};

struct Match {
  std::uint64_t doc_id = 0;
  double score = 0.0;
  friend bool operator==(const Match&, const Match&) = default;
};

struct ResponseMessage {
  PeerId responder = 0;
  std::uint64_t query_id = 0;
  std::vector<Match> matches;
  TermVector responder_pv;
  std::uint32_t hops = 0;
};

/// One processed receipt, recorded only when RoutingConfig::record_events.
struct ForwardEvent {
  PeerId sender = 0;
  PeerId receiver = 0;
  std::uint32_t hops = 0;
  std::uint32_t remaining_in = 0;
  std::size_t local_matches = 0;
  std::vector<PeerId> path;                 // origin .. receiver
  std::vector<PeerId> forwarded_to;
  std::vector<std::uint32_t> remaining_out; // parallel to forwarded_to
};

struct QueryTrace {
  std::uint64_t query_id = 0;
  PeerId origin = 0;
  std::set<std::pair<PeerId, PeerId>> edges_traversed;
  std::vector<PeerId> responders;
  std::vector<ResponseMessage> responses;
  std::uint64_t total_docs_found = 0;
  std::uint64_t docs_downloaded = 0;
  std::uint32_t deepness = 0;
  std::uint32_t first_response_hops = 0;
  std::optional<std::uint32_t> fulfilled_hops;
  bool success = false;
  std::uint64_t messages_sent = 0;
  std::uint64_t duplicates_dropped = 0;
  std::uint32_t max_hops = 0;
  std::vector<ForwardEvent> events;
};

/// Documents with score >= threshold (and a non-empty term overlap), sorted by
/// descending score, ties on ascending doc_id.
inline std::vector<Match> local_match(const Peer& peer, const TermVector& qv, double threshold) {
  if (threshold < 0.0) throw std::invalid_argument("match threshold must be non-negative");
  std::unordered_map<std::uint32_t, double> scores;
  for (const auto& [term, qweight] : qv.entries()) {
    auto it = peer.postings.find(term);
    if (it == peer.postings.end()) continue;
    for (const auto& [index, dweight] : it->second) scores[index] += dweight * qweight;
  }
  std::vector<Match> out;
  out.reserve(scores.size());
  for (const auto& [index, score] : scores) {
    if (score > 0.0 && score >= threshold) out.push_back({peer.documents[index].doc_id, score});
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  return out;
}

namespace detail {

template <typename Excluded>
std::optional<PeerId> pick_uniform(const Peer& peer, const Excluded& excluded, bool semantic_too,
                                   Rng& rng) {
  std::vector<PeerId> pool;
  for (const auto& [target, link] : peer.peer_list) {
    if (excluded(target)) continue;
    if (!semantic_too && link.kind != LinkKind::AL) continue;
    pool.push_back(target);
  }
  if (pool.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

}  // namespace detail

/// Highest-relevance TSL/FSL not in `excluded` (ties to the smallest id).
/// With no usable semantic link, or when every semantic link scores zero
/// against the query, a uniformly random remaining link is chosen.
template <typename Excluded>
std::optional<PeerId> select_next_hop(const Peer& peer, const TermVector& qv,
                                      const Excluded& excluded, Rng& rng) {
  std::optional<PeerId> best;
  double best_score = -1.0;
  bool any_semantic = false;
  for (const auto& [target, link] : peer.peer_list) {
    if (link.kind == LinkKind::AL || excluded(target)) continue;
    any_semantic = true;
    const double score = relevance(*link.knowledge, qv);
    if (score > best_score) {
      best_score = score;
      best = target;
    }
  }
  if (best && best_score > 0.0) return best;
  return detail::pick_uniform(peer, excluded, any_semantic, rng);
}

inline std::optional<PeerId> select_next_hop(const Peer& peer, const TermVector& qv,
                                             const std::set<PeerId>& exclude, Rng& rng) {
  return select_next_hop(peer, qv, [&](PeerId p) { return exclude.contains(p); }, rng);
}

struct Download {
  PeerId provider = 0;
  std::uint64_t doc_id = 0;
  double score = 0.0;
  friend bool operator==(const Download&, const Download&) = default;
};

/// Simulated user: accepts offered matches in descending relevance until
/// `required` documents are taken. Ties go to the lower provider, then the
/// lower doc id; a doc id already accepted from another provider is skipped.
inline std::vector<Download> download_policy(const std::vector<ResponseMessage>& responses,
                                             std::uint32_t required) {
  std::vector<Download> offers;
  for (const auto& r : responses) {
    for (const auto& m : r.matches) offers.push_back({r.responder, m.doc_id, m.score});
  }
  std::sort(offers.begin(), offers.end(), [](const Download& a, const Download& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.provider != b.provider) return a.provider < b.provider;
    return a.doc_id < b.doc_id;
  });
  std::vector<Download> accepted;
  std::unordered_set<std::uint64_t> taken;
  for (const auto& offer : offers) {
    if (accepted.size() >= required) break;
    if (!taken.insert(offer.doc_id).second) continue;
    accepted.push_back(offer);
  }
  return accepted;
}

namespace detail {

struct Pending {
  PeerId receiver;
  PeerId sender;
  std::uint32_t remaining;
  std::uint32_t hops;
  std::vector<PeerId> path;  // origin .. sender
};

inline bool on_path(const std::vector<PeerId>& path, PeerId p) {
  return std::find(path.begin(), path.end(), p) != path.end();
}

// Applies the download decision at the origin: FSL to every provider that
// supplied at least one accepted doc, optional ingestion of the copies.
inline void complete_downloads(Network& net, QueryTrace& trace, std::uint32_t required,
                               const RoutingConfig& config) {
  const auto accepted = download_policy(trace.responses, required);
  trace.docs_downloaded = accepted.size();
  Peer& origin = net.at(trace.origin);
  std::map<PeerId, std::vector<std::uint64_t>> by_provider;
  for (const auto& d : accepted) by_provider[d.provider].push_back(d.doc_id);
  std::vector<Document> copies;
  for (const auto& [provider_id, doc_ids] : by_provider) {
    const Peer& provider = net.at(provider_id);
    promote_to_fsl(origin, provider_id, provider.pv, config.pl_capacity);
    if (!config.ingest_downloads) continue;
    for (auto id : doc_ids) {
      if (origin.holds(id)) continue;
      auto it = std::find_if(provider.documents.begin(), provider.documents.end(),
                             [&](const Document& d) { return d.doc_id == id; });
      if (it != provider.documents.end()) copies.push_back(*it);
    }
  }
  ingest_documents(origin, std::move(copies));
}

}  // namespace detail

/// Runs one query through the overlay as a FIFO cascade of message events,
/// mutating Peer Lists (TSLs on receipt, FSLs on download) as it goes.
inline QueryTrace execute_query(Network& net, PeerId origin, const TermVector& qv,
                                std::uint32_t required, const RoutingConfig& config, Rng& rng,
                                std::uint64_t query_id = 0) {
  if (origin >= net.size()) throw std::out_of_range("unknown origin peer");
  if (required == 0) throw std::invalid_argument("required must be at least 1");

  QueryTrace trace;
  trace.query_id = query_id;
  trace.origin = origin;

  const auto own = local_match(net.at(origin), qv, config.theta_match);
  if (own.size() >= required) {
    trace.success = true;
    trace.total_docs_found = required;
    return trace;
  }

  std::deque<detail::Pending> queue;
  std::unordered_set<PeerId> processed{origin};

  auto send = [&](PeerId from, PeerId to, std::uint32_t remaining, std::uint32_t hops,
                  const std::vector<PeerId>& path) {
    trace.edges_traversed.emplace(from, to);
    ++trace.messages_sent;
    queue.push_back({to, from, remaining, hops, path});
  };

  {
    std::vector<PeerId> path{origin};
    auto first = select_next_hop(net.at(origin), qv,
                                 [&](PeerId p) { return p == origin; }, rng);
    if (first) send(origin, *first, required, 1, path);
  }

  bool responded = false;
  while (!queue.empty()) {
    detail::Pending msg = std::move(queue.front());
    queue.pop_front();
    if (!processed.insert(msg.receiver).second) {
      ++trace.duplicates_dropped;
      continue;
    }
    trace.max_hops = std::max(trace.max_hops, msg.hops);

    Peer& peer = net.at(msg.receiver);
    note_incoming_query(peer, config.tsl_to_source ? origin : msg.sender, qv, config.pl_capacity);
    auto matches = local_match(peer, qv, config.theta_match);

    std::vector<PeerId> path = msg.path;
    path.push_back(msg.receiver);
    auto excluded = [&](PeerId p) { return detail::on_path(path, p); };

    ForwardEvent event;
    if (config.record_events) {
      event = {msg.sender, msg.receiver, msg.hops, msg.remaining, matches.size(), path, {}, {}};
    }
    auto forward = [&](PeerId to, std::uint32_t remaining) {
      send(msg.receiver, to, remaining, msg.hops + 1, path);
      if (config.record_events) {
        event.forwarded_to.push_back(to);
        event.remaining_out.push_back(remaining);
      }
    };
    auto respond = [&](std::vector<Match> offered) {
      if (!responded) {
        trace.first_response_hops = msg.hops;
        responded = true;
      }
      trace.total_docs_found += offered.size();
      if (!trace.fulfilled_hops && trace.total_docs_found >= required) trace.fulfilled_hops = msg.hops;
      trace.responders.push_back(msg.receiver);
      trace.responses.push_back({msg.receiver, query_id, std::move(offered), peer.pv, msg.hops});
    };

    const bool may_forward = msg.hops < config.ttl;
    if (matches.empty()) {
      if (may_forward) {
        if (auto next = select_next_hop(peer, qv, excluded, rng)) forward(*next, msg.remaining);
      }
    } else if (matches.size() < msg.remaining) {
      const auto left = static_cast<std::uint32_t>(msg.remaining - matches.size());
      respond(std::move(matches));
      if (may_forward) {
        bool flooded = false;
        for (const auto& [target, link] : peer.peer_list) {
          if (link.kind == LinkKind::AL || excluded(target)) continue;
          if (relevance(*link.knowledge, qv) > config.theta_flood) {
            forward(target, left);
            flooded = true;
          }
        }
        if (!flooded && config.partial_fallback_forward) {
          if (auto next = select_next_hop(peer, qv, excluded, rng)) forward(*next, left);
        }
      }
    } else {
      matches.resize(msg.remaining);
      respond(std::move(matches));
    }
    if (config.record_events) trace.events.push_back(std::move(event));
  }

  trace.success = trace.total_docs_found >= 1;
  trace.deepness = trace.fulfilled_hops.value_or(trace.first_response_hops);
  detail::complete_downloads(net, trace, required, config);
  return trace;
}

}  // namespace prosa
