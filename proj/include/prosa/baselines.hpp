// Comparison strategies: pure flooding and a single random walker. Both read
// the overlay without mutating it and fill the same QueryTrace as PROSA.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "prosa/overlay.hpp"
#include "prosa/routing.hpp"

namespace prosa {

/// Breadth-first propagation over every PL link, Gnutella style: each peer
/// processes a query once, answers with its matches, and rebroadcasts to all
/// of its links except the one it heard from while hops remain.
inline QueryTrace flood_query(const Network& net, PeerId origin, const TermVector& qv,
                              std::uint32_t required, std::uint32_t ttl, double theta_match,
                              std::uint64_t query_id = 0) {
  if (origin >= net.size()) throw std::out_of_range("unknown origin peer");
  if (ttl == 0) throw std::invalid_argument("ttl must be at least 1");
  if (required == 0) throw std::invalid_argument("required must be at least 1");

  QueryTrace trace;
  trace.query_id = query_id;
  trace.origin = origin;

  const auto own = local_match(net.at(origin), qv, theta_match);
  if (own.size() >= required) {
    trace.success = true;
    trace.total_docs_found = required;
    return trace;
  }

  struct Hop {
    PeerId receiver;
    PeerId sender;
    std::uint32_t hops;
  };
  std::deque<Hop> queue;
  std::unordered_set<PeerId> processed{origin};
  auto broadcast = [&](PeerId from, PeerId skip, std::uint32_t hops) {
    for (const auto& [target, link] : net.at(from).peer_list) {
      if (target == skip) continue;
      trace.edges_traversed.emplace(from, target);
      ++trace.messages_sent;
      queue.push_back({target, from, hops});
    }
  };
  broadcast(origin, origin, 1);

  bool responded = false;
  while (!queue.empty()) {
    const Hop msg = queue.front();
    queue.pop_front();
    if (!processed.insert(msg.receiver).second) {
      ++trace.duplicates_dropped;
      continue;
    }
    trace.max_hops = std::max(trace.max_hops, msg.hops);
    const Peer& peer = net.at(msg.receiver);
    auto matches = local_match(peer, qv, theta_match);
    if (!matches.empty()) {
      if (matches.size() > required) matches.resize(required);
      if (!responded) {
        trace.first_response_hops = msg.hops;
        responded = true;
      }
      trace.total_docs_found += matches.size();
      if (!trace.fulfilled_hops && trace.total_docs_found >= required) trace.fulfilled_hops = msg.hops;
      trace.responders.push_back(msg.receiver);
      trace.responses.push_back({msg.receiver, query_id, std::move(matches), peer.pv, msg.hops});
    }
    if (msg.hops < ttl) broadcast(msg.receiver, msg.sender, msg.hops + 1);
  }
  trace.success = trace.total_docs_found >= 1;
  trace.deepness = trace.fulfilled_hops.value_or(trace.first_response_hops);
  trace.docs_downloaded = download_policy(trace.responses, required).size();
  return trace;
}

/// One walker picking a uniformly random PL link per step, avoiding the link
/// back to the previous peer when another exists. Each peer answers at most
/// once; the walk stops once `required` documents were offered, at a dead
/// end, or after `ttl` steps.
inline QueryTrace random_walk_query(const Network& net, PeerId origin, const TermVector& qv,
                                    std::uint32_t required, std::uint32_t ttl,
                                    double theta_match, Rng& rng, std::uint64_t query_id = 0) {
  if (origin >= net.size()) throw std::out_of_range("unknown origin peer");
  if (ttl == 0) throw std::invalid_argument("ttl must be at least 1");
  if (required == 0) throw std::invalid_argument("required must be at least 1");

  QueryTrace trace;
  trace.query_id = query_id;
  trace.origin = origin;

  const auto own = local_match(net.at(origin), qv, theta_match);
  if (own.size() >= required) {
    trace.success = true;
    trace.total_docs_found = required;
    return trace;
  }

  std::unordered_set<PeerId> answered{origin};
  std::uint32_t remaining = required;
  PeerId current = origin;
  std::optional<PeerId> previous;
  bool responded = false;
  std::vector<PeerId> options;
  for (std::uint32_t step = 1; step <= ttl && remaining > 0; ++step) {
    options.clear();
    for (const auto& [target, link] : net.at(current).peer_list) {
      if (previous && target == *previous) continue;
      options.push_back(target);
    }
    if (options.empty() && previous && net.at(current).peer_list.contains(*previous)) {
      options.push_back(*previous);
    }
    if (options.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const PeerId next = options[pick(rng)];
    trace.edges_traversed.emplace(current, next);
    ++trace.messages_sent;
    trace.max_hops = step;
    previous = current;
    current = next;

    if (!answered.insert(current).second) continue;
    const Peer& peer = net.at(current);
    auto matches = local_match(peer, qv, theta_match);
    if (matches.empty()) continue;
    if (matches.size() > remaining) matches.resize(remaining);
    if (!responded) {
      trace.first_response_hops = step;
      responded = true;
    }
    remaining -= static_cast<std::uint32_t>(matches.size());
    trace.total_docs_found += matches.size();
    if (!trace.fulfilled_hops && trace.total_docs_found >= required) trace.fulfilled_hops = step;
    trace.responders.push_back(current);
    trace.responses.push_back({current, query_id, std::move(matches), peer.pv, step});
  }
  trace.success = trace.total_docs_found >= 1;
  trace.deepness = trace.fulfilled_hops.value_or(trace.first_response_hops);
  trace.docs_downloaded = download_policy(trace.responses, required).size();
  return trace;
}

}  // namespace prosa
