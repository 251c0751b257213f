#include <gtest/gtest.h>

#include "support/checks.hpp"

using namespace prosa;

namespace {

constexpr TermId kA = 1, kB = 2;

Network ring(std::size_t n, PeerId match_at) {
  Network net;
  net.peers.resize(n);
  for (PeerId i = 0; i < n; ++i) {
    net.peers[i].id = i;
    ingest_document(net.peers[i], Document{i, {{i == match_at ? kA : kB, 1}}});
  }
  for (PeerId i = 0; i < n; ++i) {
    detail::insert_link(net.at(i), (i + 1) % n, LinkKind::AL, std::nullopt, 0);
  }
  return net;
}

}  // namespace

TEST(Flood, ReachesWithinTtl) {
  const auto net = ring(10, 4);
  auto t = flood_query(net, 0, build_query_vector({kA}), 1, 4, 0.5);
  EXPECT_TRUE(t.success);
  EXPECT_EQ(t.deepness, 4u);
  t = flood_query(net, 0, build_query_vector({kA}), 1, 3, 0.5);
  EXPECT_FALSE(t.success);
}

TEST(Flood, VisitsEveryEdgeOnConnectedGraph) {
  Rng rng(2);
  std::vector<std::vector<Document>> docs(60);
  for (PeerId i = 0; i < 60; ++i) docs[i] = {Document{i, {{kB, 1}}}};
  const auto net = bootstrap_network(60, docs, 4, rng);
  const auto edges = export_graph(net);
  const auto t = flood_query(net, 0, build_query_vector({kA}), 1, 60, 0.5);
  // Every edge out of a reached peer is used except ones back to the sender.
  EXPECT_GE(t.edges_traversed.size(), edges.size() * 3 / 4);
  EXPECT_LE(t.edges_traversed.size(), edges.size());
}

TEST(Flood, DoesNotMutate) {
  const auto net = ring(10, 4);
  const Network copy = net;
  flood_query(net, 0, build_query_vector({kA}), 1, 10, 0.5);
  EXPECT_TRUE(checks::same_network(copy, net));
}

TEST(RandomWalk, FindsMatchOnRing) {
  const auto net = ring(10, 4);
  Rng rng(1);
  const auto t = random_walk_query(net, 0, build_query_vector({kA}), 1, 15, 0.5, rng);
  EXPECT_TRUE(t.success);
  EXPECT_EQ(t.deepness, 4u);
  EXPECT_EQ(t.edges_traversed.size(), 4u);
}

TEST(RandomWalk, StopsAtTtlOrDeadEnd) {
  const auto net = ring(10, 7);
  Rng rng(1);
  const auto t = random_walk_query(net, 0, build_query_vector({kA}), 1, 5, 0.5, rng);
  EXPECT_FALSE(t.success);
  EXPECT_EQ(t.messages_sent, 5u);

  Network line;
  line.peers.resize(2);
  for (PeerId i = 0; i < 2; ++i) {
    line.peers[i].id = i;
    ingest_document(line.peers[i], Document{i, {{kB, 1}}});
  }
  detail::insert_link(line.at(0), 1, LinkKind::AL, std::nullopt, 0);
  const auto u = random_walk_query(line, 0, build_query_vector({kA}), 1, 15, 0.5, rng);
  EXPECT_EQ(u.messages_sent, 1u);
}

TEST(RandomWalk, SeedReproducibleAndPure) {
  Rng boot(3);
  std::vector<std::vector<Document>> docs(40);
  for (PeerId i = 0; i < 40; ++i) docs[i] = {Document{i, {{i % 7 == 0 ? kA : kB, 1}}}};
  const auto net = bootstrap_network(40, docs, 3, boot);
  const Network copy = net;
  Rng r1(8), r2(8);
  for (int q = 0; q < 50; ++q) {
    const auto a = random_walk_query(net, q % 40, build_query_vector({kA}), 3, 15, 0.5, r1);
    const auto b = random_walk_query(net, q % 40, build_query_vector({kA}), 3, 15, 0.5, r2);
    EXPECT_EQ(a.edges_traversed, b.edges_traversed);
    EXPECT_EQ(a.total_docs_found, b.total_docs_found);
  }
  EXPECT_TRUE(checks::same_network(copy, net));
}

TEST(Baselines, LocalSatisfaction) {
  const auto net = ring(4, 0);
  Rng rng(1);
  EXPECT_EQ(flood_query(net, 0, build_query_vector({kA}), 1, 4, 0.5).messages_sent, 0u);
  EXPECT_EQ(random_walk_query(net, 0, build_query_vector({kA}), 1, 4, 0.5, rng).messages_sent, 0u);
}
