#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "glin/measures.hpp"
#include "oracles.hpp"

namespace glin {
namespace {

Graph make(std::vector<NodeId> nodes, std::vector<EdgePair> edges) { return Graph::build(nodes, edges); }

TEST(Degree, CountsIncidentEdges) {
  const Graph g = make({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  EXPECT_EQ(degree_centrality(g), (std::vector<std::size_t>{3, 2, 2, 1}));
}

TEST(CoreNumbers, CliqueWithTail) {
  // K4 on 0..3 plus the path 3-4-5.
  const Graph g = make({0, 1, 2, 3, 4, 5}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  EXPECT_EQ(core_numbers(g), (std::vector<std::size_t>{3, 3, 3, 3, 1, 1}));
}

TEST(CoreNumbers, IsolatedNodeIsZero) {
  const Graph g = make({0, 1, 2}, {{0, 1}});
  EXPECT_EQ(core_numbers(g), (std::vector<std::size_t>{1, 1, 0}));
}

TEST(CoreNumbers, MatchSubsetEnumeration) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = testing::random_graph_sparse_ids(rng, 1, 12);
    ASSERT_EQ(core_numbers(g), testing::brute_core_numbers(g)) << g.canonical_string();
  }
}

TEST(PageRank, MatchesDenseOracleAndSumsToOne) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = testing::random_graph(rng, 1, 50, 0.0, 0.3);
    const auto pr = pagerank(g);
    const auto oracle = testing::dense_pagerank(g);
    ASSERT_EQ(pr.size(), g.node_count());
    for (std::size_t i = 0; i < pr.size(); ++i) ASSERT_NEAR(pr[i], oracle[i], 1e-6);
    ASSERT_NEAR(std::accumulate(pr.begin(), pr.end(), 0.0), 1.0, 1e-9);
  }
}

TEST(PageRank, StarCentreDominates) {
  const Graph g = make({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto pr = pagerank(g);
  for (std::size_t i = 1; i < 5; ++i) {
    EXPECT_GT(pr[0], pr[i]);
    EXPECT_NEAR(pr[i], pr[1], 1e-12);
  }
}

TEST(PageRank, ParamsValidated) {
  const Graph g = make({0, 1}, {{0, 1}});
  EXPECT_THROW(pagerank(g, {1.0, 1e-8, 100}), std::invalid_argument);
  EXPECT_THROW(pagerank(g, {0.85, 0.0, 100}), std::invalid_argument);
  EXPECT_THROW(pagerank(g, {0.85, 1e-8, 0}), std::invalid_argument);
}

TEST(RankNodes, SortedByScoreDescending) {
  const Graph g = make({0, 1, 2, 3, 4, 5}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}});
  for (const RankMethod m : {RankMethod::Degree, RankMethod::PageRank, RankMethod::CoreNumber}) {
    const NodeRanking r = rank_nodes(g, m, 9);
    ASSERT_EQ(r.order.size(), 6u);
    for (std::size_t i = 1; i < r.order.size(); ++i) {
      EXPECT_GE(r.scores[*g.index_of(r.order[i - 1])], r.scores[*g.index_of(r.order[i])] - 1e-12);
    }
  }
  EXPECT_EQ(rank_nodes(g, RankMethod::Degree, 9).order.front(), 3u);
}

TEST(RankNodes, DeterministicPerSeedAndTiesVary) {
  // A cycle: every node ties under every measure.
  std::vector<NodeId> nodes(12);
  std::vector<EdgePair> edges;
  for (NodeId i = 0; i < 12; ++i) {
    nodes[i] = i;
    edges.push_back({i, static_cast<NodeId>((i + 1) % 12)});
  }
  const Graph g = make(nodes, edges);
  std::set<std::vector<NodeId>> seen;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = rank_nodes(g, RankMethod::PageRank, seed).order;
    EXPECT_EQ(a, rank_nodes(g, RankMethod::PageRank, seed).order);
    seen.insert(a);
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(RankNodes, PositionsInvertOrder) {
  const Graph g = make({10, 20, 30}, {{10, 20}, {20, 30}});
  const NodeRanking r = rank_nodes(g, RankMethod::Degree, 0);
  const auto pos = r.positions(g);
  for (std::size_t i = 0; i < r.order.size(); ++i) EXPECT_EQ(pos[*g.index_of(r.order[i])], i);
  EXPECT_EQ(r.order.front(), 20u);
}

}  // namespace
}  // namespace glin
