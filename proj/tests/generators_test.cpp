#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "glin/generators.hpp"

namespace glin {
namespace {

bool connected(const Graph& g) {
  const auto comp = connected_components(g);
  return std::all_of(comp.begin(), comp.end(), [](std::size_t c) { return c == 0; });
}

TEST(Motifs, EdgeCounts) {
  for (int k = 4; k <= 11; ++k) {
    EXPECT_EQ(motif_catalog().at(MotifKind::Clique)(k).edges.size(), static_cast<std::size_t>(k * (k - 1) / 2));
    EXPECT_EQ(motif_catalog().at(MotifKind::Star)(k).edges.size(), static_cast<std::size_t>(k - 1));
    EXPECT_EQ(motif_catalog().at(MotifKind::Fan)(k).edges.size(), static_cast<std::size_t>(2 * k - 3));
  }
  const Motif d = make_motif("diamond", 6);
  EXPECT_EQ(d.node_count, 6u);
  EXPECT_EQ(d.edges.size(), 12u);
  for (int levels = 3; levels <= 6; ++levels) {
    const Motif t = make_motif("tree", levels);
    EXPECT_EQ(t.node_count, (1u << levels) - 1);
    EXPECT_EQ(t.edges.size(), t.node_count - 1);
  }
}

TEST(Motifs, ShapesAreWhatTheySay) {
  const Motif star = make_motif("star", 6);
  for (const EdgePair& e : star.edges) EXPECT_TRUE(e.touches(0));
  const Motif fan = make_motif("fan", 6);
  std::vector<NodeId> nodes(fan.node_count);
  for (NodeId i = 0; i < fan.node_count; ++i) nodes[i] = i;
  const Graph g = Graph::build(nodes, fan.edges);
  EXPECT_EQ(g.degree(0), fan.node_count - 1);
  for (NodeId i = 1; i + 1 < fan.node_count; ++i) EXPECT_TRUE(g.has_edge(i, i + 1));
}

TEST(Motifs, BadSizesAndNames) {
  EXPECT_THROW(make_motif("clique", 3), std::invalid_argument);
  EXPECT_THROW(make_motif("clique", 12), std::invalid_argument);
  EXPECT_THROW(make_motif("diamond", 5), std::invalid_argument);
  EXPECT_THROW(make_motif("tree", 7), std::invalid_argument);
  EXPECT_THROW(make_motif("hexagon", 6), UnknownShape);
  EXPECT_EQ(parse_motif_kind("fan"), MotifKind::Fan);
}

TEST(GraphWave, ThirtyCombinations) {
  const auto combos = graphwave_combinations();
  ASSERT_EQ(combos.size(), 30u);
  std::map<std::size_t, int> by_size;
  int same_pairs = 0;
  for (const auto& c : combos) {
    ++by_size[c.size()];
    if (c.size() == 2 && c[0] == c[1]) ++same_pairs;
  }
  EXPECT_EQ(by_size[1], 5);
  EXPECT_EQ(by_size[2], 15);
  EXPECT_EQ(by_size[3], 10);
  EXPECT_EQ(same_pairs, 5);
  std::set<std::vector<MotifKind>> unique(combos.begin(), combos.end());
  EXPECT_EQ(unique.size(), 30u);
}

TEST(GraphWave, DatasetShape) {
  const auto records = gen_graphwave(7);
  ASSERT_EQ(records.size(), 3000u);
  std::map<std::vector<MotifKind>, int> per_combo;
  int exemplars = 0;
  std::set<std::string> ids;
  for (const auto& r : records) {
    ++per_combo[r.motif_shapes];
    exemplars += r.exemplar ? 1 : 0;
    ids.insert(r.id);
    ASSERT_TRUE(r.is_graphwave());
    ASSERT_TRUE(connected(r.graph)) << r.id;
    auto order = r.default_edge_order;
    for (auto& e : order) e = e.canonical();
    std::sort(order.begin(), order.end());
    ASSERT_EQ(order, r.graph.edges()) << r.id;
  }
  EXPECT_EQ(per_combo.size(), 30u);
  for (const auto& [combo, count] : per_combo) EXPECT_EQ(count, 100);
  EXPECT_EQ(exemplars, 1);
  EXPECT_EQ(ids.size(), 3000u);
}

TEST(GraphWave, Deterministic) {
  const auto combo = graphwave_combinations()[17];
  const auto a = gen_graphwave_graph(3, 42, combo);
  const auto b = gen_graphwave_graph(3, 42, combo);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.default_edge_order, b.default_edge_order);
  EXPECT_EQ(a.params, b.params);
  const auto c = gen_graphwave_graph(4, 42, combo);
  EXPECT_FALSE(a.graph == c.graph && a.default_edge_order == c.default_edge_order);
}

TEST(GraphQA, CountsAndSizes) {
  const auto records = gen_graphqa(11);
  ASSERT_EQ(records.size(), 2300u);
  std::map<std::string, int> per_source;
  for (const auto& r : records) {
    ++per_source[r.source];
    ASSERT_GE(r.graph.node_count(), 5u) << r.id;
    ASSERT_LE(r.graph.node_count(), 20u) << r.id;
    const std::size_t n = r.graph.node_count();
    if (r.source == "complete") ASSERT_EQ(r.graph.edge_count(), n * (n - 1) / 2);
    if (r.source == "path" || r.source == "star") {
      ASSERT_EQ(r.graph.edge_count(), n - 1);
      ASSERT_TRUE(connected(r.graph));
    }
    if (r.source == "star") ASSERT_EQ(r.graph.max_degree(), n - 1);
    if (r.source == "sbm") {
      for (std::size_t i = 0; i < n; ++i) ASSERT_GT(r.graph.degree_at(i), 0u) << r.id;
    }
  }
  for (const char* s : {"er", "ba", "sfn", "sbm"}) EXPECT_EQ(per_source[s], 500) << s;
  for (const char* s : {"path", "complete", "star"}) EXPECT_EQ(per_source[s], 100) << s;
}

TEST(GraphQA, UnknownSource) { EXPECT_THROW(gen_graphqa_graph(1, 0, "lattice"), std::invalid_argument); }

}  // namespace
}  // namespace glin
