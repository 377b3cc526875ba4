// Randomized checks of the library-wide invariants.

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "glin/dataset.hpp"
#include "glin/measures.hpp"
#include "oracles.hpp"

namespace glin {
namespace {

constexpr Ordering kStructured[] = {Ordering::CoreNumber, Ordering::Degree, Ordering::PageRank};

std::vector<LinearizationSpec> all_specs(std::uint64_t seed) {
  std::vector<LinearizationSpec> out;
  for (const Labeling lab : {Labeling::RandomLabels, Labeling::NodeRelabeling, Labeling::DefaultLabels}) {
    for (const Ordering o : kStructured) {
      out.push_back({o, false, lab, seed, {}});
      out.push_back({o, true, lab, seed, {}});
    }
    out.push_back({Ordering::Random, false, lab, seed, {}});
    out.push_back({Ordering::DefaultOrder, false, lab, seed, {}});
  }
  return out;
}

TEST(GraphProperties, HandshakeTriangleSymmetry) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = testing::random_graph_sparse_ids(rng, 1, 30);
    std::size_t degree_sum = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) degree_sum += g.degree_at(i);
    ASSERT_EQ(degree_sum, 2 * g.edge_count());

    std::uniform_int_distribution<std::size_t> pick(0, g.node_count() - 1);
    for (int k = 0; k < 10; ++k) {
      const NodeId a = g.nodes()[pick(rng)];
      const NodeId b = g.nodes()[pick(rng)];
      const NodeId c = g.nodes()[pick(rng)];
      const auto ab = shortest_path_len(g, a, b);
      ASSERT_EQ(ab, shortest_path_len(g, b, a));
      const auto bc = shortest_path_len(g, b, c);
      const auto ac = shortest_path_len(g, a, c);
      if (ab && bc) {
        ASSERT_TRUE(ac.has_value());
        ASSERT_LE(*ac, *ab + *bc);
      }
    }
  }
}

TEST(GraphProperties, LineGraphCounts) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = testing::random_graph(rng, 2, 40);
    if (g.edge_count() == 0) continue;
    const LineGraph lg = linegraph(g);
    std::size_t expected = 0;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      const std::size_t d = g.degree_at(i);
      expected += d == 0 ? 0 : d * (d - 1) / 2;
    }
    ASSERT_EQ(lg.graph.node_count(), g.edge_count());
    ASSERT_EQ(lg.graph.edge_count(), expected);
  }
}

// v is in the k-core iff repeated removal of nodes with degree < k keeps it.
bool survives_peeling(const Graph& g, std::size_t v, std::size_t k) {
  const std::size_t n = g.node_count();
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = g.degree_at(i);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && deg[i] < k) {
        alive[i] = false;
        changed = true;
        for (const NodeId u : g.neighbors_at(i)) --deg[*g.index_of(u)];
      }
    }
  }
  return alive[v];
}

TEST(MeasureProperties, CoreNumbersSurvivePeeling) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = testing::random_graph(rng, 1, 12);
    const auto core = core_numbers(g);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      ASSERT_TRUE(survives_peeling(g, v, core[v]));
      ASSERT_FALSE(survives_peeling(g, v, core[v] + 1));
    }
  }
}

TEST(MeasureProperties, RankingsAreBijectionsAndRespectScores) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = testing::random_graph_sparse_ids(rng, 1, 30);
    for (const RankMethod m : {RankMethod::Degree, RankMethod::PageRank, RankMethod::CoreNumber}) {
      std::vector<NodeId> first;
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const NodeRanking r = rank_nodes(g, m, seed);
        auto sorted = r.order;
        std::sort(sorted.begin(), sorted.end());
        ASSERT_EQ(sorted, g.nodes());
        const auto pos = r.positions(g);
        for (std::size_t a = 0; a < g.node_count(); ++a) {
          for (std::size_t b = 0; b < g.node_count(); ++b) {
            // Strictly higher score (beyond rounding noise) comes first.
            if (r.scores[a] > r.scores[b] + 1e-9) ASSERT_LT(pos[a], pos[b]);
          }
        }
        if (seed == 0) first = r.order;
      }
      ASSERT_EQ(rank_nodes(g, m, 0).order, first);
    }
  }
}

TEST(MeasureProperties, PageRankMass) {
  std::mt19937_64 rng(104);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = testing::random_graph(rng, 1, 60, 0.0, 0.2);
    const auto pr = pagerank(g);
    ASSERT_NEAR(std::accumulate(pr.begin(), pr.end(), 0.0), 1.0, 1e-6);
  }
}

TEST(LinearizationProperties, SoundnessAcrossMethods) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 150; ++trial) {
    GraphRecord rec;
    rec.graph = testing::random_graph_sparse_ids(rng, 2, 25);
    rec.default_edge_order = rec.graph.edges();
    std::shuffle(rec.default_edge_order.begin(), rec.default_edge_order.end(), rng);
    for (const LinearizationSpec& spec : all_specs(rng())) {
      const LinearizedGraph lg = linearize_record(rec, spec);
      ASSERT_FALSE(validate_linearization(rec.graph, lg).has_value()) << spec.method_name();
      const LinearizedGraph again = linearize_record(rec, spec);
      ASSERT_EQ(lg.edge_sequence, again.edge_sequence);
      ASSERT_EQ(lg.labels, again.labels);
      if (spec.labeling == Labeling::NodeRelabeling && !lg.edge_sequence.empty()) {
        ASSERT_TRUE(lg.edge_sequence.front().touches(0)) << spec.method_name();
      }
    }
  }
}

TEST(LinearizationProperties, UniqueTopNodeLeadsForEverySeed) {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = testing::random_graph(rng, 3, 20);
    for (const Ordering o : kStructured) {
      const NodeRanking r = rank_nodes(g, *rank_method(o), 0);
      const double top = r.scores[*g.index_of(r.order[0])];
      const bool unique = r.order.size() == 1 || r.scores[*g.index_of(r.order[1])] < top - 1e-9;
      if (!unique || g.degree(r.order[0]) == 0) continue;
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const LinearizedGraph lg = linearize(g, {o, false, Labeling::DefaultLabels, seed, {}});
        ASSERT_EQ(lg.edge_sequence.front().u, lg.label_of(r.order[0]));
      }
    }
  }
}

TEST(LinearizationProperties, LabelSeedIsolation) {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    GraphRecord rec;
    rec.graph = testing::random_graph(rng, 2, 20);
    rec.default_edge_order = rec.graph.edges();
    for (LinearizationSpec spec : all_specs(5)) {
      if (spec.labeling != Labeling::RandomLabels) continue;
      spec.label_seed = 1;
      const auto a = linearize_record(rec, spec);
      spec.label_seed = 99;
      const auto b = linearize_record(rec, spec);
      for (std::size_t i = 0; i < a.edge_sequence.size(); ++i) {
        ASSERT_EQ(a.original_of(a.edge_sequence[i].u), b.original_of(b.edge_sequence[i].u));
        ASSERT_EQ(a.original_of(a.edge_sequence[i].v), b.original_of(b.edge_sequence[i].v));
      }
    }
  }
}

TEST(DatasetProperties, GraphWaveBoundsAndTruths) {
  const Dataset ds = build_dataset("graphwave", 108);
  for (const auto& e : ds.entries) {
    const auto& params = e.record.params;
    const int base = params.at("base_size").get<int>();
    ASSERT_GE(base, 3);
    ASSERT_LE(base, 20);
    for (const auto& m : params.at("motifs")) {
      const MotifKind kind = parse_motif_kind(m.at("shape").get<std::string>());
      const SizeRange range = motif_size_range(kind);
      const int size = m.at("size").get<int>();
      ASSERT_GE(size, range.lo);
      ASSERT_LE(size, range.hi);
    }
    // ShortestPath answers 0 exactly when the pair is disconnected.
    const TaskInstance* sp = e.task(TaskKind::ShortestPath);
    ASSERT_NE(sp->params[0], sp->params[1]);
    const bool reachable = std::get<bool>(compute_truth(e.record.graph, TaskKind::PathExistence, sp->params));
    ASSERT_EQ(std::get<std::int64_t>(sp->truth) == 0, !reachable);
  }
}

TEST(DatasetProperties, GraphQAShortestPathZeroIffDisconnected) {
  const Dataset ds = build_dataset("graphqa", 109);
  std::size_t yes = 0;
  std::size_t total = 0;
  for (const auto& e : ds.entries) {
    const TaskInstance* sp = e.task(TaskKind::ShortestPath);
    const bool reachable = std::get<bool>(compute_truth(e.record.graph, TaskKind::PathExistence, sp->params));
    ASSERT_EQ(std::get<std::int64_t>(sp->truth) == 0, !reachable);
    yes += std::get<bool>(e.task(TaskKind::EdgeExistence)->truth) ? 1 : 0;
    ++total;
  }
  EXPECT_NEAR(static_cast<double>(yes) / static_cast<double>(total), 0.5, 0.05);
}

}  // namespace
}  // namespace glin
