#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "glin/graph.hpp"

namespace glin {

// All per-node results below are indexed by node index, i.e. aligned with
// Graph::nodes().

struct PageRankParams {
  double damping = 0.85;
  /// Stop once the L1 change between sweeps is at most this.
  double tolerance = 1e-8;
  int max_iterations = 100;

  /// Throws std::invalid_argument unless 0 < damping < 1, tolerance > 0 and
  /// max_iterations > 0.
  void validate() const;
};

std::vector<std::size_t> degree_centrality(const Graph& g);

/// Power iteration on the undirected graph with every edge walked both ways.
/// Mass sitting on degree-0 nodes is spread uniformly, so the scores always
/// sum to 1.
std::vector<double> pagerank(const Graph& g, const PageRankParams& params = {});

/// k-core decomposition by minimum-degree peeling (bucket queue, O(n + m)).
std::vector<std::size_t> core_numbers(const Graph& g);

enum class RankMethod { Degree, PageRank, CoreNumber };

std::string_view to_string(RankMethod method);

struct NodeRanking {
  RankMethod method = RankMethod::Degree;
  /// Indexed by node index.
  std::vector<double> scores;
  /// Node ids, most important first.
  std::vector<NodeId> order;
  std::uint64_t seed = 0;

  /// Position of each node index in `order`.
  std::vector<std::size_t> positions(const Graph& g) const;
};

/// Scores every node by `method` and sorts descending. Equal scores are put in
/// a random order drawn from a stream seeded by (seed, graph hash, method), so
/// the same triple always gives the same order.
///
/// PageRank scores are compared after rounding to 12 decimal places so that
/// symmetric nodes whose values differ only by floating-point noise still count
/// as tied.
NodeRanking rank_nodes(const Graph& g, RankMethod method, std::uint64_t seed);

}  // namespace glin
