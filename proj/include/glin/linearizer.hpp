#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "glin/graph.hpp"
#include "glin/measures.hpp"

namespace glin {

enum class Ordering { CoreNumber, Degree, PageRank, Random, DefaultOrder };
enum class Labeling { RandomLabels, NodeRelabeling, DefaultLabels };

std::string_view to_string(Ordering ordering);
std::string_view to_string(Labeling labeling);
/// Accepts the names produced by to_string. Throws std::invalid_argument.
Ordering parse_ordering(std::string_view name);
Labeling parse_labeling(std::string_view name);

/// The RankMethod behind a structured ordering; nullopt for Random/DefaultOrder.
std::optional<RankMethod> rank_method(Ordering ordering);

class LinearizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearizationSpec {
  Ordering ordering = Ordering::Degree;
  bool via_linegraph = false;
  Labeling labeling = Labeling::NodeRelabeling;
  std::uint64_t seed = 0;
  /// Seed of the label shuffle; falls back to `seed`. Changing it never moves
  /// edges around.
  std::optional<std::uint64_t> label_seed;

  std::uint64_t effective_label_seed() const { return label_seed.value_or(seed); }

  /// Method name as shown in reports: "Degree", "LG{PageRank}", "Random", ...
  std::string method_name() const;

  /// Throws LinearizationError when via_linegraph is combined with Random or
  /// DefaultOrder.
  void validate() const;
};

struct LinearizedGraph {
  /// Emitted pairs under final labels, in emission order.
  std::vector<EdgePair> edge_sequence;
  /// Original node ids (sorted) and their emitted labels, aligned.
  std::vector<NodeId> original_ids;
  std::vector<NodeId> labels;
  LinearizationSpec spec;
  std::optional<NodeRanking> ranking_used;

  /// Throws std::out_of_range for an id that is not in the graph.
  NodeId label_of(NodeId original) const;
  /// Inverse label map; throws std::out_of_range.
  NodeId original_of(NodeId label) const;
};

/// Importance-ordered linearization.
///
/// Structured orderings visit nodes by rank and emit each not-yet-emitted
/// incident edge in a shuffled order, so every edge appears once, led by its
/// higher-ranked endpoint. With via_linegraph the ranking is computed on L(G)
/// and original edges are emitted in that order. Random shuffles the edge list;
/// DefaultOrder replays `default_order` (required, must be a permutation of
/// the edge set).
///
/// Labels: RandomLabels is a seeded permutation of 0..n-1; NodeRelabeling uses
/// rank positions (for line-graph orderings, order of first appearance in the
/// emitted sequence); DefaultLabels keeps generator ids, compacted to 0..n-1
/// by sorted position when the ids are not already 0..n-1.
LinearizedGraph linearize(const Graph& g, const LinearizationSpec& spec,
                          std::span<const EdgePair> default_order = {});

/// Line-graph mediated ordering; equivalent to linearize() with
/// spec.via_linegraph = true. Throws GraphError(EmptyGraph) for m = 0.
LinearizedGraph linearize_via_linegraph(const Graph& g, const LinearizationSpec& spec);

/// Random baseline: shuffled edges and shuffled labels.
LinearizedGraph random_baseline(const Graph& g, std::uint64_t seed);

/// "(u1, v1), (u2, v2), ..." in emission order.
std::string render_edge_list(const LinearizedGraph& lg);
std::string render_edge_list(std::span<const EdgePair> edges);

/// Inverse of render_edge_list. Throws std::invalid_argument on malformed text.
std::vector<EdgePair> parse_edge_list(std::string_view text);

}  // namespace glin
