#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "glin/graph.hpp"

namespace glin {

enum class MotifKind { Clique, Star, Fan, Diamond, Tree };

inline constexpr std::array<MotifKind, 5> kAllMotifKinds = {
    MotifKind::Clique, MotifKind::Star, MotifKind::Fan, MotifKind::Diamond, MotifKind::Tree};

/// Lower-case name: "clique", "star", "fan", "diamond", "tree".
std::string_view to_string(MotifKind kind);

class UnknownShape : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws UnknownShape.
MotifKind parse_motif_kind(std::string_view name);

/// A motif on local node ids 0..node_count-1. Edges are in construction order;
/// node 0 is the attachment point.
struct Motif {
  MotifKind kind = MotifKind::Clique;
  int size = 0;  // nodes, or levels for Tree
  std::size_t node_count = 0;
  std::vector<EdgePair> edges;
};

using MotifConstructor = std::function<Motif(int size)>;

/// Size bounds (inclusive) accepted by the constructors.
struct SizeRange {
  int lo;
  int hi;
};
SizeRange motif_size_range(MotifKind kind);

/// One constructor per shape:
///   Clique(k)  complete graph on k nodes
///   Star(k)    node 0 joined to k-1 leaves
///   Fan(k)     apex 0 joined to every node of the path 1..k-1 (2k-3 edges)
///   Diamond(6) 4-cycle 0-1-2-3 plus nodes 4 and 5 each joined to all four
///   Tree(L)    perfect binary tree with L levels (2^L - 1 nodes), heap order
/// Constructors throw std::invalid_argument for sizes outside motif_size_range.
const std::map<MotifKind, MotifConstructor>& motif_catalog();

/// Looks the shape up by name; throws UnknownShape.
Motif make_motif(std::string_view name, int size);

/// Generator output for one graph.
struct GraphRecord {
  std::string id;
  Graph graph;
  /// Generator tag: "graphwave", "er", "ba", "sfn", "sbm", "path", "complete", "star".
  std::string source;
  nlohmann::json params = nlohmann::json::object();
  /// Edges in the order the generator created them, oriented as created.
  std::vector<EdgePair> default_edge_order;
  /// Motif kinds attached (GraphWave only), in attachment order; may repeat.
  std::vector<MotifKind> motif_shapes;
  /// The dataset's one-shot exemplar.
  bool exemplar = false;

  bool is_graphwave() const { return source == "graphwave"; }
};

inline constexpr int kGraphWaveGraphsPerCombination = 100;

/// The 30 shape combinations: 5 singletons, 5 same-shape pairs, 10 distinct
/// pairs, 10 distinct triplets.
std::vector<std::vector<MotifKind>> graphwave_combinations();

/// 30 combinations x 100 graphs. Each graph: a cycle or chain base, then every
/// motif of its combination bridged by one edge from a random base node to the
/// motif's node 0.
std::vector<GraphRecord> gen_graphwave(std::uint64_t seed);

/// 500 each of ER, BA, SFN, SBM; 100 each of path, complete, star; 5-20 nodes.
std::vector<GraphRecord> gen_graphqa(std::uint64_t seed);

/// Single GraphWave graph for one combination; `index` feeds the per-graph stream.
GraphRecord gen_graphwave_graph(std::uint64_t seed, std::size_t index,
                                const std::vector<MotifKind>& combination);

/// Single GraphQA graph of the given generator tag.
GraphRecord gen_graphqa_graph(std::uint64_t seed, std::size_t index, std::string_view source);

}  // namespace glin
