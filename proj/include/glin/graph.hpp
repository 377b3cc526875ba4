#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glin {

using NodeId = std::uint32_t;

/// Undirected edge. Canonical form keeps u < v; emission order (which endpoint
/// is rendered first) lives with the linearization, not here.
struct EdgePair {
  NodeId u = 0;
  NodeId v = 0;

  constexpr EdgePair canonical() const noexcept { return u < v ? *this : EdgePair{v, u}; }
  constexpr bool touches(NodeId x) const noexcept { return u == x || v == x; }

  friend constexpr auto operator<=>(const EdgePair&, const EdgePair&) = default;
};

class GraphError : public std::runtime_error {
 public:
  enum class Code { SelfLoop, UnknownEndpoint, UnknownNode, EmptyGraph };

  GraphError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Immutable undirected simple graph.
///
/// Node ids are arbitrary non-negative integers; internally every node also has
/// a dense index (its position in the sorted id list) and per-node results of
/// the measures module are indexed by it.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from node ids and edge pairs. Duplicate node ids and
  /// duplicate or reversed pairs are merged. Throws GraphError on a self-loop
  /// or on a pair referencing a node not in `nodes`.
  static Graph build(std::span<const NodeId> nodes, std::span<const EdgePair> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted ascending.
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  /// Canonical (u < v), sorted lexicographically.
  const std::vector<EdgePair>& edges() const noexcept { return edges_; }

  bool contains(NodeId id) const noexcept { return index_of(id).has_value(); }
  std::optional<std::size_t> index_of(NodeId id) const noexcept;
  /// Throws GraphError(UnknownNode).
  std::size_t checked_index(NodeId id) const;

  /// Sorted neighbor ids.
  std::span<const NodeId> neighbors(NodeId id) const;
  std::span<const NodeId> neighbors_at(std::size_t index) const noexcept { return adjacency_[index]; }
  std::size_t degree(NodeId id) const { return neighbors(id).size(); }
  std::size_t degree_at(std::size_t index) const noexcept { return adjacency_[index].size(); }
  std::size_t max_degree() const noexcept;

  bool has_edge(NodeId a, NodeId b) const;

  /// FNV-1a over the canonical serialization. Stable across runs and platforms.
  std::uint64_t hash() const noexcept { return hash_; }

  /// "nodes:0,1,2;edges:0-1,1-2"
  std::string canonical_string() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<EdgePair> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::uint64_t hash_ = 0;
};

/// Hop count of a shortest s-t path, nullopt when t is unreachable from s.
/// Throws GraphError(UnknownNode).
std::optional<std::size_t> shortest_path_len(const Graph& g, NodeId s, NodeId t);

/// BFS hop distances from `source`, indexed by node index; nullopt = unreachable.
std::vector<std::optional<std::size_t>> bfs_distances(const Graph& g, NodeId source);

/// Connected component id per node index, components numbered in order of
/// their smallest node.
std::vector<std::size_t> connected_components(const Graph& g);

/// Largest finite shortest-path length. For a disconnected graph this is the
/// maximum over components. 0 for a graph without edges.
std::size_t diameter(const Graph& g);

struct LineGraph {
  /// Node i of `graph` stands for `provenance[i]`, an edge of the source graph.
  Graph graph;
  std::vector<EdgePair> provenance;
};

/// Line graph L(G). Node ids are 0..m-1 following the canonical edge order of
/// `g`. Throws GraphError(EmptyGraph) when g has no edges.
LineGraph linegraph(const Graph& g);

}  // namespace glin
