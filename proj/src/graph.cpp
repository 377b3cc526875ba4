#include "glin/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "glin/rng.hpp"

namespace glin {

Graph Graph::build(std::span<const NodeId> nodes, std::span<const EdgePair> edges) {
  Graph g;
  g.nodes_.assign(nodes.begin(), nodes.end());
  std::sort(g.nodes_.begin(), g.nodes_.end());
  g.nodes_.erase(std::unique(g.nodes_.begin(), g.nodes_.end()), g.nodes_.end());

  g.edges_.reserve(edges.size());
  for (const EdgePair& e : edges) {
    if (e.u == e.v) {
      throw GraphError(GraphError::Code::SelfLoop,
                       "self-loop on node " + std::to_string(e.u));
    }
    for (const NodeId endpoint : {e.u, e.v}) {
      if (!g.contains(endpoint)) {
        throw GraphError(GraphError::Code::UnknownEndpoint,
                         "edge endpoint " + std::to_string(endpoint) + " is not a listed node");
      }
    }
    g.edges_.push_back(e.canonical());
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.adjacency_.resize(g.nodes_.size());
  for (const EdgePair& e : g.edges_) {
    g.adjacency_[*g.index_of(e.u)].push_back(e.v);
    g.adjacency_[*g.index_of(e.v)].push_back(e.u);
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());

  g.hash_ = fnv1a(g.canonical_string());
  return g;
}

std::optional<std::size_t> Graph::index_of(NodeId id) const noexcept {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t Graph::checked_index(NodeId id) const {
  const auto index = index_of(id);
  if (!index) {
    throw GraphError(GraphError::Code::UnknownNode, "unknown node " + std::to_string(id));
  }
  return *index;
}

std::span<const NodeId> Graph::neighbors(NodeId id) const {
  return adjacency_[checked_index(id)];
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto list = neighbors(a);
  checked_index(b);
  return std::binary_search(list.begin(), list.end(), b);
}

std::string Graph::canonical_string() const {
  std::string out = "nodes:";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(nodes_[i]);
  }
  out += ";edges:";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(edges_[i].u);
    out += '-';
    out += std::to_string(edges_[i].v);
  }
  return out;
}

std::vector<std::optional<std::size_t>> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::optional<std::size_t>> dist(g.node_count());
  const std::size_t start = g.checked_index(source);
  dist[start] = 0;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    for (const NodeId next : g.neighbors_at(at)) {
      const std::size_t j = *g.index_of(next);
      if (!dist[j]) {
        dist[j] = *dist[at] + 1;
        queue.push_back(j);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> shortest_path_len(const Graph& g, NodeId s, NodeId t) {
  const std::size_t target = g.checked_index(t);
  return bfs_distances(g, s)[target];
}

std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> component(g.node_count(), kUnset);
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (component[i] != kUnset) continue;
    component[i] = next_id;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t at = stack.back();
      stack.pop_back();
      for (const NodeId next : g.neighbors_at(at)) {
        const std::size_t j = *g.index_of(next);
        if (component[j] == kUnset) {
          component[j] = next_id;
          stack.push_back(j);
        }
      }
    }
    ++next_id;
  }
  return component;
}

std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (const NodeId source : g.nodes()) {
    for (const auto& d : bfs_distances(g, source)) {
      if (d) best = std::max(best, *d);
    }
  }
  return best;
}

LineGraph linegraph(const Graph& g) {
  if (g.edge_count() == 0) {
    throw GraphError(GraphError::Code::EmptyGraph, "line graph of a graph without edges");
  }
  const auto& edges = g.edges();

  // Group edge indices by endpoint; each pair within a group is a line-graph edge.
  std::vector<std::vector<NodeId>> incident(g.node_count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[*g.index_of(edges[i].u)].push_back(static_cast<NodeId>(i));
    incident[*g.index_of(edges[i].v)].push_back(static_cast<NodeId>(i));
  }
  std::vector<EdgePair> line_edges;
  for (const auto& group : incident) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        line_edges.push_back({group[a], group[b]});
      }
    }
  }
  std::vector<NodeId> line_nodes(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) line_nodes[i] = static_cast<NodeId>(i);

  return LineGraph{Graph::build(line_nodes, line_edges), edges};
}

}  // namespace glin
