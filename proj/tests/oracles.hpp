#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond the Graph container.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "glin/graph.hpp"

namespace glin::testing {

/// G(n, p) with n in [n_lo, n_hi] and node ids 0..n-1.
inline Graph random_graph(std::mt19937_64& rng, int n_lo, int n_hi, double p_lo = 0.05, double p_hi = 0.6) {
  std::uniform_int_distribution<int> size(n_lo, n_hi);
  std::uniform_real_distribution<double> density(p_lo, p_hi);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = size(rng);
  const double p = density(rng);
  std::vector<NodeId> nodes(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = static_cast<NodeId>(i);
  std::vector<EdgePair> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng) < p) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
  }
  return Graph::build(nodes, edges);
}

/// Same, but node ids are a sparse random subset of [0, 1000).
inline Graph random_graph_sparse_ids(std::mt19937_64& rng, int n_lo, int n_hi) {
  const Graph dense = random_graph(rng, n_lo, n_hi);
  std::vector<NodeId> ids(1000);
  for (NodeId i = 0; i < 1000; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(dense.node_count());
  std::vector<EdgePair> edges;
  for (const EdgePair& e : dense.edges()) edges.push_back({ids[e.u], ids[e.v]});
  return Graph::build(ids, edges);
}

/// Core numbers by enumerating every node subset: a node's core number is the
/// largest minimum internal degree over subsets containing it. n <= 20.
inline std::vector<std::size_t> brute_core_numbers(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> adj(n, 0);
  for (const EdgePair& e : g.edges()) {
    const auto a = *g.index_of(e.u);
    const auto b = *g.index_of(e.v);
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  std::vector<std::size_t> core(n, 0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int min_deg = std::numeric_limits<int>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (s & (1u << v)) min_deg = std::min(min_deg, std::popcount(adj[v] & s));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (s & (1u << v)) core[v] = std::max(core[v], static_cast<std::size_t>(min_deg));
    }
  }
  return core;
}

/// Dense PageRank: x = (1-d)/n + d M x, where column j of M spreads node j's
/// mass over its neighbours, or over all nodes when j is isolated.
inline std::vector<double> dense_pagerank(const Graph& g, double damping = 0.85) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const auto nbrs = g.neighbors_at(j);
    if (nbrs.empty()) {
      for (std::size_t i = 0; i < n; ++i) m[i][j] = 1.0 / static_cast<double>(n);
    } else {
      for (const NodeId v : nbrs) m[*g.index_of(v)][j] = 1.0 / static_cast<double>(nbrs.size());
    }
  }
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<double> next(n, (1.0 - damping) / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[i] += damping * m[i][j] * x[j];
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::abs(next[i] - x[i]);
    x = std::move(next);
    if (delta < 1e-14) break;
  }
  return x;
}

inline constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

/// All-pairs hop distances, kInf for unreachable pairs. Indexed by node index.
inline std::vector<std::vector<std::size_t>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const EdgePair& e : g.edges()) {
    d[*g.index_of(e.u)][*g.index_of(e.v)] = 1;
    d[*g.index_of(e.v)][*g.index_of(e.u)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

inline std::size_t fw_diameter(const Graph& g) {
  std::size_t best = 0;
  for (const auto& row : floyd_warshall(g)) {
    for (const auto x : row) {
      if (x != kInf) best = std::max(best, x);
    }
  }
  return best;
}

/// Line-graph edges as pairs of positions in g.edges(), found by checking
/// every pair of edges for a shared endpoint.
inline std::set<std::pair<std::size_t, std::size_t>> line_graph_pairs(const Graph& g) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const auto& e = g.edges();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i].u == e[j].u || e[i].u == e[j].v || e[i].v == e[j].u || e[i].v == e[j].v) out.insert({i, j});
    }
  }
  return out;
}

}  // namespace glin::testing
