#include "glin/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "glin/rng.hpp"

namespace glin {

void PageRankParams::validate() const {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("PageRank damping must lie in (0, 1)");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("PageRank tolerance must be positive");
  if (max_iterations <= 0) throw std::invalid_argument("PageRank max_iterations must be positive");
}

std::vector<std::size_t> degree_centrality(const Graph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.degree_at(i);
  return out;
}

std::vector<double> pagerank(const Graph& g, const PageRankParams& params) {
  params.validate();
  const std::size_t n = g.node_count();
  if (n == 0) return {};

  // Neighbor lists in index space, so the sweep does no id lookups.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const NodeId nb : g.neighbors_at(i)) adj[i].push_back(*g.index_of(nb));
  }

  const double alpha = params.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);

  for (int iter = 0; iter < params.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (adj[u].empty()) dangling += rank[u];
    }
    const double base = (1.0 - alpha) * inv_n + alpha * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t u = 0; u < n; ++u) {
      if (adj[u].empty()) continue;
      const double share = alpha * rank[u] / static_cast<double>(adj[u].size());
      for (const std::size_t v : adj[u]) next[v] += share;
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change <= params.tolerance) break;
  }

  const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
  for (double& r : rank) r /= total;
  return rank;
}

std::vector<std::size_t> core_numbers(const Graph& g) {
  // Batagelj-Zaversnik: nodes kept in buckets by current degree; always peel
  // from the lowest non-empty bucket.
  const std::size_t n = g.node_count();
  std::vector<std::size_t> degree(n);
  std::size_t max_deg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = g.degree_at(i);
    max_deg = std::max(max_deg, degree[i]);
  }

  std::vector<std::size_t> bucket_start(max_deg + 2, 0);
  for (std::size_t i = 0; i < n; ++i) ++bucket_start[degree[i] + 1];
  std::partial_sum(bucket_start.begin(), bucket_start.end(), bucket_start.begin());

  std::vector<std::size_t> order(n);
  std::vector<std::size_t> position(n);
  {
    auto fill = bucket_start;
    for (std::size_t i = 0; i < n; ++i) {
      position[i] = fill[degree[i]]++;
      order[position[i]] = i;
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = order[k];
    for (const NodeId nb : g.neighbors_at(v)) {
      const std::size_t u = *g.index_of(nb);
      if (degree[u] <= degree[v]) continue;
      // Swap u with the first node of its bucket, then shrink that bucket.
      const std::size_t du = degree[u];
      const std::size_t first_pos = bucket_start[du];
      const std::size_t w = order[first_pos];
      if (u != w) {
        std::swap(order[position[u]], order[first_pos]);
        std::swap(position[u], position[w]);
      }
      ++bucket_start[du];
      --degree[u];
    }
  }
  return degree;
}

std::string_view to_string(RankMethod method) {
  switch (method) {
    case RankMethod::Degree: return "degree";
    case RankMethod::PageRank: return "pagerank";
    case RankMethod::CoreNumber: return "core";
  }
  return "?";
}

std::vector<std::size_t> NodeRanking::positions(const Graph& g) const {
  std::vector<std::size_t> pos(g.node_count());
  for (std::size_t p = 0; p < order.size(); ++p) pos[g.checked_index(order[p])] = p;
  return pos;
}

NodeRanking rank_nodes(const Graph& g, RankMethod method, std::uint64_t seed) {
  NodeRanking ranking;
  ranking.method = method;
  ranking.seed = seed;

  const std::size_t n = g.node_count();
  std::vector<double> sort_key(n);
  switch (method) {
    case RankMethod::Degree: {
      const auto deg = degree_centrality(g);
      ranking.scores.assign(deg.begin(), deg.end());
      sort_key = ranking.scores;
      break;
    }
    case RankMethod::CoreNumber: {
      const auto core = core_numbers(g);
      ranking.scores.assign(core.begin(), core.end());
      sort_key = ranking.scores;
      break;
    }
    case RankMethod::PageRank: {
      ranking.scores = pagerank(g);
      for (std::size_t i = 0; i < n; ++i) sort_key[i] = std::round(ranking.scores[i] * 1e12);
      break;
    }
  }

  Rng ties(derive_seed(seed, g.hash(), std::string("node-ties/") + std::string(to_string(method))));
  std::vector<std::uint64_t> tie_key(n);
  for (auto& k : tie_key) k = ties.next();

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (sort_key[a] != sort_key[b]) return sort_key[a] > sort_key[b];
    if (tie_key[a] != tie_key[b]) return tie_key[a] < tie_key[b];
    return a < b;
  });

  ranking.order.reserve(n);
  for (const std::size_t i : idx) ranking.order.push_back(g.nodes()[i]);
  return ranking;
}

}  // namespace glin
