#include "glin/generators.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "glin/rng.hpp"

namespace glin {

std::string_view to_string(MotifKind kind) {
  switch (kind) {
    case MotifKind::Clique: return "clique";
    case MotifKind::Star: return "star";
    case MotifKind::Fan: return "fan";
    case MotifKind::Diamond: return "diamond";
    case MotifKind::Tree: return "tree";
  }
  return "?";
}

MotifKind parse_motif_kind(std::string_view name) {
  for (const MotifKind kind : kAllMotifKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw UnknownShape("unknown motif shape: " + std::string(name));
}

SizeRange motif_size_range(MotifKind kind) {
  switch (kind) {
    case MotifKind::Clique:
    case MotifKind::Star:
    case MotifKind::Fan: return {4, 11};
    case MotifKind::Diamond: return {6, 6};
    case MotifKind::Tree: return {3, 6};
  }
  return {0, 0};
}

namespace {

void check_size(MotifKind kind, int size) {
  const SizeRange r = motif_size_range(kind);
  if (size < r.lo || size > r.hi) {
    throw std::invalid_argument(std::string(to_string(kind)) + " size " + std::to_string(size) +
                                " outside [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  }
}

Motif clique(int k) {
  check_size(MotifKind::Clique, k);
  Motif m{MotifKind::Clique, k, static_cast<std::size_t>(k), {}};
  for (NodeId a = 0; a < static_cast<NodeId>(k); ++a) {
    for (NodeId b = a + 1; b < static_cast<NodeId>(k); ++b) m.edges.push_back({a, b});
  }
  return m;
}

Motif star(int k) {
  check_size(MotifKind::Star, k);
  Motif m{MotifKind::Star, k, static_cast<std::size_t>(k), {}};
  for (NodeId leaf = 1; leaf < static_cast<NodeId>(k); ++leaf) m.edges.push_back({0, leaf});
  return m;
}

Motif fan(int k) {
  check_size(MotifKind::Fan, k);
  Motif m{MotifKind::Fan, k, static_cast<std::size_t>(k), {}};
  for (NodeId v = 1; v < static_cast<NodeId>(k); ++v) {
    m.edges.push_back({0, v});
    if (v > 1) m.edges.push_back({v - 1, v});
  }
  return m;
}

Motif diamond(int k) {
  check_size(MotifKind::Diamond, k);
  Motif m{MotifKind::Diamond, k, 6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  for (const NodeId hub : {4u, 5u}) {
    for (NodeId v = 0; v < 4; ++v) m.edges.push_back({hub, v});
  }
  return m;
}

Motif tree(int levels) {
  check_size(MotifKind::Tree, levels);
  const std::size_t n = (std::size_t{1} << levels) - 1;
  Motif m{MotifKind::Tree, levels, n, {}};
  for (NodeId child = 1; child < static_cast<NodeId>(n); ++child) {
    m.edges.push_back({(child - 1) / 2, child});
  }
  return m;
}

std::string record_id(std::string_view dataset, std::size_t index) {
  std::ostringstream os;
  os << dataset << '-' << std::setw(5) << std::setfill('0') << index;
  return os.str();
}

Graph graph_from(std::size_t n, const std::vector<EdgePair>& edges) {
  std::vector<NodeId> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = static_cast<NodeId>(i);
  return Graph::build(nodes, edges);
}

// Sizes are drawn from half-open ranges [lo, hi), the numpy randint
// convention; see the README's dataset notes.
int draw_half_open(Rng& rng, int lo, int hi) { return static_cast<int>(rng.between(lo, hi - 1)); }

int draw_motif_size(Rng& rng, MotifKind kind) {
  const SizeRange r = motif_size_range(kind);
  if (r.lo == r.hi) return r.lo;
  return draw_half_open(rng, r.lo, r.hi);
}

}  // namespace

const std::map<MotifKind, MotifConstructor>& motif_catalog() {
  static const std::map<MotifKind, MotifConstructor> catalog = {
      {MotifKind::Clique, clique}, {MotifKind::Star, star},  {MotifKind::Fan, fan},
      {MotifKind::Diamond, diamond}, {MotifKind::Tree, tree},
  };
  return catalog;
}

Motif make_motif(std::string_view name, int size) {
  return motif_catalog().at(parse_motif_kind(name))(size);
}

std::vector<std::vector<MotifKind>> graphwave_combinations() {
  std::vector<std::vector<MotifKind>> combos;
  const auto& k = kAllMotifKinds;
  for (const MotifKind a : k) combos.push_back({a});
  for (const MotifKind a : k) combos.push_back({a, a});
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) combos.push_back({k[i], k[j]});
  }
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      for (std::size_t l = j + 1; l < k.size(); ++l) combos.push_back({k[i], k[j], k[l]});
    }
  }
  return combos;
}

GraphRecord gen_graphwave_graph(std::uint64_t seed, std::size_t index,
                                const std::vector<MotifKind>& combination) {
  Rng rng(derive_seed(seed, index, "graphwave"));
  GraphRecord rec;
  rec.id = record_id("graphwave", index);
  rec.source = "graphwave";

  const bool cycle = rng.bernoulli(0.5);
  const int base_size = draw_half_open(rng, 3, 21);
  std::vector<EdgePair> edges;
  for (NodeId v = 0; v + 1 < static_cast<NodeId>(base_size); ++v) edges.push_back({v, v + 1});
  if (cycle) edges.push_back({static_cast<NodeId>(base_size - 1), 0});

  rec.params["base"] = cycle ? "cycle" : "chain";
  rec.params["base_size"] = base_size;
  rec.params["motifs"] = nlohmann::json::array();

  std::size_t next_node = static_cast<std::size_t>(base_size);
  for (const MotifKind kind : combination) {
    const int size = draw_motif_size(rng, kind);
    const Motif motif = motif_catalog().at(kind)(size);
    const auto offset = static_cast<NodeId>(next_node);
    for (const EdgePair& e : motif.edges) edges.push_back({e.u + offset, e.v + offset});
    const auto anchor = static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(base_size)));
    edges.push_back({anchor, offset});
    next_node += motif.node_count;

    rec.params["motifs"].push_back(
        {{"shape", std::string(to_string(kind))}, {"size", size}, {"anchor", anchor}, {"offset", offset}});
    rec.motif_shapes.push_back(kind);
  }

  rec.graph = graph_from(next_node, edges);
  rec.default_edge_order = std::move(edges);
  return rec;
}

std::vector<GraphRecord> gen_graphwave(std::uint64_t seed) {
  const auto combos = graphwave_combinations();
  std::vector<GraphRecord> out;
  out.reserve(combos.size() * kGraphWaveGraphsPerCombination);
  for (const auto& combo : combos) {
    for (int j = 0; j < kGraphWaveGraphsPerCombination; ++j) {
      out.push_back(gen_graphwave_graph(seed, out.size(), combo));
    }
  }
  Rng pick(derive_seed(seed, out.size(), "exemplar"));
  out[pick.below(out.size())].exemplar = true;
  return out;
}

namespace {

constexpr int kMinNodes = 5;
constexpr int kMaxNodes = 20;

// Picks a node with probability proportional to weight(node).
template <typename Weight>
NodeId weighted_pick(Rng& rng, std::size_t n, Weight weight) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += weight(i);
  double r = rng.uniform() * total;
  for (std::size_t i = 0; i < n; ++i) {
    r -= weight(i);
    if (r < 0.0) return static_cast<NodeId>(i);
  }
  return static_cast<NodeId>(n - 1);
}

void erdos_renyi(Rng& rng, GraphRecord& rec, std::vector<EdgePair>& edges, std::size_t& n) {
  n = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
  const double p = rng.uniform(0.2, 0.6);
  rec.params["p"] = p;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (rng.bernoulli(p)) edges.push_back({a, b});
    }
  }
}

void barabasi_albert(Rng& rng, GraphRecord& rec, std::vector<EdgePair>& edges, std::size_t& n) {
  n = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
  const auto attach = static_cast<NodeId>(rng.between(1, 3));
  rec.params["m"] = attach;
  // Seed graph: star on attach + 1 nodes.
  std::vector<NodeId> endpoints;  // each node repeated once per incident edge
  for (NodeId leaf = 1; leaf <= attach; ++leaf) {
    edges.push_back({0, leaf});
    endpoints.insert(endpoints.end(), {0, leaf});
  }
  for (NodeId v = attach + 1; v < n; ++v) {
    std::vector<NodeId> targets;
    while (targets.size() < attach) {
      const NodeId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (const NodeId t : targets) {
      edges.push_back({v, t});
      endpoints.insert(endpoints.end(), {v, t});
    }
  }
}

// Directed scale-free growth (alpha/beta/gamma moves), then read as undirected
// with self-loops and repeated pairs dropped.
void scale_free(Rng& rng, GraphRecord& rec, std::vector<EdgePair>& edges, std::size_t& n) {
  constexpr double kAlpha = 0.41;
  constexpr double kBeta = 0.54;
  constexpr double kDeltaIn = 0.2;
  constexpr double kDeltaOut = 0.0;
  const auto target = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
  rec.params["alpha"] = kAlpha;
  rec.params["beta"] = kBeta;
  rec.params["gamma"] = 1.0 - kAlpha - kBeta;

  std::vector<double> in_deg{1, 1, 1};
  std::vector<double> out_deg{1, 1, 1};
  std::vector<EdgePair> arcs{{0, 1}, {1, 2}, {2, 0}};
  while (in_deg.size() < target) {
    const double r = rng.uniform();
    const std::size_t count = in_deg.size();
    const auto by_in = [&](std::size_t i) { return in_deg[i] + kDeltaIn; };
    const auto by_out = [&](std::size_t i) { return out_deg[i] + kDeltaOut; };
    NodeId from;
    NodeId to;
    if (r < kAlpha) {
      to = weighted_pick(rng, count, by_in);
      from = static_cast<NodeId>(count);
      in_deg.push_back(0);
      out_deg.push_back(0);
    } else if (r < kAlpha + kBeta) {
      from = weighted_pick(rng, count, by_out);
      to = weighted_pick(rng, count, by_in);
    } else {
      from = weighted_pick(rng, count, by_out);
      to = static_cast<NodeId>(count);
      in_deg.push_back(0);
      out_deg.push_back(0);
    }
    arcs.push_back({from, to});
    out_deg[from] += 1;
    in_deg[to] += 1;
  }
  n = target;

  std::vector<EdgePair> seen;
  for (const EdgePair& a : arcs) {
    if (a.u == a.v) continue;
    const EdgePair c = a.canonical();
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    seen.push_back(c);
    edges.push_back(a);
  }
}

void stochastic_block(Rng& rng, GraphRecord& rec, std::vector<EdgePair>& edges, std::size_t& n) {
  constexpr double kIntra = 0.6;
  constexpr double kInter = 0.1;
  for (int attempt = 0;; ++attempt) {
    edges.clear();
    n = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
    const auto blocks = static_cast<std::size_t>(rng.between(2, 3));
    // Random composition of n into `blocks` non-empty parts.
    std::vector<std::size_t> cuts;
    while (cuts.size() < blocks - 1) {
      const auto c = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(n) - 1));
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::size_t> block_of(n);
    std::vector<std::size_t> sizes;
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t end = b + 1 < blocks ? cuts[b] : n;
      for (std::size_t v = start; v < end; ++v) block_of[v] = b;
      sizes.push_back(end - start);
      start = end;
    }

    std::vector<int> degree(n, 0);
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (rng.bernoulli(block_of[a] == block_of[b] ? kIntra : kInter)) {
          edges.push_back({a, b});
          ++degree[a];
          ++degree[b];
        }
      }
    }
    if (std::find(degree.begin(), degree.end(), 0) == degree.end()) {
      rec.params["block_sizes"] = sizes;
      rec.params["p_intra"] = kIntra;
      rec.params["p_inter"] = kInter;
      rec.params["attempts"] = attempt + 1;
      return;
    }
  }
}

void path_graph(Rng& rng, GraphRecord&, std::vector<EdgePair>& edges, std::size_t& n) {
  n = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
}

void complete_graph(Rng& rng, GraphRecord&, std::vector<EdgePair>& edges, std::size_t& n) {
  n = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) edges.push_back({a, b});
  }
}

void star_graph(Rng& rng, GraphRecord&, std::vector<EdgePair>& edges, std::size_t& n) {
  n = static_cast<std::size_t>(rng.between(kMinNodes, kMaxNodes));
  for (NodeId leaf = 1; leaf < n; ++leaf) edges.push_back({0, leaf});
}

struct QaFamily {
  std::string_view source;
  int count;
  void (*build)(Rng&, GraphRecord&, std::vector<EdgePair>&, std::size_t&);
};

constexpr std::array<QaFamily, 7> kQaFamilies = {{
    {"er", 500, erdos_renyi},
    {"ba", 500, barabasi_albert},
    {"sfn", 500, scale_free},
    {"sbm", 500, stochastic_block},
    {"path", 100, path_graph},
    {"complete", 100, complete_graph},
    {"star", 100, star_graph},
}};

}  // namespace

GraphRecord gen_graphqa_graph(std::uint64_t seed, std::size_t index, std::string_view source) {
  const auto family = std::find_if(kQaFamilies.begin(), kQaFamilies.end(),
                                   [&](const QaFamily& f) { return f.source == source; });
  if (family == kQaFamilies.end()) {
    throw std::invalid_argument("unknown GraphQA generator: " + std::string(source));
  }
  Rng rng(derive_seed(seed, index, "graphqa/" + std::string(source)));
  GraphRecord rec;
  rec.id = record_id("graphqa", index);
  rec.source = std::string(source);
  std::vector<EdgePair> edges;
  std::size_t n = 0;
  family->build(rng, rec, edges, n);
  rec.params["n"] = n;
  rec.graph = graph_from(n, edges);
  rec.default_edge_order = std::move(edges);
  return rec;
}

std::vector<GraphRecord> gen_graphqa(std::uint64_t seed) {
  std::vector<GraphRecord> out;
  out.reserve(2300);
  for (const QaFamily& family : kQaFamilies) {
    for (int j = 0; j < family.count; ++j) {
      out.push_back(gen_graphqa_graph(seed, out.size(), family.source));
    }
  }
  Rng pick(derive_seed(seed, out.size(), "exemplar"));
  out[pick.below(out.size())].exemplar = true;
  return out;
}

}  // namespace glin
