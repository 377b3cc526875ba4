#include "glin/linearizer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "glin/rng.hpp"

namespace glin {

std::string_view to_string(Ordering ordering) {
  switch (ordering) {
    case Ordering::CoreNumber: return "CoreNumber";
    case Ordering::Degree: return "Degree";
    case Ordering::PageRank: return "PageRank";
    case Ordering::Random: return "Random";
    case Ordering::DefaultOrder: return "DefaultOrder";
  }
  return "?";
}

std::string_view to_string(Labeling labeling) {
  switch (labeling) {
    case Labeling::RandomLabels: return "RandomLabels";
    case Labeling::NodeRelabeling: return "NodeRelabeling";
    case Labeling::DefaultLabels: return "DefaultLabels";
  }
  return "?";
}

Ordering parse_ordering(std::string_view name) {
  for (const auto o : {Ordering::CoreNumber, Ordering::Degree, Ordering::PageRank, Ordering::Random,
                       Ordering::DefaultOrder}) {
    if (to_string(o) == name) return o;
  }
  throw std::invalid_argument("unknown ordering: " + std::string(name));
}

Labeling parse_labeling(std::string_view name) {
  for (const auto l : {Labeling::RandomLabels, Labeling::NodeRelabeling, Labeling::DefaultLabels}) {
    if (to_string(l) == name) return l;
  }
  throw std::invalid_argument("unknown labeling: " + std::string(name));
}

std::optional<RankMethod> rank_method(Ordering ordering) {
  switch (ordering) {
    case Ordering::CoreNumber: return RankMethod::CoreNumber;
    case Ordering::Degree: return RankMethod::Degree;
    case Ordering::PageRank: return RankMethod::PageRank;
    default: return std::nullopt;
  }
}

std::string LinearizationSpec::method_name() const {
  if (ordering == Ordering::Random) return "Random";
  if (ordering == Ordering::DefaultOrder) return "DefaultOrder";
  const std::string base(to_string(ordering));
  return via_linegraph ? "LG{" + base + "}" : base;
}

void LinearizationSpec::validate() const {
  if (via_linegraph && !rank_method(ordering)) {
    throw LinearizationError("line-graph mediation requires a structured ordering, got " +
                             std::string(to_string(ordering)));
  }
}

NodeId LinearizedGraph::label_of(NodeId original) const {
  const auto it = std::lower_bound(original_ids.begin(), original_ids.end(), original);
  if (it == original_ids.end() || *it != original) {
    throw std::out_of_range("node " + std::to_string(original) + " is not in the linearized graph");
  }
  return labels[static_cast<std::size_t>(it - original_ids.begin())];
}

NodeId LinearizedGraph::original_of(NodeId label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::out_of_range("label " + std::to_string(label) + " is not assigned");
  }
  return original_ids[static_cast<std::size_t>(it - labels.begin())];
}

namespace {

struct Emission {
  std::vector<EdgePair> edges;  // original ids, lead endpoint first
  std::optional<NodeRanking> ranking;
};

Emission emit_by_node_rank(const Graph& g, RankMethod method, std::uint64_t seed) {
  Emission out;
  out.ranking = rank_nodes(g, method, seed);
  const auto position = out.ranking->positions(g);
  Rng shuffle(derive_seed(seed, g.hash(), "edge-shuffle"));

  out.edges.reserve(g.edge_count());
  std::vector<NodeId> pending;
  for (const NodeId v : out.ranking->order) {
    const std::size_t vp = position[g.checked_index(v)];
    pending.clear();
    for (const NodeId u : g.neighbors(v)) {
      if (position[*g.index_of(u)] > vp) pending.push_back(u);
    }
    shuffle.shuffle(std::span<NodeId>(pending));
    for (const NodeId u : pending) out.edges.push_back({v, u});
  }
  return out;
}

Emission emit_by_linegraph_rank(const Graph& g, RankMethod method, std::uint64_t seed) {
  const LineGraph lg = linegraph(g);
  Emission out;
  out.ranking = rank_nodes(lg.graph, method, seed);

  std::vector<bool> seen(g.node_count(), false);
  out.edges.reserve(g.edge_count());
  for (const NodeId line_node : out.ranking->order) {
    EdgePair e = lg.provenance[line_node];
    const std::size_t iu = *g.index_of(e.u);
    const std::size_t iv = *g.index_of(e.v);
    // Lead with an endpoint that has already been mentioned.
    if (seen[iv] && !seen[iu]) e = {e.v, e.u};
    seen[iu] = seen[iv] = true;
    out.edges.push_back(e);
  }
  return out;
}

Emission emit_random(const Graph& g, std::uint64_t seed) {
  Emission out;
  out.edges = g.edges();
  Rng shuffle(derive_seed(seed, g.hash(), "edge-order/random"));
  shuffle.shuffle(std::span<EdgePair>(out.edges));
  return out;
}

Emission emit_default(const Graph& g, std::span<const EdgePair> default_order) {
  std::vector<EdgePair> canon;
  canon.reserve(default_order.size());
  for (const EdgePair& e : default_order) canon.push_back(e.canonical());
  std::sort(canon.begin(), canon.end());
  if (canon != g.edges()) {
    throw LinearizationError("default edge order is not a permutation of the graph's edges");
  }
  return Emission{{default_order.begin(), default_order.end()}, std::nullopt};
}

bool ids_are_dense(const Graph& g) {
  const auto& nodes = g.nodes();
  return nodes.empty() || nodes.back() + 1 == nodes.size();
}

std::vector<NodeId> labels_by_first_appearance(const Graph& g, std::span<const EdgePair> emitted) {
  constexpr auto kUnset = static_cast<NodeId>(-1);
  std::vector<NodeId> labels(g.node_count(), kUnset);
  NodeId next = 0;
  for (const EdgePair& e : emitted) {
    for (const NodeId x : {e.u, e.v}) {
      auto& slot = labels[*g.index_of(x)];
      if (slot == kUnset) slot = next++;
    }
  }
  for (auto& slot : labels) {
    if (slot == kUnset) slot = next++;
  }
  return labels;
}

}  // namespace

LinearizedGraph linearize(const Graph& g, const LinearizationSpec& spec,
                          std::span<const EdgePair> default_order) {
  spec.validate();

  Emission emission;
  const auto method = rank_method(spec.ordering);
  if (method && spec.via_linegraph) {
    emission = emit_by_linegraph_rank(g, *method, spec.seed);
  } else if (method) {
    emission = emit_by_node_rank(g, *method, spec.seed);
  } else if (spec.ordering == Ordering::Random) {
    emission = emit_random(g, spec.seed);
  } else {
    if (default_order.empty() && g.edge_count() > 0) {
      throw LinearizationError("DefaultOrder needs the generator's edge order");
    }
    emission = emit_default(g, default_order);
  }

  LinearizedGraph out;
  out.spec = spec;
  out.original_ids = g.nodes();
  const std::size_t n = g.node_count();

  switch (spec.labeling) {
    case Labeling::RandomLabels: {
      out.labels.resize(n);
      std::iota(out.labels.begin(), out.labels.end(), NodeId{0});
      Rng shuffle(derive_seed(spec.effective_label_seed(), g.hash(), "labels"));
      shuffle.shuffle(std::span<NodeId>(out.labels));
      break;
    }
    case Labeling::NodeRelabeling: {
      if (method && !spec.via_linegraph) {
        const auto position = emission.ranking->positions(g);
        out.labels.assign(position.begin(), position.end());
      } else {
        out.labels = labels_by_first_appearance(g, emission.edges);
      }
      break;
    }
    case Labeling::DefaultLabels: {
      out.labels.resize(n);
      if (ids_are_dense(g)) {
        out.labels = g.nodes();
      } else {
        std::iota(out.labels.begin(), out.labels.end(), NodeId{0});
      }
      break;
    }
  }

  out.edge_sequence.reserve(emission.edges.size());
  for (const EdgePair& e : emission.edges) {
    out.edge_sequence.push_back({out.labels[*g.index_of(e.u)], out.labels[*g.index_of(e.v)]});
  }
  out.ranking_used = std::move(emission.ranking);
  return out;
}

LinearizedGraph linearize_via_linegraph(const Graph& g, const LinearizationSpec& spec) {
  LinearizationSpec lg_spec = spec;
  lg_spec.via_linegraph = true;
  return linearize(g, lg_spec);
}

LinearizedGraph random_baseline(const Graph& g, std::uint64_t seed) {
  return linearize(g, LinearizationSpec{Ordering::Random, false, Labeling::RandomLabels, seed, {}});
}

std::string render_edge_list(std::span<const EdgePair> edges) {
  std::string out;
  out.reserve(edges.size() * 8);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out += ", ";
    out += '(';
    out += std::to_string(edges[i].u);
    out += ", ";
    out += std::to_string(edges[i].v);
    out += ')';
  }
  return out;
}

std::string render_edge_list(const LinearizedGraph& lg) { return render_edge_list(lg.edge_sequence); }

std::vector<EdgePair> parse_edge_list(std::string_view text) {
  std::vector<EdgePair> out;
  std::size_t i = 0;
  const auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  const auto expect = [&](char c) {
    skip_space();
    if (i >= text.size() || text[i] != c) {
      throw std::invalid_argument("edge list: expected '" + std::string(1, c) + "' at offset " +
                                  std::to_string(i));
    }
    ++i;
  };
  const auto number = [&] {
    skip_space();
    NodeId value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw std::invalid_argument("edge list: expected a node id at offset " + std::to_string(i));
    }
    i = static_cast<std::size_t>(ptr - text.data());
    return value;
  };

  skip_space();
  while (i < text.size()) {
    if (!out.empty()) expect(',');
    expect('(');
    const NodeId u = number();
    expect(',');
    const NodeId v = number();
    expect(')');
    out.push_back({u, v});
    skip_space();
  }
  return out;
}

}  // namespace glin
