#include "glin/tasks.hpp"

#include <algorithm>

#include "glin/rng.hpp"

namespace glin {

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::NodeCounting: return "node_counting";
    case TaskKind::MaxDegree: return "max_degree";
    case TaskKind::NodeDegree: return "node_degree";
    case TaskKind::EdgeExistence: return "edge_existence";
    case TaskKind::Diameter: return "diameter";
    case TaskKind::ShortestPath: return "shortest_path";
    case TaskKind::PathExistence: return "path_existence";
    case TaskKind::MotifShape: return "motif_shape";
  }
  return "?";
}

std::string_view display_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::NodeCounting: return "Node Counting";
    case TaskKind::MaxDegree: return "Max Degree";
    case TaskKind::NodeDegree: return "Node Degree";
    case TaskKind::EdgeExistence: return "Edge Existence";
    case TaskKind::Diameter: return "Diameter";
    case TaskKind::ShortestPath: return "Shortest Path";
    case TaskKind::PathExistence: return "Path Existence";
    case TaskKind::MotifShape: return "Motifs' Shape";
  }
  return "?";
}

TaskKind parse_task_kind(std::string_view name) {
  for (const TaskKind kind : kAllTaskKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown task: " + std::string(name));
}

bool is_numeric(TaskKind kind) {
  return kind == TaskKind::NodeCounting || kind == TaskKind::MaxDegree || kind == TaskKind::NodeDegree ||
         kind == TaskKind::Diameter || kind == TaskKind::ShortestPath;
}

bool is_yes_no(TaskKind kind) {
  return kind == TaskKind::EdgeExistence || kind == TaskKind::PathExistence;
}

std::size_t query_arity(TaskKind kind) {
  switch (kind) {
    case TaskKind::NodeDegree: return 1;
    case TaskKind::EdgeExistence:
    case TaskKind::ShortestPath:
    case TaskKind::PathExistence: return 2;
    default: return 0;
  }
}

std::string answer_text(const Truth& truth) {
  if (const auto* n = std::get_if<std::int64_t>(&truth)) return std::to_string(*n);
  if (const auto* b = std::get_if<bool>(&truth)) return *b ? "yes" : "no";
  const auto& shapes = std::get<std::vector<MotifKind>>(truth);
  return shapes.empty() ? std::string() : std::string(to_string(shapes.front()));
}

bool kind_valid_for(const GraphRecord& rec, TaskKind kind) {
  return kind != TaskKind::MotifShape || rec.is_graphwave();
}

namespace {

std::vector<MotifKind> distinct_shapes(const std::vector<MotifKind>& shapes) {
  std::vector<MotifKind> out;
  for (const MotifKind k : shapes) {
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

using Pair = std::pair<NodeId, NodeId>;

Pair pick_pair(Rng& rng, const std::vector<Pair>& pairs) {
  Pair p = pairs[rng.below(pairs.size())];
  if (rng.bernoulli(0.5)) std::swap(p.first, p.second);
  return p;
}

std::vector<Pair> all_pairs(const Graph& g) {
  std::vector<Pair> out;
  const auto& nodes = g.nodes();
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) out.emplace_back(nodes[a], nodes[b]);
  }
  return out;
}

Pair sample_edge_query(const Graph& g, Rng& rng, std::vector<std::string>& flags) {
  std::vector<Pair> positives;
  std::vector<Pair> negatives;
  for (const Pair& p : all_pairs(g)) {
    (g.has_edge(p.first, p.second) ? positives : negatives).push_back(p);
  }
  const bool want_positive = rng.bernoulli(0.5);
  if (want_positive && positives.empty()) {
    flags.emplace_back("forced_negative");
    return pick_pair(rng, negatives);
  }
  if (!want_positive && negatives.empty()) {
    flags.emplace_back("forced_positive");
    return pick_pair(rng, positives);
  }
  return pick_pair(rng, want_positive ? positives : negatives);
}

Pair sample_path_query(const Graph& g, Rng& rng, std::vector<std::string>& flags) {
  const auto component = connected_components(g);
  std::vector<Pair> positives;
  std::vector<Pair> negatives;
  for (const Pair& p : all_pairs(g)) {
    const bool joined = component[*g.index_of(p.first)] == component[*g.index_of(p.second)];
    (joined ? positives : negatives).push_back(p);
  }
  const bool want_positive = rng.bernoulli(0.5);
  if (want_positive && positives.empty()) {
    flags.emplace_back("forced_negative");
    return pick_pair(rng, negatives);
  }
  if (!want_positive && negatives.empty()) {
    flags.emplace_back("forced_positive");
    return pick_pair(rng, positives);
  }
  return pick_pair(rng, want_positive ? positives : negatives);
}

}  // namespace

Truth compute_truth(const Graph& g, TaskKind kind, const std::vector<NodeId>& params,
                    const std::vector<MotifKind>& motif_shapes) {
  if (params.size() != query_arity(kind)) {
    throw std::invalid_argument(std::string(to_string(kind)) + " expects " +
                                std::to_string(query_arity(kind)) + " query nodes");
  }
  switch (kind) {
    case TaskKind::NodeCounting: return static_cast<std::int64_t>(g.node_count());
    case TaskKind::MaxDegree: return static_cast<std::int64_t>(g.max_degree());
    case TaskKind::NodeDegree: return static_cast<std::int64_t>(g.degree(params[0]));
    case TaskKind::EdgeExistence: return g.has_edge(params[0], params[1]);
    case TaskKind::Diameter: return static_cast<std::int64_t>(diameter(g));
    case TaskKind::ShortestPath:
      return static_cast<std::int64_t>(shortest_path_len(g, params[0], params[1]).value_or(0));
    case TaskKind::PathExistence: return shortest_path_len(g, params[0], params[1]).has_value();
    case TaskKind::MotifShape: return distinct_shapes(motif_shapes);
  }
  throw std::logic_error("unhandled task kind");
}

TaskInstance make_instance(const GraphRecord& rec, TaskKind kind, std::uint64_t seed) {
  if (!kind_valid_for(rec, kind)) {
    throw InvalidKindForSource(std::string(to_string(kind)) + " is not defined for " + rec.source +
                               " graphs");
  }
  const Graph& g = rec.graph;
  if (query_arity(kind) > g.node_count()) {
    throw std::invalid_argument(std::string(to_string(kind)) + " needs more nodes than " + rec.id + " has");
  }

  TaskInstance inst;
  inst.graph_ref = rec.id;
  inst.kind = kind;
  Rng rng(derive_seed(seed, fnv1a(rec.id, g.hash()), "task/" + std::string(to_string(kind))));

  switch (kind) {
    case TaskKind::NodeDegree:
      inst.params = {g.nodes()[rng.below(g.node_count())]};
      break;
    case TaskKind::EdgeExistence: {
      const auto [a, b] = sample_edge_query(g, rng, inst.flags);
      inst.params = {a, b};
      break;
    }
    case TaskKind::PathExistence: {
      const auto [a, b] = sample_path_query(g, rng, inst.flags);
      inst.params = {a, b};
      break;
    }
    case TaskKind::ShortestPath: {
      const auto pairs = all_pairs(g);
      const auto [a, b] = pick_pair(rng, pairs);
      inst.params = {a, b};
      break;
    }
    default:
      break;
  }
  inst.truth = compute_truth(g, kind, inst.params, rec.motif_shapes);
  return inst;
}

bool verify_instance(const TaskInstance& inst, const Graph& g,
                     const std::vector<MotifKind>& motif_shapes) {
  try {
    return compute_truth(g, inst.kind, inst.params, motif_shapes) == inst.truth;
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<TaskInstance> make_instances(const GraphRecord& rec, std::uint64_t seed) {
  std::vector<TaskInstance> out;
  for (const TaskKind kind : kAllTaskKinds) {
    if (kind_valid_for(rec, kind)) out.push_back(make_instance(rec, kind, seed));
  }
  return out;
}

}  // namespace glin
