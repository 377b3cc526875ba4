#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glin/generators.hpp"
#include "glin/graph.hpp"

namespace glin {

enum class TaskKind {
  NodeCounting,
  MaxDegree,
  NodeDegree,
  EdgeExistence,
  Diameter,
  ShortestPath,
  PathExistence,
  MotifShape,
};

inline constexpr std::array<TaskKind, 8> kAllTaskKinds = {
    TaskKind::NodeCounting, TaskKind::MaxDegree,    TaskKind::NodeDegree,    TaskKind::EdgeExistence,
    TaskKind::Diameter,     TaskKind::ShortestPath, TaskKind::PathExistence, TaskKind::MotifShape,
};

/// snake_case identifier, e.g. "edge_existence".
std::string_view to_string(TaskKind kind);
/// Column title, e.g. "Edge Existence".
std::string_view display_name(TaskKind kind);
/// Accepts to_string names. Throws std::invalid_argument.
TaskKind parse_task_kind(std::string_view name);

bool is_numeric(TaskKind kind);
bool is_yes_no(TaskKind kind);
/// Tasks whose instance carries a query node (1) or node pair (2).
std::size_t query_arity(TaskKind kind);

/// Integer answer, yes/no, or the set of motif shapes present.
using Truth = std::variant<std::int64_t, bool, std::vector<MotifKind>>;

/// Canonical answer text: "7", "yes", "star" (first shape of a set).
std::string answer_text(const Truth& truth);

struct TaskInstance {
  std::string graph_ref;
  TaskKind kind = TaskKind::NodeCounting;
  /// Query nodes in original ids: empty, {node} or {node1, node2}.
  std::vector<NodeId> params;
  Truth truth;
  /// Notes such as "forced_positive" when a requested negative pair could not exist.
  std::vector<std::string> flags;

  friend bool operator==(const TaskInstance&, const TaskInstance&) = default;
};

class InvalidKindForSource : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whether `kind` can be asked about `rec` (MotifShape needs a GraphWave record).
bool kind_valid_for(const GraphRecord& rec, TaskKind kind);

/// Samples query parameters for `kind` from a stream seeded by (seed, graph
/// hash, kind) and computes the answer. Existence tasks flip a fair coin for
/// positive/negative so a dataset is balanced in expectation; a negative that
/// cannot exist (complete graph, connected graph for paths) is forced positive
/// and flagged. Throws InvalidKindForSource.
TaskInstance make_instance(const GraphRecord& rec, TaskKind kind, std::uint64_t seed);

/// Ground truth for the instance's kind and params, recomputed on `g`.
/// `motif_shapes` is only consulted for MotifShape.
Truth compute_truth(const Graph& g, TaskKind kind, const std::vector<NodeId>& params,
                    const std::vector<MotifKind>& motif_shapes = {});

/// Recomputes the truth from scratch and compares.
bool verify_instance(const TaskInstance& inst, const Graph& g,
                     const std::vector<MotifKind>& motif_shapes = {});

/// Every valid kind for the record, seeded per (seed, record index).
std::vector<TaskInstance> make_instances(const GraphRecord& rec, std::uint64_t seed);

}  // namespace glin
