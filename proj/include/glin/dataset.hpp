#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glin/generators.hpp"
#include "glin/linearizer.hpp"
#include "glin/tasks.hpp"

namespace glin {

inline constexpr int kSchemaVersion = 1;

/// One generated graph with its fixed task instances.
struct DatasetEntry {
  GraphRecord record;
  std::vector<TaskInstance> tasks;

  const TaskInstance* task(TaskKind kind) const;
};

struct Dataset {
  /// "graphwave" or "graphqa".
  std::string name;
  std::uint64_t seed = 0;
  std::vector<DatasetEntry> entries;

  const DatasetEntry* exemplar() const;
  const DatasetEntry* find(const std::string& id) const;
  /// Task kinds asked on at least one entry, in canonical order.
  std::vector<TaskKind> task_kinds() const;
};

/// Generates the named dataset and its task instances. Throws
/// std::invalid_argument for an unknown name.
Dataset build_dataset(const std::string& name, std::uint64_t seed);

// JSON forms. A graph is {"nodes": [...], "edges": [[u, v], ...]}.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const TaskInstance& inst);
TaskInstance instance_from_json(const nlohmann::json& j);
nlohmann::json entry_to_json(const DatasetEntry& entry);
DatasetEntry entry_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const LinearizationSpec& spec);
LinearizationSpec spec_from_json(const nlohmann::json& j);
/// {"id", "spec", "labels", "edges"}; labels align with the record's nodes.
nlohmann::json linearized_to_json(const std::string& record_id, const LinearizedGraph& lg);

/// Header line: {"schema_version", "generator", "seed", "count"}, then one
/// entry per line.
void write_dataset(std::ostream& out, const Dataset& ds);
void write_dataset(const std::filesystem::path& path, const Dataset& ds);
/// Throws std::runtime_error on a malformed file.
Dataset read_dataset(std::istream& in);
Dataset read_dataset(const std::filesystem::path& path);

/// Hex FNV-1a of a file's bytes, for manifests.
std::string file_hash(const std::filesystem::path& path);

/// Linearizes a dataset record, replaying its generator order for
/// DefaultOrder. Line-graph orderings of an edgeless graph yield an empty
/// sequence instead of failing.
LinearizedGraph linearize_record(const GraphRecord& rec, const LinearizationSpec& spec);

/// Checks edge-multiset preservation and label bijectivity; returns a
/// description of the first violation.
std::optional<std::string> validate_linearization(const Graph& g, const LinearizedGraph& lg);

}  // namespace glin
