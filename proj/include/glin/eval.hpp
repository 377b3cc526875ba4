#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glin/dataset.hpp"
#include "glin/gateway.hpp"
#include "glin/linearizer.hpp"
#include "glin/prompts.hpp"
#include "glin/tasks.hpp"

namespace glin {

using Answer = std::variant<std::int64_t, bool, MotifKind>;

struct ParsedAnswer {
  /// nullopt = unparseable.
  std::optional<Answer> value;
  /// MotifShape only: more than one distinct shape was named.
  bool multi_mention = false;

  bool parseable() const { return value.has_value(); }
};

/// Numeric tasks take the first integer in the text, yes/no tasks the first
/// standalone "yes" or "no" (any case), MotifShape the first shape name
/// (singular or plural). Never throws.
ParsedAnswer parse_answer(TaskKind kind, std::string_view raw) noexcept;

/// Exact match; for MotifShape the parsed shape only needs to be one of the
/// shapes present. Unparseable answers are wrong.
bool is_correct(const Truth& truth, const ParsedAnswer& parsed);

struct EvalRecord {
  std::string instance_ref;
  TaskKind task = TaskKind::NodeCounting;
  LinearizationSpec method;
  Shots shots = Shots::Zero;
  std::string raw_response;
  ParsedAnswer parsed;
  bool correct = false;
};

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fraction of correct records. Throws EmptyInput.
double exact_accuracy(std::span<const EvalRecord> records);

/// One row of the results table: a linearization method under a labeling,
/// or the random baseline.
struct MethodRow {
  Ordering ordering = Ordering::Degree;
  bool via_linegraph = false;
  Labeling labeling = Labeling::RandomLabels;
  bool baseline = false;

  /// "Degree", "LG{CoreNumber}", "DefaultOrder", "Baseline".
  std::string name() const;
  /// Report group: "Random Labels", "Node Relabeling", "Default Labels", "Baseline".
  std::string group() const;

  friend bool operator==(const MethodRow&, const MethodRow&) = default;
};

struct Cell {
  MethodRow row;
  TaskKind task = TaskKind::NodeCounting;
  Shots shots = Shots::Zero;
  std::size_t n_instances = 0;
  double accuracy = 0.0;
  /// Linearization seeds; five for the baseline.
  std::vector<std::uint64_t> seeds;
  /// Baseline: accuracy per seed, aligned with `seeds`.
  std::vector<double> per_seed_accuracy;
  bool complete = true;
  std::size_t failures = 0;
};

struct ResultsTable {
  std::string model;
  std::string dataset;
  std::vector<TaskKind> tasks;
  std::vector<Shots> shots;
  std::vector<Cell> cells;

  /// Rows in first-appearance order.
  std::vector<MethodRow> rows() const;
  const Cell* find(const MethodRow& row, TaskKind task, Shots shots) const;
  /// Mean over the row's task cells for one shot mode; nullopt if none.
  std::optional<double> average(const MethodRow& row, Shots shots) const;
  std::size_t incomplete_cells() const;
};

struct MatrixConfig {
  /// Structured methods (Ordering + linegraph flag), crossed with every labeling.
  std::vector<std::pair<Ordering, bool>> methods;
  std::vector<Labeling> labelings;
  std::vector<Shots> shots = {Shots::Zero, Shots::One};
  /// Empty = every task the dataset defines.
  std::vector<TaskKind> tasks;
  std::uint64_t seed = 0;
  bool include_baseline = true;
  int baseline_seeds = 5;
  /// Finished cells are stored here and reused on the next run.
  std::optional<std::filesystem::path> checkpoint_dir;
  /// Every rendered prompt is appended here as JSONL.
  std::optional<std::filesystem::path> prompt_log;
};

/// The six structured methods: {CoreNumber, Degree, PageRank}, plain and via
/// the line graph.
std::vector<std::pair<Ordering, bool>> structured_methods();

/// Evaluates one (row, task, shots) cell for one linearization seed.
/// Instances come from the dataset (paired across methods); the exemplar
/// record is excluded from scoring and, in one-shot mode, linearized the same
/// way as the query. Gateway failures leave the affected records incorrect and
/// are counted in `failures`.
struct CellRun {
  std::vector<EvalRecord> records;
  std::size_t failures = 0;
};
CellRun run_cell(const Dataset& ds, const MethodRow& row, TaskKind task, Shots shots, std::uint64_t seed,
                 Gateway& gateway, std::ostream* prompt_log = nullptr);

/// Full matrix: every method x labeling x task x shots, plus the baseline
/// averaged over seeds seed .. seed + baseline_seeds - 1.
ResultsTable run_matrix(const Dataset& ds, const MatrixConfig& cfg, Gateway& gateway);

// Reports.

/// Columns: method,labeling,linegraph,task,shots,n_instances,accuracy,seeds
std::string to_csv(const ResultsTable& table);
/// Throws std::runtime_error on malformed input.
ResultsTable from_csv(std::string_view csv);

/// Aligned text table, tasks as columns plus Average, "zero / one" percent
/// cells. Within each labeling group the best value per column is wrapped in
/// _underscores_; the best over all non-baseline rows in **asterisks**. Ties
/// mark every tied cell.
std::string render_text(const ResultsTable& table);

/// Writes `table` as "csv" or "text". Throws std::runtime_error on IO failure
/// or an unknown format.
void emit_report(const ResultsTable& table, const std::filesystem::path& path, std::string_view format);

}  // namespace glin
