#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glin/eval.hpp"

namespace glin::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kPartialEval = 2,
  kConfigError = 3,
};

/// Bad user input: unknown names, missing files, inconsistent options.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Short method names: core, degree, pagerank, lg-core, lg-degree,
/// lg-pagerank, random, default. Report names ("LG{Degree}") are accepted too.
std::pair<Ordering, bool> parse_method(std::string_view name);
/// random, relabel, default, or the enum names.
Labeling parse_labeling_name(std::string_view name);

struct RunConfig {
  /// Dataset JSONL files written by `generate`.
  std::vector<std::filesystem::path> datasets;
  std::uint64_t seed = 0;
  std::vector<std::string> methods = {"core", "degree", "pagerank", "lg-core", "lg-degree", "lg-pagerank"};
  std::vector<std::string> labelings = {"random", "relabel"};
  std::vector<std::string> shots = {"zero", "one"};
  /// Empty = every task of each dataset.
  std::vector<std::string> tasks;
  bool baseline = true;
  /// "mock:oracle", "mock:constant:<text>", "mock:random:<seed>" or "http".
  std::string model = "mock:oracle";
  ModelConfig model_config;
  std::filesystem::path out_dir = "results";
  bool cache = true;
  bool prompt_log = false;

  /// Throws ConfigError.
  void validate() const;
};

struct Manifest {
  std::string command;
  nlohmann::json body = nlohmann::json::object();

  /// Adds schema_version, rng stream, motif definition version and command.
  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

/// "<file>.manifest.json" next to an output file.
std::filesystem::path manifest_path(const std::filesystem::path& output);

/// Writes the dataset JSONL and its manifest; prints count and mean sizes.
int cmd_generate(const std::string& dataset, std::uint64_t seed, const std::filesystem::path& out,
                 std::ostream& log);

/// One linearized record per line, after a header line. With seeds > 1 the
/// files are "<stem>-s<seed><ext>" for seed .. seed + seeds - 1. Nothing is
/// written if any record fails validation.
int cmd_linearize(const std::filesystem::path& dataset, const std::string& method, const std::string& labeling,
                  std::uint64_t seed, int seeds, const std::filesystem::path& out, std::ostream& log);

/// Per dataset: "<name>-results.csv", "<name>-results.txt", a manifest and
/// checkpoints under "checkpoints/<name>". Returns kPartialEval when any cell
/// is incomplete.
int cmd_eval(const RunConfig& cfg, std::ostream& log);

/// Re-renders a results CSV as "csv" or "text".
int cmd_report(const std::filesystem::path& results_csv, const std::string& format,
               const std::filesystem::path& out, std::ostream& log);

/// Prints floor((window - 100) / 5).
int cmd_capacity(std::size_t window, std::ostream& log);

}  // namespace glin::cli
