#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "glin/linearizer.hpp"
#include "glin/tasks.hpp"

namespace glin {

enum class Shots { Zero, One };

std::string_view to_string(Shots shots);
Shots parse_shots(std::string_view name);

/// Version of the motif definition texts below; recorded in prompt manifests.
inline constexpr std::string_view kMotifDefinitionsVersion = "motif-defs-v1";

/// One-sentence definition matching the generator's construction of `kind`.
std::string_view motif_definition(MotifKind kind);

struct PromptRecord {
  std::string text;
  TaskKind task = TaskKind::NodeCounting;
  Shots shots = Shots::Zero;
  std::optional<std::string> exemplar_ref;
  std::size_t token_estimate = 0;
  std::string instance_ref;
  /// Gold answer text. Never sent to a model; used by test doubles and audit.
  std::string reference_answer;
  /// Node count of the query graph, used to size random guesses.
  std::size_t node_count = 0;
};

/// The one-shot example: an instance of the same task on another graph, with
/// that graph linearized the same way as the query.
struct Exemplar {
  const TaskInstance& instance;
  const LinearizedGraph& graph;
};

class PromptError : public std::invalid_argument {
 public:
  enum class Code { MissingExemplar, KindMismatch };

  PromptError(Code code, const std::string& what) : std::invalid_argument(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Fills the task's template with the rendered edge list and the query nodes
/// under `lg`'s labels. One-shot prompts prepend
///   "Example:\n<exemplar prompt>\nAnswer: <gold>\n\n".
/// Throws PromptError when an exemplar is missing for Shots::One, given for
/// Shots::Zero, asks a different task, or is the query graph itself.
PromptRecord render_prompt(const TaskInstance& inst, const LinearizedGraph& lg, Shots shots,
                           const std::optional<Exemplar>& exemplar = std::nullopt);

/// Template body alone (no exemplar wrapper).
std::string render_question(const TaskInstance& inst, const LinearizedGraph& lg);

inline constexpr std::size_t kTaskDescriptionTokens = 100;
inline constexpr std::size_t kTokensPerEdge = 5;

/// 100 + 5 m.
std::size_t estimate_tokens(const LinearizedGraph& lg);
std::size_t estimate_tokens_for_edges(std::size_t edges);

/// Largest edge count whose estimate fits in `context_window`:
/// floor((window - 100) / 5), 0 when the window cannot hold the description.
std::size_t edge_capacity(std::size_t context_window);

}  // namespace glin
