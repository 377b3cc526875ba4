#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "glin/prompts.hpp"
#include "glin/tasks.hpp"

namespace glin {

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30'000};
};

/// Output-token budget per task: 16 for the short-answer tasks, 128 for the
/// rest.
std::map<TaskKind, int> default_token_budgets();

struct ModelConfig {
  /// Full URL of the chat-completions route.
  std::string endpoint = "http://localhost:8000/v1/chat/completions";
  std::string model;
  double temperature = 1e-3;
  /// Nucleus sampling.
  double top_p = 1e-1;
  /// Sent only when set; some servers reject it.
  std::optional<int> top_k;
  std::map<TaskKind, int> max_output_tokens = default_token_budgets();
  std::size_t context_window = 8192;
  std::chrono::seconds timeout{120};
  RetryPolicy retry;
  std::size_t parallelism = 4;
  /// Name of the environment variable holding the API key. Empty = no auth.
  std::string api_key_env = "GLIN_API_KEY";

  int budget_for(TaskKind kind) const;
  /// Throws std::invalid_argument.
  void validate() const;
};

struct ModelResponse {
  std::string text;
  std::chrono::milliseconds latency{0};
  int prompt_tokens = 0;
  int completion_tokens = 0;
  /// HTTP status, 200 for test doubles, 0 when replayed from the cache.
  int status = 200;
  bool from_cache = false;
  int attempts = 1;
};

class GatewayError : public std::runtime_error {
 public:
  enum class Code { ContextOverflow, Transport, RateLimited, AuthMissing, BadResponse };

  GatewayError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }
  bool retryable() const noexcept { return code_ == Code::Transport || code_ == Code::RateLimited; }

 private:
  Code code_;
};

std::string_view to_string(GatewayError::Code code);

/// A chat model. Implementations must be safe to call from several threads.
class ChatModel {
 public:
  virtual ~ChatModel() = default;
  virtual std::string name() const = 0;
  /// Single attempt; transport problems surface as GatewayError.
  virtual ModelResponse complete(const ModelConfig& cfg, const PromptRecord& prompt) = 0;
};

/// Request body: {model, messages:[{role:"user", content}], temperature,
/// top_p, max_tokens[, top_k]}.
nlohmann::json build_chat_request(const ModelConfig& cfg, const PromptRecord& prompt);

/// Extracts choices[0].message.content and usage counts. Throws
/// GatewayError(BadResponse).
ModelResponse parse_chat_response(std::string_view body);

/// OpenAI-compatible chat-completions client.
class HttpChatModel final : public ChatModel {
 public:
  /// Reads the API key from cfg.api_key_env; throws GatewayError(AuthMissing)
  /// when that variable is named but unset.
  explicit HttpChatModel(const ModelConfig& cfg);

  std::string name() const override { return model_; }
  ModelResponse complete(const ModelConfig& cfg, const PromptRecord& prompt) override;

 private:
  std::string model_;
  std::string scheme_host_port_;
  std::string path_;
  std::string api_key_;
};

/// Answers with the prompt's reference answer.
class PerfectOracleModel final : public ChatModel {
 public:
  std::string name() const override { return "mock:oracle"; }
  ModelResponse complete(const ModelConfig& cfg, const PromptRecord& prompt) override;
};

/// Always answers the same text.
class ConstantModel final : public ChatModel {
 public:
  explicit ConstantModel(std::string answer) : answer_(std::move(answer)) {}
  std::string name() const override { return "mock:constant:" + answer_; }
  ModelResponse complete(const ModelConfig& cfg, const PromptRecord& prompt) override;

 private:
  std::string answer_;
};

/// Uniform guess from the task's answer space (yes/no, one of the five shapes,
/// or an integer in [0, n]), seeded by (seed, prompt text).
class UniformRandomModel final : public ChatModel {
 public:
  explicit UniformRandomModel(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "mock:random:" + std::to_string(seed_); }
  ModelResponse complete(const ModelConfig& cfg, const PromptRecord& prompt) override;

 private:
  std::uint64_t seed_;
};

/// "mock:oracle", "mock:constant:<text>", "mock:random:<seed>" or "http".
/// Throws std::invalid_argument for anything else.
std::shared_ptr<ChatModel> make_model(std::string_view spec, const ModelConfig& cfg);

/// Append-only JSONL store of responses keyed by (model, decoding parameters,
/// instance, prompt). Thread-safe.
class ResponseCache {
 public:
  /// In-memory only.
  ResponseCache() = default;
  /// Loads existing entries from `path` and appends new ones to it.
  explicit ResponseCache(std::filesystem::path path);

  static std::string key(std::string_view model, const ModelConfig& cfg, const PromptRecord& prompt);

  std::optional<std::string> lookup(const std::string& key);
  void store(const std::string& key, const std::string& text);

  std::size_t size() const;
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  mutable std::mutex mutex_;
  std::optional<std::filesystem::path> path_;
  std::unordered_map<std::string, std::string> entries_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

struct CompletionResult {
  std::optional<ModelResponse> response;
  std::optional<GatewayError::Code> error_code;
  std::string error;

  bool ok() const { return response.has_value(); }
};

/// Applies the context pre-flight check, the response cache, retries with
/// exponential backoff, and a bound on in-flight requests.
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  Gateway(ModelConfig cfg, std::shared_ptr<ChatModel> model, std::shared_ptr<ResponseCache> cache = nullptr);

  /// Replaces the sleep used between retries (tests).
  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

  /// Throws GatewayError: ContextOverflow when the prompt's estimate exceeds
  /// the context window, or the last error once retries are exhausted.
  ModelResponse complete(const PromptRecord& prompt);

  /// Runs every prompt on a pool of at most cfg.parallelism workers. Results
  /// are in input order; failures are reported per prompt.
  std::vector<CompletionResult> complete_all(std::span<const PromptRecord> prompts);

  const ModelConfig& config() const { return cfg_; }
  const ChatModel& model() const { return *model_; }
  std::size_t model_calls() const { return model_calls_; }
  std::size_t max_in_flight() const { return max_in_flight_; }

 private:
  ModelConfig cfg_;
  std::shared_ptr<ChatModel> model_;
  std::shared_ptr<ResponseCache> cache_;
  Sleeper sleeper_;
  std::atomic<std::size_t> model_calls_{0};
  std::atomic<std::size_t> in_flight_{0};
  std::atomic<std::size_t> max_in_flight_{0};
};

}  // namespace glin
