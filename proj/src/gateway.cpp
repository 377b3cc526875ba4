#include "glin/gateway.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "glin/rng.hpp"

namespace glin {

std::map<TaskKind, int> default_token_budgets() {
  return {
      {TaskKind::NodeCounting, 16},  {TaskKind::MaxDegree, 16},     {TaskKind::NodeDegree, 16},
      {TaskKind::EdgeExistence, 128}, {TaskKind::Diameter, 128},     {TaskKind::ShortestPath, 128},
      {TaskKind::PathExistence, 128}, {TaskKind::MotifShape, 16},
  };
}

int ModelConfig::budget_for(TaskKind kind) const {
  const auto it = max_output_tokens.find(kind);
  if (it != max_output_tokens.end()) return it->second;
  return default_token_budgets().at(kind);
}

void ModelConfig::validate() const {
  if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw std::invalid_argument("top_p must lie in (0, 1]");
  if (top_k && *top_k <= 0) throw std::invalid_argument("top_k must be positive");
  if (parallelism == 0) throw std::invalid_argument("parallelism must be positive");
  if (retry.max_attempts <= 0) throw std::invalid_argument("retry.max_attempts must be positive");
  for (const auto& [kind, budget] : max_output_tokens) {
    if (budget <= 0) throw std::invalid_argument("output budget must be positive");
  }
}

std::string_view to_string(GatewayError::Code code) {
  switch (code) {
    case GatewayError::Code::ContextOverflow: return "ContextOverflow";
    case GatewayError::Code::Transport: return "Transport";
    case GatewayError::Code::RateLimited: return "RateLimited";
    case GatewayError::Code::AuthMissing: return "AuthMissing";
    case GatewayError::Code::BadResponse: return "BadResponse";
  }
  return "?";
}

nlohmann::json build_chat_request(const ModelConfig& cfg, const PromptRecord& prompt) {
  nlohmann::json body = {
      {"model", cfg.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt.text}}})},
      {"temperature", cfg.temperature},
      {"top_p", cfg.top_p},
      {"max_tokens", cfg.budget_for(prompt.task)},
  };
  if (cfg.top_k) body["top_k"] = *cfg.top_k;
  return body;
}

ModelResponse parse_chat_response(std::string_view body) {
  ModelResponse out;
  try {
    const auto j = nlohmann::json::parse(body);
    const auto& content = j.at("choices").at(0).at("message").at("content");
    out.text = content.is_null() ? std::string() : content.get<std::string>();
    if (const auto usage = j.find("usage"); usage != j.end() && usage->is_object()) {
      out.prompt_tokens = usage->value("prompt_tokens", 0);
      out.completion_tokens = usage->value("completion_tokens", 0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw GatewayError(GatewayError::Code::BadResponse, std::string("malformed chat response: ") + e.what());
  }
  return out;
}

HttpChatModel::HttpChatModel(const ModelConfig& cfg) : model_(cfg.model) {
  const auto scheme_end = cfg.endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("endpoint must be an absolute URL: " + cfg.endpoint);
  }
  const auto path_start = cfg.endpoint.find('/', scheme_end + 3);
  scheme_host_port_ = cfg.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : cfg.endpoint.substr(path_start);

  if (!cfg.api_key_env.empty()) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw GatewayError(GatewayError::Code::AuthMissing,
                         "environment variable " + cfg.api_key_env + " is not set");
    }
    api_key_ = key;
  }
}

ModelResponse HttpChatModel::complete(const ModelConfig& cfg, const PromptRecord& prompt) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(cfg.timeout);
  client.set_read_timeout(cfg.timeout);
  client.set_write_timeout(cfg.timeout);

  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const auto started = std::chrono::steady_clock::now();
  const auto res = client.Post(path_, headers, build_chat_request(cfg, prompt).dump(), "application/json");
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);

  if (!res) {
    throw GatewayError(GatewayError::Code::Transport, "request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 429) {
    throw GatewayError(GatewayError::Code::RateLimited, "rate limited (HTTP 429)");
  }
  if (res->status == 401 || res->status == 403) {
    throw GatewayError(GatewayError::Code::AuthMissing, "rejected credentials (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status >= 500) {
    throw GatewayError(GatewayError::Code::Transport, "server error (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status != 200) {
    throw GatewayError(GatewayError::Code::BadResponse,
                       "unexpected HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  ModelResponse out = parse_chat_response(res->body);
  out.status = res->status;
  out.latency = elapsed;
  return out;
}

ModelResponse PerfectOracleModel::complete(const ModelConfig&, const PromptRecord& prompt) {
  ModelResponse out;
  out.text = prompt.reference_answer;
  return out;
}

ModelResponse ConstantModel::complete(const ModelConfig&, const PromptRecord&) {
  ModelResponse out;
  out.text = answer_;
  return out;
}

ModelResponse UniformRandomModel::complete(const ModelConfig&, const PromptRecord& prompt) {
  Rng rng(derive_seed(seed_, fnv1a(prompt.text), "mock-random"));
  ModelResponse out;
  if (is_yes_no(prompt.task)) {
    out.text = rng.bernoulli(0.5) ? "yes" : "no";
  } else if (prompt.task == TaskKind::MotifShape) {
    out.text = std::string(to_string(kAllMotifKinds[rng.below(kAllMotifKinds.size())]));
  } else {
    out.text = std::to_string(rng.below(prompt.node_count + 1));
  }
  return out;
}

std::shared_ptr<ChatModel> make_model(std::string_view spec, const ModelConfig& cfg) {
  if (spec == "mock:oracle") return std::make_shared<PerfectOracleModel>();
  if (spec.starts_with("mock:constant:")) {
    return std::make_shared<ConstantModel>(std::string(spec.substr(std::string_view("mock:constant:").size())));
  }
  if (spec.starts_with("mock:random:")) {
    const std::string seed(spec.substr(std::string_view("mock:random:").size()));
    try {
      return std::make_shared<UniformRandomModel>(std::stoull(seed));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad seed in model spec: " + std::string(spec));
    }
  }
  if (spec == "http") return std::make_shared<HttpChatModel>(cfg);
  throw std::invalid_argument("unknown model: " + std::string(spec));
}

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      entries_[j.at("key").get<std::string>()] = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      // A torn final line from an interrupted run; skip it.
    }
  }
}

std::string ResponseCache::key(std::string_view model, const ModelConfig& cfg, const PromptRecord& prompt) {
  std::ostringstream params;
  params << std::setprecision(17) << "t=" << cfg.temperature << ";p=" << cfg.top_p
         << ";k=" << (cfg.top_k ? std::to_string(*cfg.top_k) : "-") << ";max=" << cfg.budget_for(prompt.task);
  std::uint64_t h = fnv1a(model);
  h = fnv1a("\x1f", h);
  h = fnv1a(params.str(), h);
  h = fnv1a("\x1f", h);
  // Graphs that differ only in isolated nodes can render identical prompts,
  // so responses are kept per instance.
  h = fnv1a(prompt.instance_ref, h);
  h = fnv1a("\x1f", h);
  h = fnv1a(prompt.text, h);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h << '-' << std::dec << prompt.text.size();
  return os.str();
}

std::optional<std::string> ResponseCache::lookup(const std::string& key) {
  std::lock_guard lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void ResponseCache::store(const std::string& key, const std::string& text) {
  std::lock_guard lock(mutex_);
  if (!entries_.emplace(key, text).second) return;
  if (path_) {
    std::ofstream out(*path_, std::ios::app);
    out << nlohmann::json{{"key", key}, {"text", text}}.dump() << '\n';
    out.flush();
  }
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

Gateway::Gateway(ModelConfig cfg, std::shared_ptr<ChatModel> model, std::shared_ptr<ResponseCache> cache)
    : cfg_(std::move(cfg)),
      model_(std::move(model)),
      cache_(std::move(cache)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  cfg_.validate();
  if (!model_) throw std::invalid_argument("gateway needs a model");
}

ModelResponse Gateway::complete(const PromptRecord& prompt) {
  if (prompt.token_estimate > cfg_.context_window) {
    throw GatewayError(GatewayError::Code::ContextOverflow,
                       "prompt needs ~" + std::to_string(prompt.token_estimate) + " tokens, window is " +
                           std::to_string(cfg_.context_window));
  }

  std::string key;
  if (cache_) {
    key = ResponseCache::key(model_->name(), cfg_, prompt);
    if (auto hit = cache_->lookup(key)) {
      ModelResponse out;
      out.text = std::move(*hit);
      out.status = 0;
      out.from_cache = true;
      out.attempts = 0;
      return out;
    }
  }

  auto backoff = cfg_.retry.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    const std::size_t now = ++in_flight_;
    std::size_t seen = max_in_flight_.load();
    while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
    }
    ++model_calls_;
    try {
      ModelResponse out = model_->complete(cfg_, prompt);
      --in_flight_;
      out.attempts = attempt;
      if (cache_) cache_->store(key, out.text);
      return out;
    } catch (const GatewayError& e) {
      --in_flight_;
      if (!e.retryable() || attempt >= cfg_.retry.max_attempts) throw;
    }
    sleeper_(backoff);
    const auto grown = std::chrono::milliseconds(
        static_cast<std::chrono::milliseconds::rep>(static_cast<double>(backoff.count()) * cfg_.retry.multiplier));
    backoff = std::min(grown, cfg_.retry.max_backoff);
  }
}

std::vector<CompletionResult> Gateway::complete_all(std::span<const PromptRecord> prompts) {
  std::vector<CompletionResult> results(prompts.size());
  std::atomic<std::size_t> next{0};

  const auto work = [&] {
    for (std::size_t i = next++; i < prompts.size(); i = next++) {
      try {
        results[i].response = complete(prompts[i]);
      } catch (const GatewayError& e) {
        results[i].error_code = e.code();
        results[i].error = e.what();
      } catch (const std::exception& e) {
        results[i].error_code = GatewayError::Code::BadResponse;
        results[i].error = e.what();
      }
    }
  };

  const std::size_t workers = std::min(cfg_.parallelism, prompts.size());
  if (workers <= 1) {
    work();
    return results;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();  // joins
  return results;
}

}  // namespace glin
