// glin: generate datasets, linearize them, evaluate a model and report.
//
// Run configs are INI files passed with --config; keys under [eval] mirror
// the eval flags, e.g.
//
//   [eval]
//   dataset = data/graphwave.jsonl
//   seed = 1
//   methods = core degree lg-pagerank
//   model = http
//   endpoint = http://localhost:8000/v1/chat/completions
//   model-name = my-model
//
// The API key is only ever read from the environment (GLIN_API_KEY by default).

#include <iostream>

#include <CLI11.hpp>

#include "glin/cli.hpp"

namespace {

using namespace glin;

int run(int argc, char** argv) {
  CLI::App app{"Graph linearization toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI run config; [eval] keys mirror the eval flags");

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a dataset as JSONL");
  std::string gen_dataset;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  generate->add_option("dataset", gen_dataset, "graphwave or graphqa")->required();
  generate->add_option("--seed", gen_seed, "Generator seed")->required();
  generate->add_option("--out,-o", gen_out, "Output JSONL")->required();

  // linearize
  auto* linearize = app.add_subcommand("linearize", "Linearize every record of a dataset");
  std::string lin_dataset;
  std::string lin_method = "degree";
  std::string lin_labeling = "relabel";
  std::uint64_t lin_seed = 0;
  int lin_seeds = 1;
  std::string lin_out;
  linearize->add_option("dataset", lin_dataset, "Dataset JSONL")->required();
  linearize->add_option("--method", lin_method, "core, degree, pagerank, lg-core, lg-degree, lg-pagerank, random, default")
      ->capture_default_str();
  linearize->add_option("--labeling", lin_labeling, "random, relabel or default")->capture_default_str();
  linearize->add_option("--seed", lin_seed, "Linearization seed")->required();
  linearize->add_option("--seeds", lin_seeds, "Number of consecutive seeds, one file each")->capture_default_str();
  linearize->add_option("--out,-o", lin_out, "Output JSONL")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "Run the evaluation matrix");
  cli::RunConfig cfg;
  std::vector<std::string> datasets;
  std::string out_dir = cfg.out_dir.string();
  bool no_cache = false;
  bool no_baseline = false;
  int top_k = 0;
  int timeout_s = static_cast<int>(cfg.model_config.timeout.count());
  eval->add_option("--dataset", datasets, "Dataset JSONL (repeatable)")->required();
  eval->add_option("--seed", cfg.seed, "Linearization seed; the baseline uses seed .. seed+4")->required();
  eval->add_option("--methods", cfg.methods, "Structured methods")->capture_default_str();
  eval->add_option("--labelings", cfg.labelings, "Labelings")->capture_default_str();
  eval->add_option("--shots", cfg.shots, "zero and/or one")->capture_default_str();
  eval->add_option("--tasks", cfg.tasks, "Task subset (default: all)");
  eval->add_flag("--no-baseline", no_baseline, "Skip the random baseline row");
  eval->add_option("--model", cfg.model, "mock:oracle, mock:constant:<text>, mock:random:<seed> or http")
      ->capture_default_str();
  eval->add_option("--endpoint", cfg.model_config.endpoint, "Chat-completions URL")->capture_default_str();
  eval->add_option("--model-name", cfg.model_config.model, "Model name sent to the endpoint");
  eval->add_option("--temperature", cfg.model_config.temperature)->capture_default_str();
  eval->add_option("--top-p", cfg.model_config.top_p)->capture_default_str();
  eval->add_option("--top-k", top_k, "Sent only when > 0");
  eval->add_option("--context-window", cfg.model_config.context_window)->capture_default_str();
  eval->add_option("--parallelism", cfg.model_config.parallelism, "Max in-flight requests")->capture_default_str();
  eval->add_option("--timeout", timeout_s, "Request timeout in seconds")->capture_default_str();
  eval->add_option("--max-attempts", cfg.model_config.retry.max_attempts)->capture_default_str();
  eval->add_option("--api-key-env", cfg.model_config.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  eval->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  eval->add_flag("--no-cache", no_cache, "Do not read or write the response cache");
  eval->add_flag("--prompt-log", cfg.prompt_log, "Write every prompt to <dataset>-prompts.jsonl");

  // report
  auto* report = app.add_subcommand("report", "Render a results CSV");
  std::string rep_in;
  std::string rep_format = "text";
  std::string rep_out;
  report->add_option("results", rep_in, "Results CSV")->required();
  report->add_option("--format", rep_format, "csv or text")->capture_default_str();
  report->add_option("--out,-o", rep_out, "Output file")->required();

  // capacity
  auto* capacity = app.add_subcommand("capacity", "Largest edge count that fits a context window");
  std::size_t window = 0;
  capacity->add_option("window", window, "Context window in tokens")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kConfigError;
  }

  try {
    if (*generate) return cli::cmd_generate(gen_dataset, gen_seed, gen_out, std::cout);
    if (*linearize) return cli::cmd_linearize(lin_dataset, lin_method, lin_labeling, lin_seed, lin_seeds, lin_out, std::cout);
    if (*eval) {
      cfg.datasets.assign(datasets.begin(), datasets.end());
      cfg.out_dir = out_dir;
      cfg.cache = !no_cache;
      cfg.baseline = !no_baseline;
      if (top_k > 0) cfg.model_config.top_k = top_k;
      cfg.model_config.timeout = std::chrono::seconds(timeout_s);
      return cli::cmd_eval(cfg, std::cout);
    }
    if (*report) return cli::cmd_report(rep_in, rep_format, rep_out, std::cout);
    if (*capacity) return cli::cmd_capacity(window, std::cout);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const LinearizationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const GatewayError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return e.code() == GatewayError::Code::AuthMissing ? cli::kConfigError : cli::kPartialEval;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kValidationFailure;
  }
  return cli::kConfigError;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
