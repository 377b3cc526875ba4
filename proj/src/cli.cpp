#include "glin/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "glin/rng.hpp"

namespace glin::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::pair<Ordering, bool> parse_method(std::string_view name) {
  static const std::vector<std::pair<std::string_view, std::pair<Ordering, bool>>> kShort = {
      {"core", {Ordering::CoreNumber, false}},     {"degree", {Ordering::Degree, false}},
      {"pagerank", {Ordering::PageRank, false}},   {"lg-core", {Ordering::CoreNumber, true}},
      {"lg-degree", {Ordering::Degree, true}},     {"lg-pagerank", {Ordering::PageRank, true}},
      {"random", {Ordering::Random, false}},       {"default", {Ordering::DefaultOrder, false}},
  };
  for (const auto& [key, value] : kShort) {
    if (name == key) return value;
  }
  for (const auto& [key, value] : kShort) {
    const LinearizationSpec spec{value.first, value.second, Labeling::DefaultLabels, 0, {}};
    if (name == spec.method_name()) return value;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected core, degree, pagerank, lg-core, lg-degree, lg-pagerank, random or default)");
}

Labeling parse_labeling_name(std::string_view name) {
  if (name == "random") return Labeling::RandomLabels;
  if (name == "relabel") return Labeling::NodeRelabeling;
  if (name == "default") return Labeling::DefaultLabels;
  try {
    return parse_labeling(name);
  } catch (const std::invalid_argument&) {
    throw ConfigError("unknown labeling '" + std::string(name) + "' (expected random, relabel or default)");
  }
}

namespace {

Shots parse_shots_name(std::string_view name) {
  try {
    return parse_shots(name);
  } catch (const std::invalid_argument&) {
    throw ConfigError("unknown shot mode '" + std::string(name) + "' (expected zero or one)");
  }
}

TaskKind parse_task_name(std::string_view name) {
  try {
    return parse_task_kind(name);
  } catch (const std::invalid_argument&) {
    throw ConfigError("unknown task '" + std::string(name) + "'");
  }
}

json string_list(const std::vector<std::string>& items) { return json(items); }

}  // namespace

void RunConfig::validate() const {
  if (datasets.empty()) throw ConfigError("no dataset given");
  for (const auto& path : datasets) {
    if (!fs::is_regular_file(path)) throw ConfigError("dataset file not found: " + path.string());
  }
  if (methods.empty() && !baseline) throw ConfigError("nothing to evaluate: no methods and no baseline");
  if (labelings.empty() && !methods.empty()) throw ConfigError("no labeling given");
  if (shots.empty()) throw ConfigError("no shot mode given");
  for (const auto& m : methods) parse_method(m);
  for (const auto& l : labelings) parse_labeling_name(l);
  for (const auto& s : shots) parse_shots_name(s);
  for (const auto& t : tasks) parse_task_name(t);
  try {
    model_config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json Manifest::to_json() const {
  json j = body;
  j["schema_version"] = kSchemaVersion;
  j["rng"] = std::string(kRngStreamVersion);
  j["motif_definitions"] = std::string(kMotifDefinitionsVersion);
  j["command"] = command;
  return j;
}

void Manifest::write(const fs::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

fs::path manifest_path(const fs::path& output) { return fs::path(output.string() + ".manifest.json"); }

int cmd_generate(const std::string& dataset, std::uint64_t seed, const fs::path& out, std::ostream& log) {
  if (dataset != "graphwave" && dataset != "graphqa") {
    throw ConfigError("unknown dataset '" + dataset + "' (expected graphwave or graphqa)");
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  const Dataset ds = build_dataset(dataset, seed);
  write_dataset(out, ds);

  double nodes = 0.0;
  double edges = 0.0;
  for (const auto& e : ds.entries) {
    nodes += static_cast<double>(e.record.graph.node_count());
    edges += static_cast<double>(e.record.graph.edge_count());
  }
  const double count = static_cast<double>(ds.entries.size());
  const DatasetEntry* exemplar = ds.exemplar();

  Manifest manifest{"generate", {}};
  manifest.body = {{"dataset", dataset},
                   {"seed", seed},
                   {"output", out.string()},
                   {"output_hash", file_hash(out)},
                   {"count", ds.entries.size()},
                   {"mean_nodes", nodes / count},
                   {"mean_edges", edges / count},
                   {"exemplar", exemplar ? json(exemplar->record.id) : json(nullptr)}};
  manifest.write(manifest_path(out));

  log << dataset << ": " << ds.entries.size() << " graphs, mean " << std::fixed << std::setprecision(2)
      << nodes / count << " nodes, " << edges / count << " edges -> " << out.string() << '\n';
  return kOk;
}

int cmd_linearize(const fs::path& dataset, const std::string& method, const std::string& labeling,
                  std::uint64_t seed, int seeds, const fs::path& out, std::ostream& log) {
  const auto [ordering, via_lg] = parse_method(method);
  const Labeling lab = parse_labeling_name(labeling);
  if (seeds < 1) throw ConfigError("--seeds must be at least 1");
  if (!fs::is_regular_file(dataset)) throw ConfigError("dataset file not found: " + dataset.string());
  const Dataset ds = read_dataset(dataset);
  const std::string input_hash = file_hash(dataset);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());

  for (int k = 0; k < seeds; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    const LinearizationSpec spec{ordering, via_lg, lab, s, {}};
    spec.validate();

    std::vector<json> lines;
    lines.reserve(ds.entries.size());
    for (const auto& entry : ds.entries) {
      const LinearizedGraph lg = linearize_record(entry.record, spec);
      if (const auto problem = validate_linearization(entry.record.graph, lg)) {
        log << "validation failed for " << entry.record.id << ": " << *problem << '\n';
        return kValidationFailure;
      }
      lines.push_back(linearized_to_json(entry.record.id, lg));
    }

    fs::path target = out;
    if (seeds > 1) {
      target = out.parent_path() / (out.stem().string() + "-s" + std::to_string(s) + out.extension().string());
    }
    {
      std::ofstream file(target, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + target.string());
      file << json{{"schema_version", kSchemaVersion}, {"spec", spec_to_json(spec)}, {"count", lines.size()}}.dump()
           << '\n';
      for (const auto& line : lines) file << line.dump() << '\n';
      if (!file) throw std::runtime_error("error writing " + target.string());
    }
    Manifest manifest{"linearize", {}};
    manifest.body = {{"input", dataset.string()},
                     {"input_hash", input_hash},
                     {"dataset_seed", ds.seed},
                     {"spec", spec_to_json(spec)},
                     {"method", spec.method_name()},
                     {"count", lines.size()},
                     {"output_hash", file_hash(target)}};
    manifest.write(manifest_path(target));
    log << spec.method_name() << " / " << to_string(lab) << " seed " << s << ": " << lines.size() << " records -> "
        << target.string() << '\n';
  }
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  MatrixConfig matrix;
  for (const auto& m : cfg.methods) matrix.methods.push_back(parse_method(m));
  for (const auto& m : matrix.methods) {
    LinearizationSpec{m.first, m.second, Labeling::DefaultLabels, 0, {}}.validate();
  }
  for (const auto& l : cfg.labelings) matrix.labelings.push_back(parse_labeling_name(l));
  matrix.shots.clear();
  for (const auto& s : cfg.shots) matrix.shots.push_back(parse_shots_name(s));
  for (const auto& t : cfg.tasks) matrix.tasks.push_back(parse_task_name(t));
  matrix.seed = cfg.seed;
  matrix.include_baseline = cfg.baseline;

  fs::create_directories(cfg.out_dir);
  std::shared_ptr<ResponseCache> cache;
  if (cfg.cache) cache = std::make_shared<ResponseCache>(cfg.out_dir / "cache.jsonl");
  std::shared_ptr<ChatModel> model;
  try {
    model = make_model(cfg.model, cfg.model_config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  Gateway gateway(cfg.model_config, model, cache);

  const bool one_shot = std::find(matrix.shots.begin(), matrix.shots.end(), Shots::One) != matrix.shots.end();
  int status = kOk;
  for (const auto& path : cfg.datasets) {
    const Dataset ds = read_dataset(path);
    const std::string stem = path.stem().string();
    matrix.checkpoint_dir = cfg.out_dir / "checkpoints" / stem;
    matrix.prompt_log.reset();
    if (cfg.prompt_log) {
      matrix.prompt_log = cfg.out_dir / (stem + "-prompts.jsonl");
      fs::remove(*matrix.prompt_log);
    }
    const DatasetEntry* exemplar = ds.exemplar();
    if (one_shot && exemplar == nullptr) throw ConfigError(path.string() + " has no one-shot exemplar");

    const std::size_t calls_before = gateway.model_calls();
    const std::size_t hits_before = cache ? cache->hits() : 0;
    const ResultsTable table = run_matrix(ds, matrix, gateway);
    const fs::path csv = cfg.out_dir / (stem + "-results.csv");
    const fs::path text = cfg.out_dir / (stem + "-results.txt");
    emit_report(table, csv, "csv");
    emit_report(table, text, "text");

    std::vector<std::uint64_t> baseline_seeds;
    if (cfg.baseline) {
      for (int i = 0; i < matrix.baseline_seeds; ++i) baseline_seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
    }
    json decoding = {{"temperature", cfg.model_config.temperature},
                     {"top_p", cfg.model_config.top_p},
                     {"context_window", cfg.model_config.context_window}};
    if (cfg.model_config.top_k) decoding["top_k"] = *cfg.model_config.top_k;
    if (cfg.model == "http") decoding["endpoint"] = cfg.model_config.endpoint;

    Manifest manifest{"eval", {}};
    manifest.body = {{"dataset", path.string()},
                     {"dataset_hash", file_hash(path)},
                     {"dataset_seed", ds.seed},
                     {"seed", cfg.seed},
                     {"baseline_seeds", baseline_seeds},
                     {"model", model->name()},
                     {"decoding", decoding},
                     {"methods", string_list(cfg.methods)},
                     {"labelings", string_list(cfg.labelings)},
                     {"shots", string_list(cfg.shots)},
                     {"cells", table.cells.size()},
                     {"incomplete_cells", table.incomplete_cells()},
                     {"model_calls", gateway.model_calls() - calls_before},
                     {"cache_hits", cache ? cache->hits() - hits_before : 0},
                     {"results_hash", file_hash(csv)}};
    if (one_shot) manifest.body["exemplar"] = exemplar->record.id;
    manifest.write(cfg.out_dir / (stem + "-manifest.json"));

    log << stem << ": " << table.cells.size() << " cells, " << table.incomplete_cells() << " incomplete, "
        << gateway.model_calls() - calls_before << " model calls -> " << csv.string() << '\n';
    if (table.incomplete_cells() > 0) status = kPartialEval;
  }
  return status;
}

int cmd_report(const fs::path& results_csv, const std::string& format, const fs::path& out, std::ostream& log) {
  if (format != "csv" && format != "text") throw ConfigError("unknown report format '" + format + "'");
  std::ifstream in(results_csv, std::ios::binary);
  if (!in) throw ConfigError("results file not found: " + results_csv.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  ResultsTable table;
  try {
    table = from_csv(buf.str());
  } catch (const std::runtime_error& e) {
    log << results_csv.string() << ": " << e.what() << '\n';
    return kValidationFailure;
  }
  emit_report(table, out, format);
  Manifest manifest{"report", {}};
  manifest.body = {{"input", results_csv.string()},
                   {"input_hash", file_hash(results_csv)},
                   {"format", format},
                   {"output_hash", file_hash(out)}};
  manifest.write(manifest_path(out));
  log << table.cells.size() << " cells -> " << out.string() << '\n';
  return kOk;
}

int cmd_capacity(std::size_t window, std::ostream& log) {
  log << edge_capacity(window) << '\n';
  return kOk;
}

}  // namespace glin::cli
