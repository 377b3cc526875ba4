#include "glin/eval.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "glin/rng.hpp"

namespace glin {

namespace {

std::string lower_word(std::string_view text, std::size_t begin, std::size_t end) {
  std::string w(text.substr(begin, end - begin));
  for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return w;
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Calls visit(word) for each maximal run of letters until it returns true.
template <typename Visit>
void for_each_word(std::string_view text, Visit visit) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alpha(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_alpha(text[i])) ++i;
    if (i > start && visit(lower_word(text, start, i))) return;
  }
}

std::optional<MotifKind> shape_word(const std::string& word) {
  for (const MotifKind kind : kAllMotifKinds) {
    const std::string_view name = to_string(kind);
    if (word == name || (word.size() == name.size() + 1 && word.starts_with(name) && word.back() == 's')) {
      return kind;
    }
  }
  return std::nullopt;
}

}  // namespace

ParsedAnswer parse_answer(TaskKind kind, std::string_view raw) noexcept {
  ParsedAnswer out;
  try {
    if (is_numeric(kind)) {
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!is_digit(raw[i])) continue;
        std::size_t start = i;
        if (i > 0 && raw[i - 1] == '-' && (i < 2 || !std::isalnum(static_cast<unsigned char>(raw[i - 2])))) {
          start = i - 1;
        }
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(raw.data() + start, raw.data() + raw.size(), value);
        if (ec == std::errc()) out.value = value;
        break;
      }
    } else if (is_yes_no(kind)) {
      for_each_word(raw, [&](const std::string& w) {
        if (w == "yes" || w == "no") {
          out.value = (w == "yes");
          return true;
        }
        return false;
      });
    } else {
      for_each_word(raw, [&](const std::string& w) {
        const auto shape = shape_word(w);
        if (!shape) return false;
        if (!out.value) {
          out.value = *shape;
        } else if (std::get<MotifKind>(*out.value) != *shape) {
          out.multi_mention = true;
          return true;
        }
        return false;
      });
    }
  } catch (...) {
    out = ParsedAnswer{};
  }
  return out;
}

bool is_correct(const Truth& truth, const ParsedAnswer& parsed) {
  if (!parsed.value) return false;
  if (const auto* n = std::get_if<std::int64_t>(&truth)) {
    const auto* got = std::get_if<std::int64_t>(&*parsed.value);
    return got && *got == *n;
  }
  if (const auto* b = std::get_if<bool>(&truth)) {
    const auto* got = std::get_if<bool>(&*parsed.value);
    return got && *got == *b;
  }
  const auto& shapes = std::get<std::vector<MotifKind>>(truth);
  const auto* got = std::get_if<MotifKind>(&*parsed.value);
  return got && std::find(shapes.begin(), shapes.end(), *got) != shapes.end();
}

double exact_accuracy(std::span<const EvalRecord> records) {
  if (records.empty()) throw EmptyInput("exact accuracy of an empty record set");
  std::size_t correct = 0;
  for (const auto& r : records) correct += r.correct ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

std::string MethodRow::name() const {
  if (baseline) return "Baseline";
  return LinearizationSpec{ordering, via_linegraph, labeling, 0, {}}.method_name();
}

std::string MethodRow::group() const {
  if (baseline) return "Baseline";
  switch (labeling) {
    case Labeling::RandomLabels: return "Random Labels";
    case Labeling::NodeRelabeling: return "Node Relabeling";
    case Labeling::DefaultLabels: return "Default Labels";
  }
  return "?";
}

std::vector<MethodRow> ResultsTable::rows() const {
  std::vector<MethodRow> out;
  for (const Cell& c : cells) {
    if (std::find(out.begin(), out.end(), c.row) == out.end()) out.push_back(c.row);
  }
  return out;
}

const Cell* ResultsTable::find(const MethodRow& row, TaskKind task, Shots s) const {
  const auto it = std::find_if(cells.begin(), cells.end(), [&](const Cell& c) {
    return c.row == row && c.task == task && c.shots == s;
  });
  return it == cells.end() ? nullptr : &*it;
}

std::optional<double> ResultsTable::average(const MethodRow& row, Shots s) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const TaskKind task : tasks) {
    if (const Cell* c = find(row, task, s)) {
      sum += c->accuracy;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::size_t ResultsTable::incomplete_cells() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const Cell& c) { return !c.complete; }));
}

std::vector<std::pair<Ordering, bool>> structured_methods() {
  std::vector<std::pair<Ordering, bool>> out;
  for (const bool lg : {false, true}) {
    for (const Ordering o : {Ordering::CoreNumber, Ordering::Degree, Ordering::PageRank}) out.emplace_back(o, lg);
  }
  return out;
}

namespace {

LinearizationSpec spec_for(const MethodRow& row, std::uint64_t seed) {
  if (row.baseline) return {Ordering::Random, false, Labeling::RandomLabels, seed, {}};
  return {row.ordering, row.via_linegraph, row.labeling, seed, {}};
}

std::vector<LinearizedGraph> linearize_all(const Dataset& ds, const LinearizationSpec& spec) {
  std::vector<LinearizedGraph> out;
  out.reserve(ds.entries.size());
  for (const auto& entry : ds.entries) out.push_back(linearize_record(entry.record, spec));
  return out;
}

CellRun score_cell(const Dataset& ds, const std::vector<LinearizedGraph>& lgs, const LinearizationSpec& spec,
                   TaskKind task, Shots shots, Gateway& gateway, std::ostream* prompt_log) {
  std::optional<Exemplar> exemplar;
  std::string exemplar_id;
  if (shots == Shots::One) {
    const DatasetEntry* ex = ds.exemplar();
    if (ex == nullptr || ex->task(task) == nullptr) {
      throw PromptError(PromptError::Code::MissingExemplar,
                        "dataset " + ds.name + " has no exemplar for " + std::string(to_string(task)));
    }
    const auto index = static_cast<std::size_t>(ex - ds.entries.data());
    exemplar.emplace(Exemplar{*ex->task(task), lgs[index]});
    exemplar_id = ex->record.id;
  }

  std::vector<PromptRecord> prompts;
  std::vector<const TaskInstance*> instances;
  for (std::size_t i = 0; i < ds.entries.size(); ++i) {
    const DatasetEntry& entry = ds.entries[i];
    if (entry.record.exemplar) continue;
    const TaskInstance* inst = entry.task(task);
    if (inst == nullptr) continue;
    prompts.push_back(render_prompt(*inst, lgs[i], shots, exemplar));
    instances.push_back(inst);
  }

  if (prompt_log != nullptr) {
    for (const auto& p : prompts) {
      nlohmann::json j = {{"instance", p.instance_ref},
                          {"task", std::string(to_string(p.task))},
                          {"shots", std::string(to_string(p.shots))},
                          {"spec", spec_to_json(spec)},
                          {"token_estimate", p.token_estimate},
                          {"text", p.text}};
      if (p.exemplar_ref) j["exemplar"] = *p.exemplar_ref;
      *prompt_log << j.dump() << '\n';
    }
  }

  const auto responses = gateway.complete_all(prompts);
  CellRun run;
  run.records.reserve(prompts.size());
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    EvalRecord rec;
    rec.instance_ref = instances[i]->graph_ref;
    rec.task = task;
    rec.method = spec;
    rec.shots = shots;
    if (responses[i].ok()) {
      rec.raw_response = responses[i].response->text;
      rec.parsed = parse_answer(task, rec.raw_response);
      rec.correct = is_correct(instances[i]->truth, rec.parsed);
    } else {
      ++run.failures;
    }
    run.records.push_back(std::move(rec));
  }
  return run;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json row_to_json(const MethodRow& row) {
  return {{"ordering", std::string(to_string(row.ordering))},
          {"via_linegraph", row.via_linegraph},
          {"labeling", std::string(to_string(row.labeling))},
          {"baseline", row.baseline}};
}

MethodRow row_from_json(const nlohmann::json& j) {
  return {parse_ordering(j.at("ordering").get<std::string>()), j.at("via_linegraph").get<bool>(),
          parse_labeling(j.at("labeling").get<std::string>()), j.at("baseline").get<bool>()};
}

nlohmann::json cell_to_json(const Cell& c) {
  return {{"row", row_to_json(c.row)},
          {"task", std::string(to_string(c.task))},
          {"shots", std::string(to_string(c.shots))},
          {"n_instances", c.n_instances},
          {"accuracy", c.accuracy},
          {"seeds", c.seeds},
          {"per_seed_accuracy", c.per_seed_accuracy}};
}

Cell cell_from_json(const nlohmann::json& j) {
  Cell c;
  c.row = row_from_json(j.at("row"));
  c.task = parse_task_kind(j.at("task").get<std::string>());
  c.shots = parse_shots(j.at("shots").get<std::string>());
  c.n_instances = j.at("n_instances").get<std::size_t>();
  c.accuracy = j.at("accuracy").get<double>();
  c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  c.per_seed_accuracy = j.at("per_seed_accuracy").get<std::vector<double>>();
  return c;
}

class Checkpoints {
 public:
  Checkpoints(std::optional<std::filesystem::path> dir, const Dataset& ds, const Gateway& gateway)
      : dir_(std::move(dir)) {
    if (dir_) std::filesystem::create_directories(*dir_);
    scope_ = gateway.model().name() + "|" + ds.name + "|" + std::to_string(ds.seed) + "|" +
             std::to_string(ds.entries.size());
  }

  std::optional<Cell> load(const Cell& key) const {
    if (!dir_) return std::nullopt;
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    try {
      nlohmann::json j;
      in >> j;
      if (j.at("scope").get<std::string>() != scope_) return std::nullopt;
      Cell c = cell_from_json(j.at("cell"));
      if (!(c.row == key.row) || c.task != key.task || c.shots != key.shots || c.seeds != key.seeds) {
        return std::nullopt;
      }
      return c;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  void save(const Cell& cell) const {
    if (!dir_ || !cell.complete) return;
    const auto final_path = path(cell);
    const auto tmp = final_path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << nlohmann::json{{"scope", scope_}, {"cell", cell_to_json(cell)}}.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, final_path);
  }

 private:
  std::filesystem::path path(const Cell& c) const {
    std::string id = scope_ + "|" + row_to_json(c.row).dump() + "|" + std::string(to_string(c.task)) + "|" +
                     std::string(to_string(c.shots)) + "|";
    for (const auto s : c.seeds) id += std::to_string(s) + ",";
    return *dir_ / ("cell-" + hex64(fnv1a(id)) + ".json");
  }

  std::optional<std::filesystem::path> dir_;
  std::string scope_;
};

}  // namespace

CellRun run_cell(const Dataset& ds, const MethodRow& row, TaskKind task, Shots shots, std::uint64_t seed,
                 Gateway& gateway, std::ostream* prompt_log) {
  const LinearizationSpec spec = spec_for(row, seed);
  const auto lgs = linearize_all(ds, spec);
  return score_cell(ds, lgs, spec, task, shots, gateway, prompt_log);
}

ResultsTable run_matrix(const Dataset& ds, const MatrixConfig& cfg, Gateway& gateway) {
  ResultsTable table;
  table.model = gateway.model().name();
  table.dataset = ds.name;
  table.shots = cfg.shots;
  const auto available = ds.task_kinds();
  if (cfg.tasks.empty()) {
    table.tasks = available;
  } else {
    for (const TaskKind t : cfg.tasks) {
      if (std::find(available.begin(), available.end(), t) != available.end()) table.tasks.push_back(t);
    }
  }

  std::vector<MethodRow> rows;
  for (const Labeling labeling : cfg.labelings) {
    for (const auto& [ordering, lg] : cfg.methods) rows.push_back({ordering, lg, labeling, false});
  }
  if (cfg.include_baseline) rows.push_back({Ordering::Random, false, Labeling::RandomLabels, true});

  std::optional<std::ofstream> log_file;
  if (cfg.prompt_log) {
    log_file.emplace(*cfg.prompt_log, std::ios::app);
    if (!*log_file) throw std::runtime_error("cannot write " + cfg.prompt_log->string());
  }
  std::ostream* log = log_file ? &*log_file : nullptr;
  const Checkpoints checkpoints(cfg.checkpoint_dir, ds, gateway);

  for (const MethodRow& row : rows) {
    std::vector<std::uint64_t> seeds;
    const int seed_count = row.baseline ? cfg.baseline_seeds : 1;
    for (int i = 0; i < seed_count; ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));

    // Cells of this row, in table order; restored ones are done.
    std::vector<Cell> row_cells;
    std::vector<bool> restored;
    for (const TaskKind task : table.tasks) {
      for (const Shots s : cfg.shots) {
        Cell key;
        key.row = row;
        key.task = task;
        key.shots = s;
        key.seeds = seeds;
        if (auto saved = checkpoints.load(key)) {
          row_cells.push_back(std::move(*saved));
          restored.push_back(true);
        } else {
          row_cells.push_back(std::move(key));
          restored.push_back(false);
        }
      }
    }
    const bool pending = std::find(restored.begin(), restored.end(), false) != restored.end();

    if (pending) {
      for (const std::uint64_t seed : seeds) {
        const LinearizationSpec spec = spec_for(row, seed);
        const auto lgs = linearize_all(ds, spec);
        for (std::size_t c = 0; c < row_cells.size(); ++c) {
          if (restored[c]) continue;
          Cell& cell = row_cells[c];
          const CellRun run = score_cell(ds, lgs, spec, cell.task, cell.shots, gateway, log);
          const double acc = run.records.empty() ? 0.0 : exact_accuracy(run.records);
          cell.per_seed_accuracy.push_back(acc);
          cell.n_instances = run.records.size();
          cell.failures += run.failures;
          if (run.failures > 0) cell.complete = false;
        }
      }
      for (std::size_t c = 0; c < row_cells.size(); ++c) {
        if (restored[c]) continue;
        Cell& cell = row_cells[c];
        double sum = 0.0;
        for (const double a : cell.per_seed_accuracy) sum += a;
        cell.accuracy = sum / static_cast<double>(cell.per_seed_accuracy.size());
        if (!row.baseline) cell.per_seed_accuracy.clear();
        checkpoints.save(cell);
      }
    }
    for (auto& cell : row_cells) table.cells.push_back(std::move(cell));
  }
  return table;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

constexpr std::string_view kCsvHeader = "method,labeling,linegraph,task,shots,n_instances,accuracy,seeds";

}  // namespace

std::string to_csv(const ResultsTable& table) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const Cell& c : table.cells) {
    out += c.row.baseline ? std::string("Baseline") : std::string(to_string(c.row.ordering));
    out += ',';
    out += to_string(c.row.labeling);
    out += ',';
    out += c.row.via_linegraph ? "1" : "0";
    out += ',';
    out += to_string(c.task);
    out += ',';
    out += to_string(c.shots);
    out += ',';
    out += std::to_string(c.n_instances);
    out += ',';
    out += format_double(c.accuracy);
    out += ',';
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
      if (i) out += ';';
      out += std::to_string(c.seeds[i]);
    }
    out += '\n';
  }
  return out;
}

ResultsTable from_csv(std::string_view csv) {
  ResultsTable table;
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("results CSV: bad header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw std::runtime_error("results CSV line " + std::to_string(line_no) + ": expected 8 fields");
    try {
      Cell c;
      c.row.baseline = f[0] == "Baseline";
      c.row.ordering = c.row.baseline ? Ordering::Random : parse_ordering(f[0]);
      c.row.labeling = parse_labeling(f[1]);
      c.row.via_linegraph = f[2] == "1";
      c.task = parse_task_kind(f[3]);
      c.shots = parse_shots(f[4]);
      c.n_instances = std::stoull(f[5]);
      const auto [ptr, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), c.accuracy);
      if (ec != std::errc()) throw std::invalid_argument("bad accuracy " + f[6]);
      if (!f[7].empty()) {
        for (const auto& s : split(f[7], ';')) c.seeds.push_back(std::stoull(s));
      }
      if (std::find(table.tasks.begin(), table.tasks.end(), c.task) == table.tasks.end()) table.tasks.push_back(c.task);
      if (std::find(table.shots.begin(), table.shots.end(), c.shots) == table.shots.end()) table.shots.push_back(c.shots);
      table.cells.push_back(std::move(c));
    } catch (const std::exception& e) {
      throw std::runtime_error("results CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  std::sort(table.tasks.begin(), table.tasks.end());
  std::sort(table.shots.begin(), table.shots.end());
  return table;
}

std::string render_text(const ResultsTable& table) {
  const auto rows = table.rows();
  // Column 0..tasks-1 are tasks, the last is Average.
  const std::size_t columns = table.tasks.size() + 1;
  const auto value = [&](const MethodRow& row, std::size_t col, Shots s) -> std::optional<double> {
    if (col == table.tasks.size()) return table.average(row, s);
    const Cell* c = table.find(row, table.tasks[col], s);
    return c ? std::optional<double>(c->accuracy) : std::nullopt;
  };
  // Compare at display precision (hundredths of a percent).
  const auto key = [](double acc) { return std::llround(acc * 10000.0); };

  std::map<std::tuple<std::string, std::size_t, Shots>, long long> group_best;
  std::map<std::pair<std::size_t, Shots>, long long> overall_best;
  for (const MethodRow& row : rows) {
    for (std::size_t col = 0; col < columns; ++col) {
      for (const Shots s : table.shots) {
        const auto v = value(row, col, s);
        if (!v) continue;
        auto& g = group_best.try_emplace({row.group(), col, s}, -1).first->second;
        g = std::max(g, key(*v));
        if (!row.baseline) {
          auto& o = overall_best.try_emplace({col, s}, -1).first->second;
          o = std::max(o, key(*v));
        }
      }
    }
  }

  const auto cell_text = [&](const MethodRow& row, std::size_t col) {
    std::string out;
    for (std::size_t i = 0; i < table.shots.size(); ++i) {
      if (i) out += " / ";
      const Shots s = table.shots[i];
      const auto v = value(row, col, s);
      if (!v) {
        out += "-";
        continue;
      }
      std::ostringstream num;
      num << std::fixed << std::setprecision(2) << *v * 100.0;
      std::string text = num.str();
      const bool group_max = !row.baseline && key(*v) == group_best[{row.group(), col, s}];
      const bool overall_max = !row.baseline && key(*v) == overall_best[{col, s}];
      if (group_max) text = "_" + text + "_";
      if (overall_max) text = "**" + text + "**";
      out += text;
    }
    return out;
  };

  std::vector<std::string> header{"Method"};
  for (const TaskKind t : table.tasks) header.emplace_back(display_name(t));
  header.emplace_back("Average");

  std::vector<std::vector<std::string>> body;
  std::string current_group;
  for (const MethodRow& row : rows) {
    if (row.group() != current_group) {
      current_group = row.group();
      if (!row.baseline) body.push_back({current_group});
    }
    std::vector<std::string> line{row.name()};
    for (std::size_t col = 0; col < columns; ++col) line.push_back(cell_text(row, col));
    body.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& line : body) {
    if (line.size() == 1) continue;
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }

  std::ostringstream out;
  out << "model: " << table.model << "  dataset: " << table.dataset << "  shots:";
  for (const Shots s : table.shots) out << ' ' << to_string(s);
  out << '\n';
  const auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? " | " : "") << std::left << std::setw(static_cast<int>(width[i])) << line[i];
    }
    out << '\n';
  };
  emit(header);
  std::size_t total = 0;
  for (const auto w : width) total += w + 3;
  out << std::string(total - 3, '-') << '\n';
  for (const auto& line : body) {
    if (line.size() == 1) {
      out << line[0] << '\n';
    } else {
      emit(line);
    }
  }
  return out.str();
}

void emit_report(const ResultsTable& table, const std::filesystem::path& path, std::string_view format) {
  std::string text;
  if (format == "csv") {
    text = to_csv(table);
  } else if (format == "text") {
    text = render_text(table);
  } else {
    throw std::runtime_error("unknown report format: " + std::string(format));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace glin
