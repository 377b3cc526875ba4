#include "glin/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "glin/rng.hpp"

namespace glin {

using nlohmann::json;

const TaskInstance* DatasetEntry::task(TaskKind kind) const {
  const auto it = std::find_if(tasks.begin(), tasks.end(), [&](const TaskInstance& t) { return t.kind == kind; });
  return it == tasks.end() ? nullptr : &*it;
}

const DatasetEntry* Dataset::exemplar() const {
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [](const DatasetEntry& e) { return e.record.exemplar; });
  return it == entries.end() ? nullptr : &*it;
}

const DatasetEntry* Dataset::find(const std::string& id) const {
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const DatasetEntry& e) { return e.record.id == id; });
  return it == entries.end() ? nullptr : &*it;
}

std::vector<TaskKind> Dataset::task_kinds() const {
  std::vector<TaskKind> out;
  for (const TaskKind kind : kAllTaskKinds) {
    const bool asked = std::any_of(entries.begin(), entries.end(),
                                   [&](const DatasetEntry& e) { return e.task(kind) != nullptr; });
    if (asked) out.push_back(kind);
  }
  return out;
}

Dataset build_dataset(const std::string& name, std::uint64_t seed) {
  std::vector<GraphRecord> records;
  if (name == "graphwave") {
    records = gen_graphwave(seed);
  } else if (name == "graphqa") {
    records = gen_graphqa(seed);
  } else {
    throw std::invalid_argument("unknown dataset: " + name + " (expected graphwave or graphqa)");
  }
  Dataset ds{name, seed, {}};
  ds.entries.reserve(records.size());
  for (auto& rec : records) {
    auto tasks = make_instances(rec, seed);
    ds.entries.push_back({std::move(rec), std::move(tasks)});
  }
  return ds;
}

namespace {

json pairs_to_json(const std::vector<EdgePair>& edges) {
  json out = json::array();
  for (const EdgePair& e : edges) out.push_back({e.u, e.v});
  return out;
}

std::vector<EdgePair> pairs_from_json(const json& j) {
  std::vector<EdgePair> out;
  out.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw std::runtime_error("edge must be a [u, v] pair");
    out.push_back({p.at(0).get<NodeId>(), p.at(1).get<NodeId>()});
  }
  return out;
}

json truth_to_json(const Truth& truth) {
  if (const auto* n = std::get_if<std::int64_t>(&truth)) return *n;
  if (const auto* b = std::get_if<bool>(&truth)) return *b ? "yes" : "no";
  json shapes = json::array();
  for (const MotifKind k : std::get<std::vector<MotifKind>>(truth)) shapes.push_back(std::string(to_string(k)));
  return shapes;
}

Truth truth_from_json(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "yes") return true;
    if (s == "no") return false;
    throw std::runtime_error("bad yes/no truth: " + s);
  }
  if (j.is_array()) {
    std::vector<MotifKind> shapes;
    for (const auto& s : j) shapes.push_back(parse_motif_kind(s.get<std::string>()));
    return shapes;
  }
  throw std::runtime_error("unrecognized truth value: " + j.dump());
}

}  // namespace

json graph_to_json(const Graph& g) {
  return {{"nodes", g.nodes()}, {"edges", pairs_to_json(g.edges())}};
}

Graph graph_from_json(const json& j) {
  const auto nodes = j.at("nodes").get<std::vector<NodeId>>();
  const auto edges = pairs_from_json(j.at("edges"));
  return Graph::build(nodes, edges);
}

json instance_to_json(const TaskInstance& inst) {
  return {{"graph_ref", inst.graph_ref},
          {"kind", std::string(to_string(inst.kind))},
          {"params", inst.params},
          {"truth", truth_to_json(inst.truth)},
          {"flags", inst.flags}};
}

TaskInstance instance_from_json(const json& j) {
  TaskInstance inst;
  inst.graph_ref = j.at("graph_ref").get<std::string>();
  inst.kind = parse_task_kind(j.at("kind").get<std::string>());
  inst.params = j.at("params").get<std::vector<NodeId>>();
  inst.truth = truth_from_json(j.at("truth"));
  inst.flags = j.value("flags", std::vector<std::string>{});
  return inst;
}

json entry_to_json(const DatasetEntry& entry) {
  const GraphRecord& rec = entry.record;
  json shapes = json::array();
  for (const MotifKind k : rec.motif_shapes) shapes.push_back(std::string(to_string(k)));
  json tasks = json::array();
  for (const auto& t : entry.tasks) tasks.push_back(instance_to_json(t));
  return {{"id", rec.id},
          {"source", rec.source},
          {"params", rec.params},
          {"graph", graph_to_json(rec.graph)},
          {"default_edge_order", pairs_to_json(rec.default_edge_order)},
          {"motif_shapes", shapes},
          {"exemplar", rec.exemplar},
          {"tasks", tasks}};
}

DatasetEntry entry_from_json(const json& j) {
  DatasetEntry entry;
  GraphRecord& rec = entry.record;
  rec.id = j.at("id").get<std::string>();
  rec.source = j.at("source").get<std::string>();
  rec.params = j.value("params", json::object());
  rec.graph = graph_from_json(j.at("graph"));
  rec.default_edge_order = pairs_from_json(j.at("default_edge_order"));
  for (const auto& s : j.value("motif_shapes", json::array())) {
    rec.motif_shapes.push_back(parse_motif_kind(s.get<std::string>()));
  }
  rec.exemplar = j.value("exemplar", false);
  for (const auto& t : j.value("tasks", json::array())) entry.tasks.push_back(instance_from_json(t));
  return entry;
}

json spec_to_json(const LinearizationSpec& spec) {
  json j = {{"ordering", std::string(to_string(spec.ordering))},
            {"via_linegraph", spec.via_linegraph},
            {"labeling", std::string(to_string(spec.labeling))},
            {"seed", spec.seed}};
  if (spec.label_seed) j["label_seed"] = *spec.label_seed;
  return j;
}

LinearizationSpec spec_from_json(const json& j) {
  LinearizationSpec spec;
  spec.ordering = parse_ordering(j.at("ordering").get<std::string>());
  spec.via_linegraph = j.value("via_linegraph", false);
  spec.labeling = parse_labeling(j.at("labeling").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("label_seed")) spec.label_seed = j.at("label_seed").get<std::uint64_t>();
  return spec;
}

json linearized_to_json(const std::string& record_id, const LinearizedGraph& lg) {
  return {{"id", record_id},
          {"spec", spec_to_json(lg.spec)},
          {"labels", lg.labels},
          {"edges", pairs_to_json(lg.edge_sequence)}};
}

void write_dataset(std::ostream& out, const Dataset& ds) {
  const json header = {{"schema_version", kSchemaVersion},
                       {"generator", ds.name},
                       {"seed", ds.seed},
                       {"count", ds.entries.size()},
                       {"rng", std::string(kRngStreamVersion)}};
  out << header.dump() << '\n';
  for (const auto& entry : ds.entries) out << entry_to_json(entry).dump() << '\n';
}

void write_dataset(const std::filesystem::path& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_dataset(out, ds);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

Dataset read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("dataset file is empty");
  Dataset ds;
  std::size_t expected = 0;
  try {
    const json header = json::parse(line);
    if (header.at("schema_version").get<int>() != kSchemaVersion) {
      throw std::runtime_error("unsupported dataset schema_version " + header.at("schema_version").dump());
    }
    ds.name = header.at("generator").get<std::string>();
    ds.seed = header.at("seed").get<std::uint64_t>();
    expected = header.at("count").get<std::size_t>();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        ds.entries.push_back(entry_from_json(json::parse(line)));
      } catch (const std::exception& e) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed dataset: ") + e.what());
  }
  if (ds.entries.size() != expected) {
    throw std::runtime_error("dataset header announces " + std::to_string(expected) + " records, found " +
                             std::to_string(ds.entries.size()));
  }
  return ds;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_dataset(in);
}

std::string file_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t h = fnv1a("");
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    h = fnv1a(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

LinearizedGraph linearize_record(const GraphRecord& rec, const LinearizationSpec& spec) {
  if (spec.via_linegraph && rec.graph.edge_count() == 0) {
    LinearizationSpec flat = spec;
    flat.via_linegraph = false;
    LinearizedGraph lg = linearize(rec.graph, flat);
    lg.spec = spec;
    lg.ranking_used.reset();
    return lg;
  }
  return linearize(rec.graph, spec, rec.default_edge_order);
}

std::optional<std::string> validate_linearization(const Graph& g, const LinearizedGraph& lg) {
  const std::size_t n = g.node_count();
  if (lg.original_ids != g.nodes() || lg.labels.size() != n) {
    return "label map does not cover the graph's nodes";
  }
  std::vector<bool> used(n, false);
  for (const NodeId label : lg.labels) {
    if (label >= n || used[label]) return "label map is not a bijection onto 0..n-1";
    used[label] = true;
  }
  std::vector<NodeId> original_of(n);
  for (std::size_t i = 0; i < n; ++i) original_of[lg.labels[i]] = lg.original_ids[i];

  std::vector<EdgePair> recovered;
  recovered.reserve(lg.edge_sequence.size());
  for (const EdgePair& e : lg.edge_sequence) {
    if (e.u >= n || e.v >= n) return "edge refers to an unassigned label";
    recovered.push_back(EdgePair{original_of[e.u], original_of[e.v]}.canonical());
  }
  std::sort(recovered.begin(), recovered.end());
  if (recovered != g.edges()) return "edge multiset differs from the graph's edge set";
  return std::nullopt;
}

}  // namespace glin
