#include "perisched/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace perisched {

namespace {

using Json = nlohmann::ordered_json;

std::int64_t get_int(const Json& node, const char* what) {
  if (!node.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return node.get<std::int64_t>();
}

const Json& field(const Json& node, const char* key) {
  if (!node.is_object() || !node.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return node.at(key);
}

Json parse_json(const std::string& line) {
  try {
    return Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& line) {
  Json doc = parse_json(line);
  std::vector<Time> periods;
  const Json& jp = field(doc, "periods");
  if (!jp.is_array()) throw InputError("'periods' must be a list");
  for (const Json& p : jp) periods.push_back(get_int(p, "period"));
  auto resources = static_cast<int>(get_int(field(doc, "resources"), "resources"));
  std::vector<ChainSpec> chains;
  const Json& jc = field(doc, "chains");
  if (!jc.is_array()) throw InputError("'chains' must be a list");
  for (const Json& c : jc) {
    ChainSpec spec;
    spec.period_level = static_cast<int>(get_int(field(c, "period_index"), "period_index")) - 1;
    const Json& jt = field(c, "tasks");
    if (!jt.is_array()) throw InputError("'tasks' must be a list");
    for (const Json& t : jt) {
      spec.tasks.push_back({static_cast<int>(get_int(field(t, "resource"), "resource")) - 1,
                            get_int(field(t, "proc_time"), "proc_time")});
    }
    chains.push_back(std::move(spec));
  }
  std::optional<Topology> topology;
  if (doc.contains("topology")) {
    const Json& jt = doc.at("topology");
    Topology topo;
    std::string kind = field(jt, "kind").get<std::string>();
    if (kind == "line") {
      topo.kind = Topology::Kind::line;
    } else if (kind == "tree") {
      topo.kind = Topology::Kind::tree;
    } else {
      throw InputError("unknown topology kind '" + kind + "'");
    }
    for (const Json& p : field(jt, "parent")) {
      topo.parent.push_back(static_cast<int>(get_int(p, "parent")) - 1);
    }
    topology = std::move(topo);
  }
  return Instance(PeriodSet(std::move(periods)), resources, std::move(chains), std::move(topology));
}

std::string format_instance(const Instance& instance) {
  Json doc;
  doc["periods"] = Json::array();
  for (Time p : instance.periods().periods()) doc["periods"].push_back(p);
  doc["resources"] = instance.num_resources();
  doc["chains"] = Json::array();
  for (const ChainSpec& spec : instance.chains()) {
    Json c;
    c["period_index"] = spec.period_level + 1;
    c["tasks"] = Json::array();
    for (const TaskSpec& t : spec.tasks) {
      Json jt;
      jt["resource"] = t.resource + 1;
      jt["proc_time"] = t.proc_time;
      c["tasks"].push_back(std::move(jt));
    }
    doc["chains"].push_back(std::move(c));
  }
  if (const auto& topo = instance.topology()) {
    Json jt;
    jt["kind"] = topo->kind == Topology::Kind::line ? "line" : "tree";
    jt["parent"] = Json::array();
    for (int p : topo->parent) jt["parent"].push_back(p + 1);
    doc["topology"] = std::move(jt);
  }
  return doc.dump();
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> read_lines_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_lines(in);
}

std::vector<Instance> read_instances(std::istream& in) {
  std::vector<Instance> out;
  for (const std::string& line : read_lines(in)) out.push_back(parse_instance(line));
  return out;
}

std::vector<Instance> read_instances_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_instances(in);
}

void write_instances(std::ostream& out, const std::vector<Instance>& instances) {
  for (const Instance& instance : instances) out << format_instance(instance) << '\n';
}

Schedule parse_schedule(const Instance& instance, const std::string& line) {
  Json doc = parse_json(line);
  const Json& starts = field(doc, "starts");
  if (!starts.is_object()) throw InputError("'starts' must be an object");
  Schedule schedule;
  schedule.start.assign(static_cast<std::size_t>(instance.num_tasks()), -1);
  for (const auto& [key, value] : starts.items()) {
    auto dot = key.find('.');
    int k = 0;
    int i = 0;
    try {
      if (dot == std::string::npos) throw std::invalid_argument(key);
      std::size_t used_k = 0;
      std::size_t used_i = 0;
      k = std::stoi(key.substr(0, dot), &used_k) - 1;
      i = std::stoi(key.substr(dot + 1), &used_i) - 1;
      if (used_k != dot || used_i != key.size() - dot - 1) throw std::invalid_argument(key);
    } catch (const std::logic_error&) {
      throw InputError("malformed task reference '" + key + "'");
    }
    if (k < 0 || k >= instance.num_chains() || i < 0 || i >= instance.chain_length(k)) {
      throw InputError("unknown task reference '" + key + "'");
    }
    Time t = get_int(value, "start");
    if (t < 0) throw InputError("negative start for '" + key + "'");
    schedule.start[static_cast<std::size_t>(instance.task_id(k, i))] = t;
  }
  for (TaskId id = 0; id < instance.num_tasks(); ++id) {
    if (schedule.start[static_cast<std::size_t>(id)] < 0) {
      const Task& t = instance.task(id);
      throw InputError("schedule lacks task " + std::to_string(t.chain + 1) + "." +
                       std::to_string(t.index + 1));
    }
  }
  return schedule;
}

std::string format_schedule(const Instance& instance, const Schedule& schedule) {
  Json starts = Json::object();
  for (TaskId id = 0; id < instance.num_tasks(); ++id) {
    const Task& t = instance.task(id);
    starts[std::to_string(t.chain + 1) + "." + std::to_string(t.index + 1)] =
        schedule.start[static_cast<std::size_t>(id)];
  }
  Json doc;
  doc["starts"] = std::move(starts);
  return doc.dump();
}

std::string format_criteria(const CriteriaReport& report) {
  Json doc;
  doc["dg_sum"] = report.dg_sum;
  doc["dg_max"] = report.dg_max;
  Json alphas = Json::array();
  for (std::size_t a = 0; a < report.alphas.size(); ++a) {
    Rational v = report.alphas[a].value();
    Json ja;
    ja["alpha"] = std::to_string(v.num()) + "/" + std::to_string(v.den());
    ja["sum"] = report.alpha_sum[a];
    ja["max"] = report.alpha_max[a];
    alphas.push_back(std::move(ja));
  }
  doc["alpha"] = std::move(alphas);
  doc["phi_longest_pct"] = report.longest_period_share.to_fixed(4);
  doc["omega_longest_pct"] = report.longest_period_load.to_fixed(4);
  doc["omega_resource"] = report.busiest_resource + 1;
  Json chains = Json::array();
  for (const ChainCriteria& c : report.chains) {
    Json jc;
    jc["se"] = c.latency;
    jc["dg"] = c.degeneracy;
    if (!c.alpha_degeneracy.empty()) jc["dg_alpha"] = c.alpha_degeneracy;
    chains.push_back(std::move(jc));
  }
  doc["chains"] = std::move(chains);
  return doc.dump();
}

}  // namespace perisched
