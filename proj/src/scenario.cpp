#include "proxy6/scenario.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "proxy6/report.hpp"

namespace proxy6::cfg {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& why) {
  throw ConfigError(where + ": " + why);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
  }
}

int64_t require_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    fail(where, "'" + key + "' must be an integer");
  }
  return v.get<int64_t>();
}

uint64_t require_uint(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
    fail(where, "'" + key + "' must be a non-negative integer");
  }
  return v.get<uint64_t>();
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where, "'" + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where, "'" + key + "' must be a string");
  return v.get<std::string>();
}

std::string kind_name(net::TopologyKind kind) {
  switch (kind) {
    case net::TopologyKind::Grid: return "grid";
    case net::TopologyKind::RandomGeometric: return "random-geometric";
    case net::TopologyKind::Tree: return "tree";
  }
  return "unknown";
}

net::TopologyParams parse_topology(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "topology must be an object");
  const std::string kind =
      obj.contains("kind") ? require_string(obj, "kind", where)
                           : (fail(where, "topology needs a 'kind'"), "");
  net::TopologyParams params;
  if (kind == "grid") {
    reject_unknown_keys(obj, {"kind", "rows", "cols"}, where);
    if (!obj.contains("rows") || !obj.contains("cols")) {
      fail(where, "grid needs 'rows' and 'cols'");
    }
    params.kind = net::TopologyKind::Grid;
    params.rows = static_cast<int>(require_int(obj, "rows", where));
    params.cols = static_cast<int>(require_int(obj, "cols", where));
    if (params.rows < 1 || params.cols < 1) fail(where, "grid dimensions must be >= 1");
  } else if (kind == "random-geometric") {
    reject_unknown_keys(obj, {"kind", "n", "radius"}, where);
    if (!obj.contains("n") || !obj.contains("radius")) {
      fail(where, "random-geometric needs 'n' and 'radius'");
    }
    params.kind = net::TopologyKind::RandomGeometric;
    params.n = static_cast<int>(require_int(obj, "n", where));
    params.radius = require_number(obj, "radius", where);
    if (params.n < 1) fail(where, "'n' must be >= 1");
    if (!(params.radius > 0.0)) fail(where, "'radius' must be > 0");
  } else if (kind == "tree") {
    reject_unknown_keys(obj, {"kind", "levels"}, where);
    if (!obj.contains("levels") || !obj.at("levels").is_array() ||
        obj.at("levels").empty()) {
      fail(where, "tree needs a non-empty 'levels' array");
    }
    params.kind = net::TopologyKind::Tree;
    for (const json& w : obj.at("levels")) {
      if (!w.is_number_integer() && !w.is_number_unsigned()) {
        fail(where, "'levels' entries must be integers");
      }
      const int64_t width = w.get<int64_t>();
      if (width < 1) fail(where, "'levels' entries must be >= 1");
      params.levels.push_back(static_cast<int>(width));
    }
  } else {
    fail(where, "unknown topology kind '" + kind + "'");
  }
  return params;
}

ordered_json topology_json(const net::TopologyParams& params) {
  ordered_json obj;
  obj["kind"] = kind_name(params.kind);
  switch (params.kind) {
    case net::TopologyKind::Grid:
      obj["rows"] = params.rows;
      obj["cols"] = params.cols;
      break;
    case net::TopologyKind::RandomGeometric:
      obj["n"] = params.n;
      obj["radius"] = params.radius;
      break;
    case net::TopologyKind::Tree:
      obj["levels"] = params.levels;
      break;
  }
  return obj;
}

Scenario parse_scenario(const json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "scenario must be an object");
  static const std::set<std::string> allowed = {
      "name",        "scheme",         "schemes",       "topology",
      "topologies",  "seed",           "seeds",         "loss_rate",
      "joins",       "join_order",     "concurrency",   "retry_interval",
      "retry_limit", "dad_space",      "dhcp_pool",     "event_budget",
      "controller_node", "server_node"};
  reject_unknown_keys(obj, allowed, where);

  Scenario sc;
  if (!obj.contains("name")) fail(where, "scenario needs a 'name'");
  sc.name = require_string(obj, "name", where);
  if (sc.name.empty()) fail(where, "'name' must be non-empty");
  const std::string at = "scenario '" + sc.name + "'";

  if (obj.contains("scheme") == obj.contains("schemes")) {
    fail(at, "exactly one of 'scheme' and 'schemes' is required");
  }
  std::vector<json> scheme_items;
  if (obj.contains("scheme")) {
    scheme_items.push_back(obj.at("scheme"));
  } else {
    if (!obj.at("schemes").is_array() || obj.at("schemes").empty()) {
      fail(at, "'schemes' must be a non-empty array");
    }
    for (const json& s : obj.at("schemes")) scheme_items.push_back(s);
  }
  for (const json& s : scheme_items) {
    if (!s.is_string()) fail(at, "scheme entries must be strings");
    const auto scheme = sim::scheme_from_name(s.get<std::string>());
    if (!scheme) fail(at, "unknown scheme '" + s.get<std::string>() + "'");
    sc.schemes.push_back(*scheme);
  }

  if (obj.contains("topology") == obj.contains("topologies")) {
    fail(at, "exactly one of 'topology' and 'topologies' is required");
  }
  if (obj.contains("topology")) {
    sc.topologies.push_back(parse_topology(obj.at("topology"), at));
  } else {
    if (!obj.at("topologies").is_array() || obj.at("topologies").empty()) {
      fail(at, "'topologies' must be a non-empty array");
    }
    for (const json& t : obj.at("topologies")) {
      sc.topologies.push_back(parse_topology(t, at));
    }
  }

  if (obj.contains("seed") && obj.contains("seeds")) {
    fail(at, "give either 'seed' or 'seeds', not both");
  }
  if (obj.contains("seed")) {
    sc.seeds.push_back(require_uint(obj, "seed", at));
  } else if (obj.contains("seeds")) {
    if (!obj.at("seeds").is_array() || obj.at("seeds").empty()) {
      fail(at, "'seeds' must be a non-empty array");
    }
    for (const json& s : obj.at("seeds")) {
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<int64_t>() >= 0)) {
        fail(at, "'seeds' entries must be non-negative integers");
      }
      sc.seeds.push_back(s.get<uint64_t>());
    }
  } else {
    sc.seeds.push_back(1);
  }

  if (obj.contains("loss_rate")) {
    sc.loss_rate = require_number(obj, "loss_rate", at);
    if (sc.loss_rate < 0.0 || sc.loss_rate > 1.0) {
      fail(at, "'loss_rate' must be within [0, 1]");
    }
  }
  if (obj.contains("joins")) {
    const int64_t joins = require_int(obj, "joins", at);
    if (joins < -1) fail(at, "'joins' must be >= -1");
    sc.joins = static_cast<int>(joins);
  }
  if (obj.contains("join_order")) {
    const auto order = sim::join_order_from_name(require_string(obj, "join_order", at));
    if (!order) fail(at, "'join_order' must be bfs, id, or random");
    sc.join_order = *order;
  }
  if (obj.contains("concurrency")) {
    const int64_t v = require_int(obj, "concurrency", at);
    if (v < 1) fail(at, "'concurrency' must be >= 1");
    sc.concurrency = static_cast<int>(v);
  }
  if (obj.contains("retry_interval")) {
    const int64_t v = require_int(obj, "retry_interval", at);
    if (v < 1) fail(at, "'retry_interval' must be >= 1");
    sc.retry_interval = static_cast<int>(v);
  }
  if (obj.contains("retry_limit")) {
    const int64_t v = require_int(obj, "retry_limit", at);
    if (v < 1) fail(at, "'retry_limit' must be >= 1");
    sc.retry_limit = static_cast<int>(v);
  }
  if (obj.contains("dad_space")) sc.dad_space = require_uint(obj, "dad_space", at);
  if (obj.contains("dhcp_pool")) sc.dhcp_pool = require_uint(obj, "dhcp_pool", at);
  if (obj.contains("event_budget")) {
    sc.event_budget = require_uint(obj, "event_budget", at);
    if (sc.event_budget < 1) fail(at, "'event_budget' must be >= 1");
  }
  if (obj.contains("controller_node")) {
    const int64_t v = require_int(obj, "controller_node", at);
    if (v < 0) fail(at, "'controller_node' must be >= 0");
    sc.controller_node = static_cast<NodeId>(v);
  }
  if (obj.contains("server_node")) {
    const int64_t v = require_int(obj, "server_node", at);
    if (v < 0) fail(at, "'server_node' must be >= 0");
    sc.server_node = static_cast<NodeId>(v);
  }
  return sc;
}

NodeId scheme_root(const Scenario& sc, sim::Scheme scheme) {
  switch (scheme) {
    case sim::Scheme::Proposed: return sc.controller_node;
    case sim::Scheme::Dhcp: return sc.server_node;
    case sim::Scheme::Dad: return 0;
  }
  return 0;
}

std::string topology_key(const net::TopologyParams& params, uint64_t seed) {
  // Only geometric graphs depend on the seed; share the rest across seeds.
  const uint64_t k =
      params.kind == net::TopologyKind::RandomGeometric ? seed : 0;
  return topology_json(params).dump() + "#" + std::to_string(k);
}

}  // namespace

ScenarioSet parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("config", "top level must be an object");
  reject_unknown_keys(doc, {"version", "out", "scenarios"}, "config");
  if (!doc.contains("version")) fail("config", "missing 'version'");
  if (require_int(doc, "version", "config") != 1) {
    fail("config", "unsupported version (expected 1)");
  }
  ScenarioSet set;
  if (doc.contains("out")) set.out = require_string(doc, "out", "config");
  if (!doc.contains("scenarios") || !doc.at("scenarios").is_array() ||
      doc.at("scenarios").empty()) {
    fail("config", "'scenarios' must be a non-empty array");
  }
  std::set<std::string> names;
  size_t index = 0;
  for (const json& item : doc.at("scenarios")) {
    Scenario sc = parse_scenario(item, "scenarios[" + std::to_string(index) + "]");
    if (!names.insert(sc.name).second) {
      fail("config", "duplicate scenario name '" + sc.name + "'");
    }
    set.scenarios.push_back(std::move(sc));
    index++;
  }
  return set;
}

ScenarioSet parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ScenarioSet& set) {
  ordered_json doc;
  doc["version"] = 1;
  doc["out"] = set.out;
  doc["scenarios"] = ordered_json::array();
  for (const Scenario& sc : set.scenarios) {
    ordered_json obj;
    obj["name"] = sc.name;
    obj["schemes"] = ordered_json::array();
    for (sim::Scheme s : sc.schemes) obj["schemes"].push_back(sim::scheme_name(s));
    obj["topologies"] = ordered_json::array();
    for (const net::TopologyParams& t : sc.topologies) {
      obj["topologies"].push_back(topology_json(t));
    }
    obj["seeds"] = sc.seeds;
    obj["loss_rate"] = sc.loss_rate;
    obj["joins"] = sc.joins;
    obj["join_order"] = sim::join_order_name(sc.join_order);
    obj["concurrency"] = sc.concurrency;
    obj["retry_interval"] = sc.retry_interval;
    obj["retry_limit"] = sc.retry_limit;
    obj["dad_space"] = sc.dad_space;
    obj["dhcp_pool"] = sc.dhcp_pool;
    obj["event_budget"] = sc.event_budget;
    obj["controller_node"] = sc.controller_node;
    obj["server_node"] = sc.server_node;
    doc["scenarios"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::vector<ResultRow> execute(const ScenarioSet& set, const Overrides& ov) {
  struct Pending {
    const Scenario* scenario;
    const net::TopologyParams* topology;
    sim::Scheme scheme;
    uint64_t seed;
  };
  std::vector<Pending> pending;
  for (const Scenario& sc : set.scenarios) {
    const std::vector<uint64_t> seeds =
        ov.seed ? std::vector<uint64_t>{*ov.seed} : sc.seeds;
    for (const net::TopologyParams& tp : sc.topologies) {
      for (sim::Scheme scheme : sc.schemes) {
        for (uint64_t seed : seeds) {
          pending.push_back({&sc, &tp, scheme, seed});
        }
      }
    }
  }

  // Build every distinct topology up front so workers only read them.
  std::map<std::string, std::shared_ptr<net::Topology>> cache;
  for (const Pending& p : pending) {
    const std::string key = topology_key(*p.topology, p.seed);
    if (cache.count(key)) continue;
    try {
      cache[key] = std::make_shared<net::Topology>(
          net::build_topology(*p.topology, p.seed));
    } catch (const net::TopologyUnsatisfiable& e) {
      throw ConfigError("scenario '" + p.scenario->name +
                        "': topology cannot be built: " + e.what());
    }
  }
  for (const Pending& p : pending) {
    const std::string key = topology_key(*p.topology, p.seed);
    if (scheme_root(*p.scenario, p.scheme) >= cache[key]->n()) {
      throw ConfigError("scenario '" + p.scenario->name +
                        "': root node exceeds topology size");
    }
  }

  std::vector<ResultRow> rows(pending.size());
  std::atomic<size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= pending.size()) return;
      const Pending& p = pending[i];
      try {
        const auto topo = cache.at(topology_key(*p.topology, p.seed));
        sim::RunSpec spec;
        spec.scheme = p.scheme;
        spec.seed = p.seed;
        spec.loss_rate = p.scenario->loss_rate;
        spec.joins = p.scenario->joins;
        spec.join_order = p.scenario->join_order;
        spec.concurrency = p.scenario->concurrency;
        spec.retry_interval = p.scenario->retry_interval;
        spec.retry_limit = p.scenario->retry_limit;
        spec.dad_space = p.scenario->dad_space;
        spec.dhcp_pool = p.scenario->dhcp_pool;
        spec.event_budget = p.scenario->event_budget;
        spec.root = scheme_root(*p.scenario, p.scheme);
        ResultRow row;
        row.scenario = p.scenario->name;
        row.scheme = p.scheme;
        row.topology = *p.topology;
        row.seed = p.seed;
        row.n = topo->n();
        row.links = topo->links;
        row.diameter = topo->diameter;
        row.diameter_exact = topo->diameter_exact;
        row.metrics = sim::run_scenario(*topo, spec);
        rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int jobs = std::max(1, ov.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    const int count = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(jobs), pending.size()));
    threads.reserve(count);
    for (int i = 0; i < count; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

std::string render_rows_csv(const std::vector<ResultRow>& rows) {
  std::string out = sim::csv_header() + "\n";
  for (const ResultRow& row : rows) {
    out += sim::csv_row(sim::scheme_name(row.scheme), row.n, row.links,
                        row.diameter, row.seed, row.metrics);
    out += "\n";
  }
  return out;
}

std::string render_summary_json(const std::vector<ResultRow>& rows) {
  ordered_json doc;
  doc["version"] = 1;
  doc["rows"] = ordered_json::array();
  std::vector<rep::Row> flat;
  for (const ResultRow& row : rows) {
    const sim::RunMetrics& m = row.metrics;
    ordered_json obj;
    obj["scenario"] = row.scenario;
    obj["scheme"] = sim::scheme_name(row.scheme);
    obj["topology"] = topology_json(row.topology);
    obj["seed"] = row.seed;
    obj["n"] = row.n;
    obj["l"] = row.links;
    obj["d"] = row.diameter;
    obj["d_exact"] = row.diameter_exact;
    obj["joins"] = m.joins;
    obj["configured"] = m.configured;
    obj["duplicates"] = m.duplicates;
    obj["violations"] = m.violations;
    obj["failures"] = m.failures;
    obj["messages_total"] = m.messages_total;
    obj["floods"] = m.floods;
    obj["escalations"] = m.escalations;
    obj["retries"] = m.retries;
    obj["sent"] = m.sent;
    obj["delivered"] = m.delivered;
    obj["lost"] = m.lost;
    obj["messages"] = {{"mean", m.messages.mean},
                       {"median", m.messages.median},
                       {"p95", m.messages.p95}};
    obj["latency"] = {{"mean", m.latency.mean},
                      {"median", m.latency.median},
                      {"p95", m.latency.p95}};
    doc["rows"].push_back(std::move(obj));

    rep::Row flat_row;
    flat_row.scheme = sim::scheme_name(row.scheme);
    flat_row.n = row.n;
    flat_row.l = row.links;
    flat_row.d = row.diameter;
    flat_row.joins = m.joins;
    flat_row.duplicates = m.duplicates;
    flat_row.failures = m.failures;
    flat_row.messages_mean = m.messages.mean;
    flat_row.messages_median = m.messages.median;
    flat_row.messages_p95 = m.messages.p95;
    flat_row.latency_mean = m.latency.mean;
    flat_row.latency_median = m.latency.median;
    flat_row.latency_p95 = m.latency.p95;
    flat_row.escalations = m.escalations;
    flat_row.seed = row.seed;
    flat.push_back(std::move(flat_row));
  }
  doc["comparison"] = ordered_json::array();
  if (!flat.empty()) {
    for (const rep::SchemeSummary& s : rep::summarize(flat)) {
      ordered_json obj;
      obj["scheme"] = s.scheme;
      obj["uniqueness"] = s.unique ? "yes" : "no";
      obj["latency_mean"] = s.latency_mean;
      obj["latency_per_d"] = s.latency_per_diameter;
      obj["messages_per_join"] = s.messages_per_join;
      if (s.ratio_defined) {
        obj["scalability_ratio"] = s.scalability_ratio;
        obj["scalability"] = s.scalability_ratio < 2.0 ? "high" : "low";
      } else {
        obj["scalability_ratio"] = nullptr;
        obj["scalability"] = "n/a";
      }
      doc["comparison"].push_back(std::move(obj));
    }
  }
  return doc.dump(2) + "\n";
}

OutputPaths write_outputs(const ScenarioSet& set, const Overrides& ov,
                          const std::vector<ResultRow>& rows) {
  namespace fs = std::filesystem;
  const fs::path dir = ov.out ? *ov.out : set.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory: " + dir.string());
  }
  OutputPaths paths;
  paths.csv = (dir / "metrics.csv").string();
  paths.json = (dir / "summary.json").string();
  {
    std::ofstream out(paths.csv, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + paths.csv);
    out << render_rows_csv(rows);
  }
  {
    std::ofstream out(paths.json, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + paths.json);
    out << render_summary_json(rows);
  }
  return paths;
}

}  // namespace proxy6::cfg
