#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proxy6/metrics.hpp"
#include "proxy6/sim.hpp"
#include "proxy6/topology.hpp"
#include "proxy6/types.hpp"

namespace proxy6::cfg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One named sweep block. List fields multiply out into rows; scalar fields
// apply to every row the block produces.
struct Scenario {
  std::string name;
  std::vector<sim::Scheme> schemes;
  std::vector<net::TopologyParams> topologies;
  std::vector<uint64_t> seeds;
  double loss_rate = 0.0;
  int joins = -1;
  sim::JoinOrder join_order = sim::JoinOrder::Bfs;
  int concurrency = 1;
  int retry_interval = 4;
  int retry_limit = 5;
  uint64_t dad_space = 0;
  uint64_t dhcp_pool = 0;
  uint64_t event_budget = 10000000;
  NodeId controller_node = 0;
  NodeId server_node = 0;

  bool operator==(const Scenario&) const = default;
};

struct ScenarioSet {
  std::string out = "results";
  std::vector<Scenario> scenarios;

  bool operator==(const ScenarioSet&) const = default;
};

// Versioned schema, unknown keys rejected at every level; all failures throw
// ConfigError with the offending location in the message.
ScenarioSet parse_config_text(const std::string& text);
ScenarioSet parse_config_file(const std::string& path);

// parse_config_text(serialize_config(s)) compares equal to s.
std::string serialize_config(const ScenarioSet& set);

struct ResultRow {
  std::string scenario;
  sim::Scheme scheme = sim::Scheme::Proposed;
  net::TopologyParams topology;
  uint64_t seed = 0;
  int n = 0;
  int64_t links = 0;
  int diameter = 0;
  bool diameter_exact = true;
  sim::RunMetrics metrics;
};

struct Overrides {
  std::optional<uint64_t> seed;    // replaces every scenario's seed list
  std::optional<std::string> out;  // replaces the configured output directory
  int jobs = 1;                    // rows executed in parallel
};

// Expands scenario x topology x scheme x seed in declaration order and runs
// every row; row order is fixed by the expansion, not completion. Topologies
// are built once per (params, seed) and shared.
std::vector<ResultRow> execute(const ScenarioSet& set, const Overrides& ov);

std::string render_rows_csv(const std::vector<ResultRow>& rows);
std::string render_summary_json(const std::vector<ResultRow>& rows);

struct OutputPaths {
  std::string csv;
  std::string json;
};

// Writes metrics.csv and summary.json under the effective output directory.
OutputPaths write_outputs(const ScenarioSet& set, const Overrides& ov,
                          const std::vector<ResultRow>& rows);

}  // namespace proxy6::cfg
