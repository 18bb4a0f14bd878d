#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "proxy6/metrics.hpp"
#include "proxy6/topology.hpp"
#include "proxy6/types.hpp"

namespace proxy6::sim {

// Event budget exceeded (livelock) or the queue drained with joins pending.
class NonQuiescent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scheme { Proposed, Dad, Dhcp };
enum class JoinOrder { Bfs, Id, Random };

std::string scheme_name(Scheme scheme);
std::optional<Scheme> scheme_from_name(const std::string& name);
std::string join_order_name(JoinOrder order);
std::optional<JoinOrder> join_order_from_name(const std::string& name);

// Everything one simulation run depends on besides the topology. Two runs
// with equal RunSpec on the same topology produce identical metrics.
struct RunSpec {
  Scheme scheme = Scheme::Proposed;
  uint64_t seed = 1;
  double loss_rate = 0.0;
  int joins = -1;                 // -1: every eligible node joins
  JoinOrder join_order = JoinOrder::Bfs;
  int concurrency = 1;            // outstanding joins at once
  int retry_interval = 4;         // reply wait before retrying, in hop times
  int retry_limit = 5;            // attempts before a join gives up
  uint64_t dad_space = 0;         // tentative pool size; 0 = full 64-bit space
  uint64_t dhcp_pool = 0;         // server lease cap; 0 = unbounded
  uint64_t event_budget = 10000000;
  NodeId root = 0;                // controller / server / schedule anchor

  auto operator<=>(const RunSpec&) const = default;
};

// Runs one scheme on one topology to quiescence and returns finalized
// metrics. Throws NonQuiescent when the event budget is exceeded or joins
// are left unresolved; std::invalid_argument on out-of-range spec fields.
RunMetrics run_scenario(const net::Topology& topo, const RunSpec& spec);

// Cost probe for a single duplicate-suppressed flood, for tests: per-link
// transmissions, distinct non-origin nodes reached, copies lost.
struct FloodProbeResult {
  int64_t transmissions = 0;
  int64_t reached = 0;
  int64_t lost = 0;
};
FloodProbeResult flood_probe(const net::Topology& topo, NodeId origin,
                             double loss_rate, uint64_t seed);

}  // namespace proxy6::sim
