#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "proxy6/types.hpp"

namespace proxy6::sim {

enum class JoinOutcome { Pending, Configured, Timeout, Denied };

// One record per join attempt, filled in as the run progresses.
struct JoinRecord {
  JoinId join = 0;
  NodeId node = 0;
  int64_t messages = 0;
  int64_t latency = -1;  // ticks from first transmission to configuration
  int escalations = 0;
  int retries = 0;
  JoinOutcome outcome = JoinOutcome::Pending;
};

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
};

// Median averages the middle pair on even counts; p95 uses the
// nearest-rank rule. Empty input yields all zeros.
Stats compute_stats(std::vector<double> values);

struct RunMetrics {
  int joins = 0;
  int configured = 0;
  int duplicates = 0;   // distinct address collisions among configured nodes
  int violations = 0;   // issued addresses breaking the structural invariants
  int failures = 0;     // join attempts that ended without an address
  int64_t messages_total = 0;
  int64_t floods = 0;   // flood primitives started (not per-link copies)
  int64_t sent = 0;
  int64_t delivered = 0;
  int64_t lost = 0;
  int64_t escalations = 0;
  int64_t retries = 0;
  std::vector<JoinRecord> per_join;
  Stats messages;  // per-join message counts, all completed joins
  Stats latency;   // configured joins only

  // Derives the aggregate fields from per_join; call once after the run.
  void finalize();
};

// Row schema shared by the scenario runner (writer) and report (reader).
std::string csv_header();
std::string csv_row(const std::string& scheme, int n, int64_t links, int diameter,
                    uint64_t seed, const RunMetrics& m);

}  // namespace proxy6::sim
