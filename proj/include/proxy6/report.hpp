#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace proxy6::rep {

class EmptyInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One parsed metrics row; fields mirror the CSV columns exactly.
struct Row {
  std::string scheme;
  int n = 0;
  int64_t l = 0;
  int d = 0;
  int joins = 0;
  int duplicates = 0;
  int failures = 0;
  double messages_mean = 0;
  double messages_median = 0;
  double messages_p95 = 0;
  double latency_mean = 0;
  double latency_median = 0;
  double latency_p95 = 0;
  int64_t escalations = 0;
  uint64_t seed = 0;
};

// Strict reader: the header must match the writer's schema and every value
// must be finite and non-negative. Throws std::runtime_error on malformed
// input and EmptyInput when the text holds a header but no rows is fine —
// emptiness is judged by summarize.
std::vector<Row> parse_metrics_csv_text(const std::string& text);
std::vector<Row> parse_metrics_csv_file(const std::string& path);

// Per-scheme aggregate mirroring the comparison axes: uniqueness, latency,
// overhead, scalability.
struct SchemeSummary {
  std::string scheme;
  int rows = 0;
  int64_t joins = 0;
  int64_t duplicates = 0;
  int64_t failures = 0;
  bool unique = false;              // no duplicates anywhere
  double latency_mean = 0;          // unweighted mean of row means
  double latency_per_diameter = 0;  // mean of latency_mean / d over rows
  double messages_per_join = 0;     // unweighted mean of row means
  int min_n = 0;
  int max_n = 0;
  double messages_at_min_n = 0;
  double messages_at_max_n = 0;
  bool ratio_defined = false;       // needs at least two distinct n values
  double scalability_ratio = 0;     // messages_at_max_n / messages_at_min_n
};

// Groups rows by scheme in first-seen order. Throws EmptyInput on no rows.
std::vector<SchemeSummary> summarize(const std::vector<Row>& rows);

std::string render_table(const std::vector<SchemeSummary>& summaries);
std::string render_csv(const std::vector<SchemeSummary>& summaries);

}  // namespace proxy6::rep
