#include "proxy6/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace proxy6::sim {

Stats compute_stats(std::vector<double> values) {
  Stats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  if (n % 2 == 1) {
    s.median = values[n / 2];
  } else {
    s.median = (values[n / 2 - 1] + values[n / 2]) / 2.0;
  }
  const size_t rank = static_cast<size_t>(
      std::ceil(0.95 * static_cast<double>(n)));  // nearest-rank, 1-indexed
  s.p95 = values[rank - 1];
  return s;
}

void RunMetrics::finalize() {
  joins = static_cast<int>(per_join.size());
  configured = 0;
  failures = 0;
  escalations = 0;
  retries = 0;
  std::vector<double> msg_values;
  std::vector<double> lat_values;
  msg_values.reserve(per_join.size());
  for (const JoinRecord& rec : per_join) {
    msg_values.push_back(static_cast<double>(rec.messages));
    escalations += rec.escalations;
    retries += rec.retries;
    if (rec.outcome == JoinOutcome::Configured) {
      configured += 1;
      lat_values.push_back(static_cast<double>(rec.latency));
    } else {
      failures += 1;
    }
  }
  messages = compute_stats(std::move(msg_values));
  latency = compute_stats(std::move(lat_values));
}

std::string csv_header() {
  return "scheme,n,l,d,joins,duplicates,failures,"
         "messages_mean,messages_median,messages_p95,"
         "latency_mean,latency_median,latency_p95,escalations,seed";
}

std::string csv_row(const std::string& scheme, int n, int64_t links, int diameter,
                    uint64_t seed, const RunMetrics& m) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s,%d,%lld,%d,%d,%d,%d,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%lld,%llu",
                scheme.c_str(), n, static_cast<long long>(links), diameter,
                m.joins, m.duplicates, m.failures, m.messages.mean,
                m.messages.median, m.messages.p95, m.latency.mean,
                m.latency.median, m.latency.p95,
                static_cast<long long>(m.escalations),
                static_cast<unsigned long long>(seed));
  return std::string(buf);
}

}  // namespace proxy6::sim
