#include "proxy6/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "proxy6/metrics.hpp"

namespace proxy6::rep {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void malformed(size_t lineno, const std::string& why) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "metrics line %zu: %s", lineno, why.c_str());
  throw std::runtime_error(buf);
}

double parse_double(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) malformed(lineno, "trailing characters in number");
    if (!std::isfinite(v) || v < 0) malformed(lineno, "value not finite and non-negative");
    return v;
  } catch (const std::invalid_argument&) {
    malformed(lineno, "expected a number");
  } catch (const std::out_of_range&) {
    malformed(lineno, "number out of range");
  }
}

int64_t parse_int(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) malformed(lineno, "trailing characters in integer");
    if (v < 0) malformed(lineno, "value not non-negative");
    return v;
  } catch (const std::invalid_argument&) {
    malformed(lineno, "expected an integer");
  } catch (const std::out_of_range&) {
    malformed(lineno, "integer out of range");
  }
}

uint64_t parse_u64(const std::string& s, size_t lineno) {
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size() || s.empty() || s[0] == '-') {
      malformed(lineno, "expected an unsigned integer");
    }
    return v;
  } catch (const std::invalid_argument&) {
    malformed(lineno, "expected an unsigned integer");
  } catch (const std::out_of_range&) {
    malformed(lineno, "unsigned integer out of range");
  }
}

}  // namespace

std::vector<Row> parse_metrics_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  std::vector<Row> rows;
  bool saw_header = false;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line != sim::csv_header()) malformed(lineno, "unrecognized header");
      saw_header = true;
      continue;
    }
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 15) malformed(lineno, "expected 15 fields");
    Row row;
    row.scheme = f[0];
    if (row.scheme.empty()) malformed(lineno, "empty scheme name");
    row.n = static_cast<int>(parse_int(f[1], lineno));
    row.l = parse_int(f[2], lineno);
    row.d = static_cast<int>(parse_int(f[3], lineno));
    row.joins = static_cast<int>(parse_int(f[4], lineno));
    row.duplicates = static_cast<int>(parse_int(f[5], lineno));
    row.failures = static_cast<int>(parse_int(f[6], lineno));
    row.messages_mean = parse_double(f[7], lineno);
    row.messages_median = parse_double(f[8], lineno);
    row.messages_p95 = parse_double(f[9], lineno);
    row.latency_mean = parse_double(f[10], lineno);
    row.latency_median = parse_double(f[11], lineno);
    row.latency_p95 = parse_double(f[12], lineno);
    row.escalations = parse_int(f[13], lineno);
    row.seed = parse_u64(f[14], lineno);
    rows.push_back(std::move(row));
  }
  if (!saw_header) throw std::runtime_error("metrics file has no header");
  return rows;
}

std::vector<Row> parse_metrics_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read metrics file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metrics_csv_text(buf.str());
}

std::vector<SchemeSummary> summarize(const std::vector<Row>& rows) {
  if (rows.empty()) throw EmptyInput("no metrics rows to summarize");
  std::vector<SchemeSummary> order;
  std::map<std::string, size_t> index;
  for (const Row& row : rows) {
    if (!index.count(row.scheme)) {
      index[row.scheme] = order.size();
      SchemeSummary s;
      s.scheme = row.scheme;
      s.min_n = row.n;
      s.max_n = row.n;
      order.push_back(std::move(s));
    }
    SchemeSummary& s = order[index[row.scheme]];
    s.rows++;
    s.joins += row.joins;
    s.duplicates += row.duplicates;
    s.failures += row.failures;
    s.latency_mean += row.latency_mean;
    if (row.d > 0) s.latency_per_diameter += row.latency_mean / row.d;
    s.messages_per_join += row.messages_mean;
    s.min_n = std::min(s.min_n, row.n);
    s.max_n = std::max(s.max_n, row.n);
  }
  for (SchemeSummary& s : order) {
    s.unique = s.duplicates == 0;
    s.latency_mean /= s.rows;
    s.latency_per_diameter /= s.rows;
    s.messages_per_join /= s.rows;
  }
  // Scalability: mean overhead at the largest n over the smallest n.
  for (SchemeSummary& s : order) {
    if (s.min_n == s.max_n) continue;
    double lo = 0, hi = 0;
    int lo_count = 0, hi_count = 0;
    for (const Row& row : rows) {
      if (row.scheme != s.scheme) continue;
      if (row.n == s.min_n) {
        lo += row.messages_mean;
        lo_count++;
      }
      if (row.n == s.max_n) {
        hi += row.messages_mean;
        hi_count++;
      }
    }
    if (lo_count > 0 && hi_count > 0 && lo > 0) {
      s.ratio_defined = true;
      s.scalability_ratio = (hi / hi_count) / (lo / lo_count);
    }
  }
  return order;
}

std::string render_table(const std::vector<SchemeSummary>& summaries) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-10s %-10s %12s %12s %12s %16s\n", "scheme",
                "uniqueness", "latency", "latency/d", "msgs/join", "scalability");
  out += buf;
  out += std::string(76, '-') + "\n";
  for (const SchemeSummary& s : summaries) {
    std::string scal = "n/a";
    if (s.ratio_defined) {
      char rbuf[64];
      std::snprintf(rbuf, sizeof(rbuf), "%.4f (%s)", s.scalability_ratio,
                    s.scalability_ratio < 2.0 ? "high" : "low");
      scal = rbuf;
    }
    std::snprintf(buf, sizeof(buf), "%-10s %-10s %12.4f %12.4f %12.4f %16s\n",
                  s.scheme.c_str(), s.unique ? "yes" : "no", s.latency_mean,
                  s.latency_per_diameter, s.messages_per_join, scal.c_str());
    out += buf;
  }
  return out;
}

std::string render_csv(const std::vector<SchemeSummary>& summaries) {
  std::string out =
      "scheme,rows,joins,duplicates,failures,uniqueness,latency_mean,"
      "latency_per_d,messages_per_join,min_n,max_n,scalability_ratio,scalability\n";
  char buf[256];
  for (const SchemeSummary& s : summaries) {
    char ratio[32] = "";
    if (s.ratio_defined) std::snprintf(ratio, sizeof(ratio), "%.4f", s.scalability_ratio);
    std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%lld,%lld,%s,%.4f,%.4f,%.4f,%d,%d,%s,%s\n",
                  s.scheme.c_str(), s.rows, static_cast<long long>(s.joins),
                  static_cast<long long>(s.duplicates),
                  static_cast<long long>(s.failures), s.unique ? "yes" : "no",
                  s.latency_mean, s.latency_per_diameter, s.messages_per_join,
                  s.min_n, s.max_n, ratio,
                  s.ratio_defined ? (s.scalability_ratio < 2.0 ? "high" : "low")
                                  : "n/a");
    out += buf;
  }
  return out;
}

}  // namespace proxy6::rep
