#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "proxy6/report.hpp"
#include "proxy6/scenario.hpp"
#include "proxy6/sim.hpp"

namespace {

int run_command(const std::string& config_path, const proxy6::cfg::Overrides& ov) {
  const proxy6::cfg::ScenarioSet set = proxy6::cfg::parse_config_file(config_path);
  const auto rows = proxy6::cfg::execute(set, ov);
  const auto paths = proxy6::cfg::write_outputs(set, ov, rows);
  std::printf("wrote %s\n", paths.csv.c_str());
  std::printf("wrote %s\n", paths.json.c_str());
  return 0;
}

int report_command(const std::vector<std::string>& files, const std::string& out) {
  if (files.empty()) throw proxy6::rep::EmptyInput("no metrics files given");
  std::vector<proxy6::rep::Row> rows;
  for (const std::string& file : files) {
    const auto parsed = proxy6::rep::parse_metrics_csv_file(file);
    rows.insert(rows.end(), parsed.begin(), parsed.end());
  }
  const auto summaries = proxy6::rep::summarize(rows);
  if (out.empty()) {
    std::fputs(proxy6::rep::render_table(summaries).c_str(), stdout);
  } else {
    std::ofstream sink(out, std::ios::binary);
    if (!sink) throw std::runtime_error("cannot write " + out);
    sink << proxy6::rep::render_csv(summaries);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed address allocation simulation harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a scenario configuration");
  std::string config_path;
  run->add_option("config", config_path, "scenario configuration file")->required();
  std::optional<uint64_t> seed_override;
  run->add_option("--seed", seed_override, "replace every scenario's seed list");
  std::optional<std::string> out_override;
  run->add_option("--out", out_override, "output directory for metrics files");
  int jobs = 1;
  run->add_option("--jobs", jobs, "rows to execute in parallel")
      ->check(CLI::Range(1, 256));

  auto* report = app.add_subcommand("report", "aggregate metrics files");
  std::vector<std::string> files;
  report->add_option("files", files, "metrics.csv files to aggregate");
  std::string report_out;
  report->add_option("--out", report_out, "write the table as CSV to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      proxy6::cfg::Overrides ov;
      ov.seed = seed_override;
      ov.out = out_override;
      ov.jobs = jobs;
      return run_command(config_path, ov);
    }
    return report_command(files, report_out);
  } catch (const proxy6::cfg::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const proxy6::sim::NonQuiescent& e) {
    std::fprintf(stderr, "non-quiescent run: %s\n", e.what());
    return 3;
  } catch (const proxy6::rep::EmptyInput& e) {
    std::fprintf(stderr, "empty input: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
