// coopsim: scenario runs and policy comparisons.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coopcache/engine.hpp"
#include "coopcache/report.hpp"

namespace fs = std::filesystem;
using namespace coopcache;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

std::string columns_help() {
  std::string s = "report.csv columns, in order:\n  ";
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? ", " : "") + cols[i];
  s += "\nsummary.json lists the same fields per run under \"runs\".";
  return s;
}

std::string trace_name(const SimConfig& cfg) {
  return "trace_" + to_string(cfg.policy) + "_seed" + std::to_string(cfg.seed) + "_cap" +
         std::to_string(cfg.cache_capacity) + ".jsonl";
}

int run_command(const std::string& scenario_path, const std::string& out_dir,
                const std::optional<std::uint64_t>& seed_override, bool trace_on) {
  ScenarioFile scenario;
  try {
    std::ifstream in(scenario_path);
    if (!in) {
      std::cerr << "error: cannot open " << scenario_path << "\n";
      return kExitInput;
    }
    const nlohmann::json doc = nlohmann::json::parse(in);
    scenario = scenario_from_json(doc);
    if (seed_override) scenario.seeds = {*seed_override};
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << scenario_path << " is not valid JSON: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  fs::create_directories(out_dir);
  std::vector<ReportRow> rows;
  for (const SimConfig& cfg : scenario.expand()) {
    try {
      if (trace_on) {
        std::ofstream tf(fs::path(out_dir) / trace_name(cfg));
        JsonLinesTrace trace(tf);
        rows.push_back(make_row(cfg, run(cfg, &trace)));
      } else {
        rows.push_back(make_row(cfg, run(cfg)));
      }
    } catch (const InvariantViolation& e) {
      std::cerr << "invariant violated (" << to_string(cfg.policy) << ", seed " << cfg.seed
                << ", cache_capacity " << cfg.cache_capacity << "): " << e.what() << "\n";
      return kExitInvariant;
    }
  }

  const auto bad = validate_report(rows);
  if (!bad.empty()) {
    for (const auto& b : bad) std::cerr << "invariant violated: " << b << "\n";
    return kExitInvariant;
  }
  {
    std::ofstream csv(fs::path(out_dir) / "report.csv");
    write_report_csv(csv, rows);
  }
  {
    std::ofstream js(fs::path(out_dir) / "summary.json");
    js << report_summary(rows).dump(2) << '\n';
  }
  std::cout << "wrote " << rows.size() << " run(s) to " << out_dir << "\n";
  return 0;
}

int compare_command(const std::string& report_path) {
  try {
    std::ifstream in(report_path);
    if (!in) {
      std::cerr << "error: cannot open " << report_path << "\n";
      return kExitInput;
    }
    const auto rows = read_report_csv(in);
    const auto bad = validate_report(rows);
    if (!bad.empty()) {
      for (const auto& b : bad) std::cerr << "error: " << b << "\n";
      return kExitInput;
    }
    print_comparison(std::cout, compare_report(rows));
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative caching simulator for clustered mobile ad hoc networks"};
  app.footer(columns_help());
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  std::string trace_mode = "on";
  auto* run_cmd = app.add_subcommand("run", "Run every sweep combination of a scenario");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--seed-override", seed_override, "Replace the seed axis with one seed");
  run_cmd->add_option("--trace", trace_mode, "Write per-run trace.jsonl files")
      ->check(CLI::IsMember({"on", "off"}));
  run_cmd->footer(columns_help());

  std::string report_path;
  auto* cmp_cmd = app.add_subcommand("compare", "Paired per-seed comparison of a report.csv");
  cmp_cmd->add_option("report", report_path, "report.csv produced by run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*run_cmd) return run_command(scenario_path, out_dir, seed_override, trace_mode == "on");
  return compare_command(report_path);
}
