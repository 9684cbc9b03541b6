#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coopcache/config.hpp"
#include "coopcache/engine.hpp"

namespace coopcache {

/// One run: its sweep coordinates, raw counters and derived ratios.
struct ReportRow {
  std::string policy;
  std::uint64_t seed = 0;
  Capacity cache_capacity = 0;
  MetricsAccumulator metrics;
  /// 1 - (failed + served by server) / issued
  double hit_ratio = 0.0;
  /// total_hops / issued
  double avg_hops = 0.0;
  /// (control + data + maintenance) / issued
  double avg_messages_per_request = 0.0;
};

ReportRow make_row(const SimConfig& cfg, const MetricsAccumulator& m);

/// Fixed column order of report.csv.
const std::vector<std::string>& report_columns();

void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows);
/// Throws std::runtime_error naming the line and column on malformed input.
std::vector<ReportRow> read_report_csv(std::istream& is);

/// The same rows as JSON objects, keys in column order.
nlohmann::ordered_json report_summary(const std::vector<ReportRow>& rows);

/// Rows whose stored ratios disagree with their raw counts (one line each).
std::vector<std::string> validate_report(const std::vector<ReportRow>& rows);

/// Sweep axes on top of a base configuration.
struct ScenarioFile {
  SimConfig base;
  std::vector<Policy> policies;
  std::vector<std::uint64_t> seeds;
  std::vector<Capacity> capacities;

  /// Every combination, policy outermost, then seed, then capacity.
  std::vector<SimConfig> expand() const;
};

/// Parses a scenario document: SimConfig fields plus an optional "sweep"
/// object with "policy", "seed" and "cache_capacity" lists. Throws
/// ConfigError naming the offending field.
ScenarioFile scenario_from_json(const nlohmann::json& j);

struct PairedDelta {
  std::string policy;
  std::uint64_t seed = 0;
  Capacity cache_capacity = 0;
  double d_hit_ratio = 0.0;
  double d_avg_hops = 0.0;
  double d_avg_messages = 0.0;
};

struct PolicySummary {
  std::string policy;
  std::size_t pairs = 0;
  double mean_hit_ratio = 0.0;
  double mean_avg_hops = 0.0;
  double mean_avg_messages = 0.0;
  double mean_d_hit_ratio = 0.0;
  double mean_d_avg_hops = 0.0;
  double mean_d_avg_messages = 0.0;
};

/// Deltas are taken against the first policy in the report, paired on
/// (seed, cache_capacity).
struct Comparison {
  std::string baseline;
  std::vector<PairedDelta> deltas;
  std::vector<PolicySummary> summary;
};

/// Throws std::runtime_error listing every unmatched (policy, seed, capacity).
Comparison compare_report(const std::vector<ReportRow>& rows);
void print_comparison(std::ostream& os, const Comparison& c);

}  // namespace coopcache
