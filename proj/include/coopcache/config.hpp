#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coopcache/types.hpp"

namespace coopcache {

/// Weighing factors of the combined election weight. Must sum to 1.
struct Weights {
  double w1 = 0.5;  // free cache capacity
  double w2 = 0.3;  // summed neighbor distance
  double w3 = 0.1;  // mobility
  double w4 = 0.05; // consumed battery
  double w5 = 0.05; // popularity

  friend bool operator==(const Weights&, const Weights&) = default;
};

struct BatteryCosts {
  double idle_tick = 1.0;
  double message_sent = 0.1;
  double message_received = 0.05;
  double head_tick = 2.0;

  friend bool operator==(const BatteryCosts&, const BatteryCosts&) = default;
};

/// A scheduled node failure or arrival.
struct ScheduledEvent {
  Tick tick = 0;
  NodeId node;

  friend bool operator==(const ScheduledEvent&, const ScheduledEvent&) = default;
};

struct SimConfig {
  double world_width = 400.0;
  double world_height = 400.0;
  double transmission_range = 100.0;
  std::int64_t node_count = 50;
  std::int64_t catalog_size = 100;
  Capacity cache_capacity = 200;
  std::int64_t prereq_capacity = 32;
  Tick ticks = 1000;
  double request_rate = 2.0;
  double zipf_exponent = 0.8;
  Weights election_weights;
  Tick lease_duration = 10;
  std::uint64_t seed = 1;
  Policy policy = Policy::Hybrid;

  // mobility
  double min_speed = 0.5;
  double max_speed = 3.0;
  Tick pause_ticks = 5;

  // cluster join: ticks a newcomer waits for a same-cluster reply
  Tick threshold_ticks = 2;

  // catalog: item sizes and server-assigned TTLs are drawn uniformly
  Capacity item_size_min = 10;
  Capacity item_size_max = 50;
  Tick item_ttl_min = 200;
  Tick item_ttl_max = 800;

  BatteryCosts battery_costs;

  /// Pinned location of the stationary data server.
  Position server_position{0.0, 0.0};

  /// Requests issued before this tick are resolved but not counted.
  Tick warmup_ticks = 0;

  std::vector<ScheduledEvent> failures;
  /// Nodes listed here are absent until their arrival tick.
  std::vector<ScheduledEvent> arrivals;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Every violated invariant of `cfg`, one human-readable line each.
std::vector<std::string> validate_config(const SimConfig& cfg);

/// Raised when a scenario document cannot be turned into a SimConfig.
/// The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads SimConfig fields from a JSON object. Absent fields keep their
/// defaults; unknown fields and type mismatches raise ConfigError. Keys
/// listed in `ignored_keys` are skipped.
SimConfig config_from_json(const nlohmann::json& j,
                           const std::vector<std::string>& ignored_keys = {});
nlohmann::json config_to_json(const SimConfig& cfg);

}  // namespace coopcache
