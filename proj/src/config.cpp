#include "coopcache/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace coopcache {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_schedule(const std::vector<ScheduledEvent>& events, const char* name,
                    std::int64_t node_count, std::vector<std::string>& out) {
  for (const auto& ev : events) {
    if (ev.tick < 0) out.push_back(std::string(name) + " entries must have tick >= 0");
    if (static_cast<std::int64_t>(ev.node.value) >= node_count)
      out.push_back(std::string(name) + " entry names node " + std::to_string(ev.node.value) +
                    " but node_count is " + std::to_string(node_count));
  }
}

}  // namespace

std::vector<std::string> validate_config(const SimConfig& cfg) {
  std::vector<std::string> out;
  auto require = [&out](bool ok, std::string msg) {
    if (!ok) out.push_back(std::move(msg));
  };

  require(std::isfinite(cfg.world_width) && cfg.world_width > 0, "world_width must be > 0");
  require(std::isfinite(cfg.world_height) && cfg.world_height > 0, "world_height must be > 0");
  require(std::isfinite(cfg.transmission_range) && cfg.transmission_range > 0,
          "transmission_range must be > 0");
  require(cfg.node_count >= 1, "node_count must be >= 1");
  require(cfg.catalog_size >= 1, "catalog_size must be >= 1");
  require(cfg.cache_capacity >= 1, "cache_capacity must be >= 1");
  require(cfg.prereq_capacity >= 1, "prereq_capacity must be >= 1");
  require(cfg.ticks >= 0, "ticks must be >= 0");
  require(std::isfinite(cfg.request_rate) && cfg.request_rate >= 0, "request_rate must be >= 0");
  require(std::isfinite(cfg.zipf_exponent) && cfg.zipf_exponent >= 0,
          "zipf_exponent must be >= 0");

  const auto& w = cfg.election_weights;
  const double ws[] = {w.w1, w.w2, w.w3, w.w4, w.w5};
  bool weights_finite = true;
  for (int i = 0; i < 5; ++i) {
    if (!std::isfinite(ws[i]) || ws[i] < 0) {
      weights_finite = false;
      out.push_back("election_weights.w" + std::to_string(i + 1) + " must be >= 0");
    }
  }
  if (weights_finite) {
    const double sum = w.w1 + w.w2 + w.w3 + w.w4 + w.w5;
    require(std::abs(sum - 1.0) <= 1e-9,
            "election_weights must sum to 1 (got " + fmt_num(sum) + ")");
  }
  // w1 and w5 appear as reciprocals in the combined weight.
  require(w.w1 > 0, "election_weights.w1 must be > 0");
  require(w.w5 > 0, "election_weights.w5 must be > 0");

  require(cfg.lease_duration >= 2, "lease_duration must be >= 2");
  require(cfg.min_speed >= 0, "min_speed must be >= 0");
  require(cfg.max_speed >= cfg.min_speed, "max_speed must be >= min_speed");
  require(cfg.pause_ticks >= 0, "pause_ticks must be >= 0");
  require(cfg.threshold_ticks >= 0, "threshold_ticks must be >= 0");
  require(cfg.item_size_min >= 1, "item_size_min must be >= 1");
  require(cfg.item_size_max >= cfg.item_size_min, "item_size_max must be >= item_size_min");
  require(cfg.item_ttl_min >= 1, "item_ttl_min must be >= 1");
  require(cfg.item_ttl_max >= cfg.item_ttl_min, "item_ttl_max must be >= item_ttl_min");

  const auto& b = cfg.battery_costs;
  require(b.idle_tick >= 0 && b.message_sent >= 0 && b.message_received >= 0,
          "battery_costs must be >= 0");
  require(b.head_tick > b.idle_tick, "battery_costs.head_tick must be > battery_costs.idle_tick");

  const Position sp = cfg.server_position;
  require(sp.x >= 0 && sp.x <= cfg.world_width && sp.y >= 0 && sp.y <= cfg.world_height,
          "server_position must lie inside the world rectangle");
  require(cfg.warmup_ticks >= 0, "warmup_ticks must be >= 0");

  check_schedule(cfg.failures, "failures", cfg.node_count, out);
  check_schedule(cfg.arrivals, "arrivals", cfg.node_count, out);
  return out;
}

namespace {

using nlohmann::json;

std::int64_t as_int(const json& v) {
  if (!v.is_number_integer()) throw ConfigError("expected an integer, got " + v.dump());
  return v.get<std::int64_t>();
}

double as_real(const json& v) {
  if (!v.is_number()) throw ConfigError("expected a number, got " + v.dump());
  return v.get<double>();
}

Weights parse_weights(const json& v) {
  Weights w;
  if (v.is_array()) {
    if (v.size() != 5) throw ConfigError("expected 5 weights, got " + std::to_string(v.size()));
    w = {as_real(v[0]), as_real(v[1]), as_real(v[2]), as_real(v[3]), as_real(v[4])};
    return w;
  }
  if (!v.is_object()) throw ConfigError("expected an object {w1..w5} or an array of 5");
  std::map<std::string, double*> slots{
      {"w1", &w.w1}, {"w2", &w.w2}, {"w3", &w.w3}, {"w4", &w.w4}, {"w5", &w.w5}};
  for (const auto& [k, val] : v.items()) {
    auto it = slots.find(k);
    if (it == slots.end()) throw ConfigError("unknown weight '" + k + "'");
    *it->second = as_real(val);
  }
  return w;
}

BatteryCosts parse_battery(const json& v) {
  if (!v.is_object()) throw ConfigError("expected an object");
  BatteryCosts b;
  std::map<std::string, double*> slots{{"idle_tick", &b.idle_tick},
                                       {"message_sent", &b.message_sent},
                                       {"message_received", &b.message_received},
                                       {"head_tick", &b.head_tick}};
  for (const auto& [k, val] : v.items()) {
    auto it = slots.find(k);
    if (it == slots.end()) throw ConfigError("unknown cost class '" + k + "'");
    *it->second = as_real(val);
  }
  return b;
}

Position parse_position(const json& v) {
  if (v.is_array() && v.size() == 2) return {as_real(v[0]), as_real(v[1])};
  if (v.is_object() && v.contains("x") && v.contains("y")) return {as_real(v["x"]), as_real(v["y"])};
  throw ConfigError("expected [x, y] or {\"x\":..,\"y\":..}");
}

std::vector<ScheduledEvent> parse_schedule(const json& v) {
  if (!v.is_array()) throw ConfigError("expected an array");
  std::vector<ScheduledEvent> out;
  for (const auto& e : v) {
    std::int64_t tick = 0;
    std::int64_t node = 0;
    if (e.is_array() && e.size() == 2) {
      tick = as_int(e[0]);
      node = as_int(e[1]);
    } else if (e.is_object() && e.contains("tick") && e.contains("node")) {
      tick = as_int(e["tick"]);
      node = as_int(e["node"]);
    } else {
      throw ConfigError("entries must be [tick, node] or {\"tick\":..,\"node\":..}");
    }
    if (node < 0) throw ConfigError("node ids must be non-negative");
    out.push_back({tick, NodeId{static_cast<std::uint32_t>(node)}});
  }
  return out;
}

}  // namespace

SimConfig config_from_json(const json& j, const std::vector<std::string>& ignored_keys) {
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object at top level");
  SimConfig cfg;

  using Setter = std::function<void(const json&)>;
  const std::map<std::string, Setter> setters{
      {"world_width", [&](const json& v) { cfg.world_width = as_real(v); }},
      {"world_height", [&](const json& v) { cfg.world_height = as_real(v); }},
      {"transmission_range", [&](const json& v) { cfg.transmission_range = as_real(v); }},
      {"node_count", [&](const json& v) { cfg.node_count = as_int(v); }},
      {"catalog_size", [&](const json& v) { cfg.catalog_size = as_int(v); }},
      {"cache_capacity", [&](const json& v) { cfg.cache_capacity = as_int(v); }},
      {"prereq_capacity", [&](const json& v) { cfg.prereq_capacity = as_int(v); }},
      {"ticks", [&](const json& v) { cfg.ticks = as_int(v); }},
      {"request_rate", [&](const json& v) { cfg.request_rate = as_real(v); }},
      {"zipf_exponent", [&](const json& v) { cfg.zipf_exponent = as_real(v); }},
      {"election_weights", [&](const json& v) { cfg.election_weights = parse_weights(v); }},
      {"lease_duration", [&](const json& v) { cfg.lease_duration = as_int(v); }},
      {"seed",
       [&](const json& v) {
         if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
           throw ConfigError("expected a non-negative integer, got " + v.dump());
         cfg.seed = v.get<std::uint64_t>();
       }},
      {"policy",
       [&](const json& v) {
         if (!v.is_string()) throw ConfigError("expected a string");
         try {
           cfg.policy = policy_from_string(v.get<std::string>());
         } catch (const std::invalid_argument& e) {
           throw ConfigError(e.what());
         }
       }},
      {"min_speed", [&](const json& v) { cfg.min_speed = as_real(v); }},
      {"max_speed", [&](const json& v) { cfg.max_speed = as_real(v); }},
      {"pause_ticks", [&](const json& v) { cfg.pause_ticks = as_int(v); }},
      {"threshold_ticks", [&](const json& v) { cfg.threshold_ticks = as_int(v); }},
      {"item_size_min", [&](const json& v) { cfg.item_size_min = as_int(v); }},
      {"item_size_max", [&](const json& v) { cfg.item_size_max = as_int(v); }},
      {"item_ttl_min", [&](const json& v) { cfg.item_ttl_min = as_int(v); }},
      {"item_ttl_max", [&](const json& v) { cfg.item_ttl_max = as_int(v); }},
      {"battery_costs", [&](const json& v) { cfg.battery_costs = parse_battery(v); }},
      {"server_position", [&](const json& v) { cfg.server_position = parse_position(v); }},
      {"warmup_ticks", [&](const json& v) { cfg.warmup_ticks = as_int(v); }},
      {"failures", [&](const json& v) { cfg.failures = parse_schedule(v); }},
      {"arrivals", [&](const json& v) { cfg.arrivals = parse_schedule(v); }},
  };

  for (const auto& [key, value] : j.items()) {
    if (std::find(ignored_keys.begin(), ignored_keys.end(), key) != ignored_keys.end()) continue;
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("field '" + key + "': unknown field");
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError("field '" + key + "': " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("field '" + key + "': " + e.what());
    }
  }
  return cfg;
}

nlohmann::json config_to_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["world_width"] = cfg.world_width;
  j["world_height"] = cfg.world_height;
  j["transmission_range"] = cfg.transmission_range;
  j["node_count"] = cfg.node_count;
  j["catalog_size"] = cfg.catalog_size;
  j["cache_capacity"] = cfg.cache_capacity;
  j["prereq_capacity"] = cfg.prereq_capacity;
  j["ticks"] = cfg.ticks;
  j["request_rate"] = cfg.request_rate;
  j["zipf_exponent"] = cfg.zipf_exponent;
  const auto& w = cfg.election_weights;
  j["election_weights"] = {{"w1", w.w1}, {"w2", w.w2}, {"w3", w.w3}, {"w4", w.w4}, {"w5", w.w5}};
  j["lease_duration"] = cfg.lease_duration;
  j["seed"] = cfg.seed;
  j["policy"] = to_string(cfg.policy);
  j["min_speed"] = cfg.min_speed;
  j["max_speed"] = cfg.max_speed;
  j["pause_ticks"] = cfg.pause_ticks;
  j["threshold_ticks"] = cfg.threshold_ticks;
  j["item_size_min"] = cfg.item_size_min;
  j["item_size_max"] = cfg.item_size_max;
  j["item_ttl_min"] = cfg.item_ttl_min;
  j["item_ttl_max"] = cfg.item_ttl_max;
  const auto& b = cfg.battery_costs;
  j["battery_costs"] = {{"idle_tick", b.idle_tick},
                        {"message_sent", b.message_sent},
                        {"message_received", b.message_received},
                        {"head_tick", b.head_tick}};
  j["server_position"] = {cfg.server_position.x, cfg.server_position.y};
  j["warmup_ticks"] = cfg.warmup_ticks;
  auto sched = [](const std::vector<ScheduledEvent>& evs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : evs) arr.push_back({e.tick, e.node.value});
    return arr;
  };
  j["failures"] = sched(cfg.failures);
  j["arrivals"] = sched(cfg.arrivals);
  return nlohmann::json::parse(j.dump());
}

}  // namespace coopcache
