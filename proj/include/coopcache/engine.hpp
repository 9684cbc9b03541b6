#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coopcache/config.hpp"
#include "coopcache/discovery.hpp"
#include "coopcache/trace.hpp"
#include "coopcache/workload.hpp"
#include "coopcache/world.hpp"

namespace coopcache {

struct MetricsAccumulator {
  std::int64_t requests_issued = 0;
  std::int64_t requests_failed = 0;
  /// Successful requests by serving level (Failed never appears here).
  std::map<Level, std::int64_t> hits_by_level;
  std::int64_t total_hops = 0;
  std::int64_t total_control_messages = 0;
  std::int64_t total_data_messages = 0;
  /// Cluster-maintenance traffic: joins, leaves, handovers, elections,
  /// keepalives and cache-state reports.
  std::int64_t maintenance_messages = 0;
  /// hops_traveled -> number of requests
  std::map<int, std::int64_t> latency_hops;

  void add(const RequestOutcome& o);
  std::int64_t hits(Level l) const;
  /// Σ hits_by_level + requests_failed == requests_issued
  bool conserved() const;

  friend bool operator==(const MetricsAccumulator&, const MetricsAccumulator&) = default;
};

/// Raised when a run breaks one of its own invariants.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Test hooks for world construction.
struct InitOptions {
  /// Initial positions by node index; overrides random placement.
  std::optional<std::vector<Position>> positions;
  /// Replaces the measured election metrics during the bootstrap election.
  std::function<std::optional<NodeMetrics>(NodeId)> metrics_override;
};

/// Deterministic tick loop. Within a tick: scheduled failures and arrivals,
/// mobility, cluster maintenance, lease expiry, then requests in ascending
/// requester order.
class Engine {
 public:
  explicit Engine(SimConfig cfg, TraceSink* trace = nullptr, InitOptions options = {});

  const SimConfig& config() const { return cfg_; }
  const World& world() const { return world_; }
  World& world() { return world_; }
  const MetricsAccumulator& metrics() const { return metrics_; }

  /// Advances one tick.
  void step();
  /// Steps until `config().ticks` ticks have elapsed.
  void run_to_end();

  void set_mobility_enabled(bool on) { mobility_enabled_ = on; }
  void set_requests_enabled(bool on) { requests_enabled_ = on; }

  /// Resolves one request now under the configured policy and accounts it.
  RequestOutcome issue_request(NodeId requester, DataId d);

  void fail_node(NodeId n);
  void arrive_node(NodeId n);

  /// Election inputs of a node as measured now.
  NodeMetrics measure(NodeId n) const;

  /// Cache/table soundness and metric conservation. Empty when all hold.
  std::vector<std::string> check_invariants() const;
  /// Cluster-structure consistency: every occupied cell has exactly one live
  /// head, every live node in it follows that head, and the head's table
  /// lists exactly those nodes. Empty when all hold.
  std::vector<std::string> quiescence_violations() const;

 private:
  void bootstrap(const InitOptions& options);
  void apply_schedule();
  void move_nodes();
  void charge_idle();
  void maintain_clusters();
  void run_leases();
  void issue_requests();

  void depart(NodeId n, ClusterId old_cluster);
  void member_departs(NodeState& node, ClusterId old_cluster);
  void head_departs(NodeState& node, ClusterId old_cluster);
  void begin_enter(NodeState& node);
  void finish_enter(NodeState& node);
  void attach(NodeState& node, NodeId head);
  void become_head(NodeState& node);
  void handle_head_timeouts();
  void handle_member_timeouts();
  void keepalives();

  void report_cache(NodeId member);
  /// One maintenance transmission; `to` is empty for a broadcast.
  void send_control(NodeId from, std::optional<NodeId> to);
  void charge_hop(NodeId from, NodeId to);
  void renew_lease(NodeState& member, NodeState& head);
  bool counting() const;
  std::map<NodeId, NodeId> settled_heads() const;
  void trace_event(TraceRecord r);
  void trace_election(const ElectionResult& e);

  SimConfig cfg_;
  TraceSink* trace_;
  MobilityParams mobility_;
  World world_;
  ZipfSampler zipf_;
  RngStream workload_rng_;
  MetricsAccumulator metrics_;
  bool mobility_enabled_ = true;
  bool requests_enabled_ = true;
  bool bootstrapping_ = false;
};

/// A world bootstrapped from `cfg`: nodes placed, caches empty, clusters
/// formed with one elected head each.
World init_world(const SimConfig& cfg, InitOptions options = {});

/// Runs `cfg.ticks` ticks and returns the accumulated metrics.
MetricsAccumulator run(const SimConfig& cfg, TraceSink* trace = nullptr);

}  // namespace coopcache
