#pragma once

#include <map>

#include "coopcache/config.hpp"
#include "coopcache/topology.hpp"
#include "coopcache/types.hpp"

namespace coopcache {

/// Per-node inputs to the D-Clusterhead election.
struct NodeMetrics {
  double cs = 0.0;  // free cache capacity
  double d = 0.0;   // summed distance to same-cluster neighbors
  double m = 0.0;   // running average speed
  double bp = 0.0;  // battery consumed so far
  double p = 0.0;   // popularity

  friend bool operator==(const NodeMetrics&, const NodeMetrics&) = default;
};

struct ElectionResult {
  ClusterId cluster;
  NodeId head;
  std::map<NodeId, double> weights_table;

  friend bool operator==(const ElectionResult&, const ElectionResult&) = default;
};

/// D_v: summed distance from v to every in-range neighbor sharing v's cell.
double sum_neighbor_distances(NodeId v, const TopologySnapshot& snap);

enum class CostClass { IdleTick, MessageSent, MessageReceived, HeadTick };

/// Consumed-battery counter. Every node starts at zero.
class BatteryMeter {
 public:
  explicit BatteryMeter(const BatteryCosts& costs = {}) : costs_(costs) {}

  double consume(CostClass c);
  double consumed() const { return consumed_; }

  friend bool operator==(const BatteryMeter&, const BatteryMeter&) = default;

 private:
  BatteryCosts costs_;
  double consumed_ = 0.0;
};

/// W_v = 1/(w1*CS) + w2*D + w3*M + w4*BP + 1/(w5*P). CS and P are clamped to
/// at least 1 in the reciprocal terms.
double combined_weight(const NodeMetrics& mx, const Weights& w);

/// Smallest W_v wins; ties go to the smaller id. Members with no free cache
/// are ineligible unless no member has free cache. `members` must be non-empty.
ElectionResult elect_head(const std::map<NodeId, NodeMetrics>& members, const Weights& w,
                          ClusterId cluster = {});

}  // namespace coopcache
