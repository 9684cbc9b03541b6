#include "coopcache/election.hpp"

#include <algorithm>
#include <stdexcept>

namespace coopcache {

double sum_neighbor_distances(NodeId v, const TopologySnapshot& snap) {
  const Position pv = snap.position(v);
  const ClusterId cv = snap.cluster(v);
  double sum = 0.0;
  for (NodeId n : snap.adjacent(v)) {
    if (n == snap.server_node()) continue;
    const Position pn = snap.position(n);
    if (cluster_of(pn, snap.grid()) == cv) sum += distance(pv, pn);
  }
  return sum;
}

double BatteryMeter::consume(CostClass c) {
  switch (c) {
    case CostClass::IdleTick:
      consumed_ += costs_.idle_tick;
      break;
    case CostClass::MessageSent:
      consumed_ += costs_.message_sent;
      break;
    case CostClass::MessageReceived:
      consumed_ += costs_.message_received;
      break;
    case CostClass::HeadTick:
      consumed_ += costs_.head_tick;
      break;
  }
  return consumed_;
}

double combined_weight(const NodeMetrics& mx, const Weights& w) {
  const double cs = std::max(mx.cs, 1.0);
  const double p = std::max(mx.p, 1.0);
  return 1.0 / (w.w1 * cs) + w.w2 * mx.d + w.w3 * mx.m + w.w4 * mx.bp + 1.0 / (w.w5 * p);
}

ElectionResult elect_head(const std::map<NodeId, NodeMetrics>& members, const Weights& w,
                          ClusterId cluster) {
  if (members.empty()) throw std::invalid_argument("elect_head: no members");

  ElectionResult result;
  result.cluster = cluster;
  const bool any_free =
      std::any_of(members.begin(), members.end(), [](const auto& kv) { return kv.second.cs > 0; });

  bool have_best = false;
  double best_w = 0.0;
  for (const auto& [id, mx] : members) {
    const double wv = combined_weight(mx, w);
    result.weights_table[id] = wv;
    if (any_free && mx.cs <= 0) continue;
    // Ascending id iteration: strict < keeps the smaller id on ties.
    if (!have_best || wv < best_w) {
      have_best = true;
      best_w = wv;
      result.head = id;
    }
  }
  return result;
}

}  // namespace coopcache
