#include "coopcache/cluster_protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace coopcache {

namespace {

bool row_holds(const CachedItemReport& row, DataId d, Tick now) {
  return std::any_of(row.begin(), row.end(),
                     [&](const auto& e) { return e.first == d && now < e.second; });
}

}  // namespace

std::optional<NodeId> state_table_lookup(const ClusterCacheStateTable& t, DataId d, Tick now,
                                         std::optional<NodeId> exclude) {
  if (exclude != t.owner) {
    auto own = t.rows.find(t.owner);
    if (own != t.rows.end() && row_holds(own->second, d, now)) return t.owner;
  }
  for (const auto& [member, row] : t.rows) {
    if (member == t.owner || member == exclude) continue;
    if (row_holds(row, d, now)) return member;
  }
  return std::nullopt;
}

bool state_table_update(ClusterCacheStateTable& t, NodeId member, CachedItemReport cached) {
  auto it = t.rows.find(member);
  if (it == t.rows.end()) return false;
  it->second = std::move(cached);
  return true;
}

void state_table_add_member(ClusterCacheStateTable& t, NodeId member, CachedItemReport cached) {
  t.rows[member] = std::move(cached);
}

std::vector<CachingAction> member_leave(ClusterCacheStateTable& t, NodeId leaving,
                                        const std::vector<DataItem>& leaving_items,
                                        std::map<NodeId, Capacity> free_space, Tick now) {
  t.rows.erase(leaving);
  free_space.erase(leaving);

  std::vector<CachingAction> actions;
  for (const DataItem& item : leaving_items) {
    if (item.ttl <= 0) continue;
    const bool in_cluster =
        state_table_lookup(t, item.id, now).has_value() ||
        std::any_of(actions.begin(), actions.end(),
                    [&](const CachingAction& a) { return a.item.id == item.id; });
    if (in_cluster) continue;

    auto head_space = free_space.find(t.owner);
    if (head_space != free_space.end() && head_space->second >= item.size) {
      head_space->second -= item.size;
      actions.push_back({item, t.owner, false});
      continue;
    }
    auto member = std::find_if(free_space.begin(), free_space.end(), [&](const auto& kv) {
      return kv.first != t.owner && kv.second >= item.size;
    });
    if (member != free_space.end()) {
      member->second -= item.size;
      actions.push_back({item, member->first, false});
      continue;
    }
    actions.push_back({item, t.owner, true});
  }
  return actions;
}

JoinOutcome node_enter(NodeId entering, const TopologySnapshot& snap,
                       const std::map<NodeId, NodeId>& head_of) {
  JoinOutcome out;
  const ClusterId home = snap.cluster(entering);
  for (NodeId n : snap.adjacent(entering)) {
    if (n == snap.server_node() || snap.cluster(n) != home) continue;
    auto it = head_of.find(n);
    if (it == head_of.end()) continue;
    ++out.replies;
    if (!out.head) out.head = it->second;
  }
  out.kind = out.head ? JoinOutcome::Kind::Joined : JoinOutcome::Kind::BecameHead;
  return out;
}

HandoverOutcome head_leave(NodeId old_head, const std::map<NodeId, NodeMetrics>& remaining,
                           const ClusterCacheStateTable& t, const Weights& w, ClusterId cluster) {
  HandoverOutcome out;
  std::map<NodeId, NodeMetrics> candidates = remaining;
  candidates.erase(old_head);
  if (candidates.empty()) return out;

  out.election = elect_head(candidates, w, cluster);
  out.new_head = out.election->head;
  out.table = t;
  out.table.rows.erase(old_head);
  out.table.owner = *out.new_head;
  // Members that did not answer (failed silently) keep their rows until
  // their leases expire at the new head.
  return out;
}

TimeoutElection head_timeout(const std::set<NodeId>& detectors,
                             const std::map<NodeId, NodeMetrics>& responders,
                             const std::map<NodeId, CachedItemReport>& reports, const Weights& w,
                             ClusterId cluster) {
  if (detectors.empty()) throw std::invalid_argument("head_timeout: no detector");
  TimeoutElection out;
  out.initiator = *detectors.begin();
  out.election = elect_head(responders, w, cluster);
  out.table.owner = out.election.head;
  for (const auto& [member, _] : responders) {
    auto it = reports.find(member);
    out.table.rows[member] = it == reports.end() ? CachedItemReport{} : it->second;
  }
  return out;
}

bool member_timeout(ClusterCacheStateTable& t, NodeId silent) { return t.rows.erase(silent) > 0; }

}  // namespace coopcache
