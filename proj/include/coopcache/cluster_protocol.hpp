#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "coopcache/election.hpp"
#include "coopcache/topology.hpp"
#include "coopcache/types.hpp"

namespace coopcache {

/// (item, expiry deadline) as reported by a member.
using CachedItemReport = std::vector<std::pair<DataId, Tick>>;

/// The D-Clusterhead's registry of what each member caches. The owner's own
/// cache has a row like any other member.
struct ClusterCacheStateTable {
  NodeId owner;
  std::map<NodeId, CachedItemReport> rows;

  bool has_member(NodeId n) const { return rows.contains(n); }

  friend bool operator==(const ClusterCacheStateTable&, const ClusterCacheStateTable&) = default;
};

struct LeaseTimer {
  NodeId peer;
  Tick expires_at = 0;

  bool expired(Tick now) const { return now >= expires_at; }

  friend bool operator==(const LeaseTimer&, const LeaseTimer&) = default;
};

/// A member with a non-expired copy of `d`: the owner first, then the
/// smallest id. `exclude` is never returned.
std::optional<NodeId> state_table_lookup(const ClusterCacheStateTable& t, DataId d, Tick now,
                                         std::optional<NodeId> exclude = std::nullopt);

/// Replaces a known member's row. Returns false (table unchanged) for a
/// node that is not a member.
bool state_table_update(ClusterCacheStateTable& t, NodeId member, CachedItemReport cached);

/// Adds or replaces the row of a joining member.
void state_table_add_member(ClusterCacheStateTable& t, NodeId member, CachedItemReport cached);

struct CachingAction {
  DataItem item;  // ttl is the remaining lifetime
  NodeId target;
  /// True when the target has no room and must evict to store the item.
  bool replace = false;

  friend bool operator==(const CachingAction&, const CachingAction&) = default;
};

/// Graceful departure of a non-head member. Drops its row, then decides for
/// each of its items: nothing if another member still holds it, otherwise
/// the head if it has room, otherwise the smallest-id member with room,
/// otherwise the head with replacement. `free_space` maps the remaining
/// members (head included) to their free capacity.
std::vector<CachingAction> member_leave(ClusterCacheStateTable& t, NodeId leaving,
                                        const std::vector<DataItem>& leaving_items,
                                        std::map<NodeId, Capacity> free_space, Tick now);

struct JoinOutcome {
  enum class Kind { Joined, BecameHead };
  Kind kind = Kind::BecameHead;
  std::optional<NodeId> head;
  /// Same-cluster neighbors that answered the broadcast.
  int replies = 0;

  friend bool operator==(const JoinOutcome&, const JoinOutcome&) = default;
};

/// A newcomer broadcasts to its one-hop neighbors; settled neighbors in the
/// same cell answer with their head. `head_of` maps every settled node to
/// the head it follows (a head maps to itself). No answer means the newcomer
/// is first in the cell and becomes its head.
JoinOutcome node_enter(NodeId entering, const TopologySnapshot& snap,
                       const std::map<NodeId, NodeId>& head_of);

struct HandoverOutcome {
  std::optional<NodeId> new_head;
  ClusterCacheStateTable table;
  std::optional<ElectionResult> election;
};

/// The departing head picks its successor among `remaining` and hands over
/// the table, minus its own row. With nobody remaining the cluster empties.
HandoverOutcome head_leave(NodeId old_head, const std::map<NodeId, NodeMetrics>& remaining,
                           const ClusterCacheStateTable& t, const Weights& w, ClusterId cluster);

struct TimeoutElection {
  NodeId initiator;
  ElectionResult election;
  ClusterCacheStateTable table;
};

/// Members whose lease on the head ran out start an election; the smallest
/// detector wins the race. Every responder reports its cache to the winner,
/// and the new table is built from those reports. `responders` must contain
/// the detectors.
TimeoutElection head_timeout(const std::set<NodeId>& detectors,
                             const std::map<NodeId, NodeMetrics>& responders,
                             const std::map<NodeId, CachedItemReport>& reports, const Weights& w,
                             ClusterId cluster);

/// Drops a silent member's row. Returns false if it was already gone.
bool member_timeout(ClusterCacheStateTable& t, NodeId silent);

}  // namespace coopcache
