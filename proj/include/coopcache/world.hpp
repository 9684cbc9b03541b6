#pragma once

#include <map>
#include <optional>
#include <vector>

#include "coopcache/cache.hpp"
#include "coopcache/cluster_protocol.hpp"
#include "coopcache/election.hpp"
#include "coopcache/mobility.hpp"
#include "coopcache/prereq.hpp"
#include "coopcache/rng.hpp"
#include "coopcache/topology.hpp"

namespace coopcache {

enum class Role {
  Member,
  Head,
  /// Entered a cell and is waiting out the join threshold.
  Joining,
};

std::string to_string(Role r);

/// Head-side cluster state.
struct HeadState {
  ClusterCacheStateTable table;
  std::map<NodeId, LeaseTimer> member_leases;

  friend bool operator==(const HeadState&, const HeadState&) = default;
};

struct NodeState {
  NodeId id;
  bool alive = true;
  WaypointState motion;
  SpeedHistory speed;
  LocalCache cache;
  PreReqTable prereq;
  BatteryMeter battery;
  RngStream rng;

  ClusterId cluster;
  Role role = Role::Joining;
  /// The head this node follows; for a head, itself.
  std::optional<NodeId> head;
  std::optional<HeadState> head_state;

  // member side of the lease with the head
  Tick head_lease_expires = 0;
  Tick last_keepalive = 0;
  Tick join_deadline = 0;

  Position position() const { return motion.current; }
  bool settled() const { return alive && role != Role::Joining && head.has_value(); }

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Everything request resolution reads or mutates: the node table, the
/// current connectivity snapshot, and the server's catalog.
struct World {
  Tick now = 0;
  std::map<NodeId, NodeState> nodes;
  NodeId server;
  Position server_position;
  std::vector<DataItem> catalog;
  TopologySnapshot topo;

  NodeState& node(NodeId n);
  const NodeState& node(NodeId n) const;
  bool is_live(NodeId n) const;

  /// Rebuilds `topo` from the live nodes' positions plus the server.
  void rebuild_topology(double range);

  friend bool operator==(const World& a, const World& b) {
    return a.now == b.now && a.nodes == b.nodes && a.server == b.server &&
           a.server_position == b.server_position && a.catalog == b.catalog &&
           a.topo.positions() == b.topo.positions();
  }
};

}  // namespace coopcache
