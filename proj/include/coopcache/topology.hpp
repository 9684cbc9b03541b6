#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "coopcache/types.hpp"

namespace coopcache {

/// Grid cell index of a cluster.
struct ClusterId {
  std::int64_t gx = 0;
  std::int64_t gy = 0;

  friend constexpr auto operator<=>(ClusterId, ClusterId) = default;
};

/// Edge length of a grid cluster such that any two points in one cell are
/// within range r of each other: g * sqrt(2) <= r.
double grid_size(double range);

/// Lower-inclusive cell membership: x == k*g belongs to cell k.
ClusterId cluster_of(Position p, double grid);

class UnknownNode : public std::out_of_range {
 public:
  explicit UnknownNode(NodeId n);
};

/// Positions of the live nodes at one instant plus the derived unit-disk graph.
/// Immutable once built.
class TopologySnapshot {
 public:
  TopologySnapshot() = default;
  TopologySnapshot(std::map<NodeId, Position> positions, double range, NodeId server_node);

  const std::map<NodeId, Position>& positions() const { return positions_; }
  double range() const { return range_; }
  double grid() const { return grid_; }
  NodeId server_node() const { return server_; }

  bool contains(NodeId n) const { return positions_.contains(n); }
  Position position(NodeId n) const;
  ClusterId cluster(NodeId n) const { return cluster_of(position(n), grid_); }

  /// Sorted ascending. Throws UnknownNode.
  const std::vector<NodeId>& adjacent(NodeId n) const;

 private:
  std::map<NodeId, Position> positions_;
  double range_ = 0.0;
  double grid_ = 0.0;
  NodeId server_;
  std::map<NodeId, std::vector<NodeId>> adjacency_;
};

/// All other nodes within distance <= r of n. Throws UnknownNode.
std::set<NodeId> neighbors(NodeId n, const TopologySnapshot& snap);

/// Minimum-hop route from src to dst inclusive of both ends; among routes of
/// equal length the lexicographically smallest id sequence. nullopt when dst
/// is unreachable or either end is absent from the snapshot.
std::optional<std::vector<NodeId>> shortest_path(NodeId src, NodeId dst,
                                                 const TopologySnapshot& snap);

/// Hop count of shortest_path, or nullopt when unreachable.
std::optional<int> hop_distance(NodeId src, NodeId dst, const TopologySnapshot& snap);

}  // namespace coopcache
