#include "coopcache/topology.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace coopcache {

double grid_size(double range) { return range / std::sqrt(2.0); }

ClusterId cluster_of(Position p, double grid) {
  return {static_cast<std::int64_t>(std::floor(p.x / grid)),
          static_cast<std::int64_t>(std::floor(p.y / grid))};
}

UnknownNode::UnknownNode(NodeId n)
    : std::out_of_range("node " + std::to_string(n.value) + " is not in the topology snapshot") {}

TopologySnapshot::TopologySnapshot(std::map<NodeId, Position> positions, double range,
                                   NodeId server_node)
    : positions_(std::move(positions)),
      range_(range),
      grid_(grid_size(range)),
      server_(server_node) {
  for (const auto& [id, _] : positions_) adjacency_[id];
  for (auto a = positions_.begin(); a != positions_.end(); ++a) {
    for (auto b = std::next(a); b != positions_.end(); ++b) {
      if (distance(a->second, b->second) <= range_) {
        // Iteration is in ascending id order, so both lists stay sorted.
        adjacency_[a->first].push_back(b->first);
        adjacency_[b->first].push_back(a->first);
      }
    }
  }
}

Position TopologySnapshot::position(NodeId n) const {
  auto it = positions_.find(n);
  if (it == positions_.end()) throw UnknownNode(n);
  return it->second;
}

const std::vector<NodeId>& TopologySnapshot::adjacent(NodeId n) const {
  auto it = adjacency_.find(n);
  if (it == adjacency_.end()) throw UnknownNode(n);
  return it->second;
}

std::set<NodeId> neighbors(NodeId n, const TopologySnapshot& snap) {
  const auto& adj = snap.adjacent(n);
  return {adj.begin(), adj.end()};
}

namespace {

std::map<NodeId, int> bfs_depths(NodeId from, const TopologySnapshot& snap) {
  std::map<NodeId, int> depth{{from, 0}};
  std::deque<NodeId> frontier{from};
  while (!frontier.empty()) {
    const NodeId cur = frontier.front();
    frontier.pop_front();
    const int d = depth[cur];
    for (NodeId next : snap.adjacent(cur)) {
      if (depth.try_emplace(next, d + 1).second) frontier.push_back(next);
    }
  }
  return depth;
}

}  // namespace

std::optional<std::vector<NodeId>> shortest_path(NodeId src, NodeId dst,
                                                 const TopologySnapshot& snap) {
  if (!snap.contains(src) || !snap.contains(dst)) return std::nullopt;
  // Depths from dst let us walk forward from src picking the smallest id that
  // still lies on some shortest route, which yields the lexicographic minimum.
  const auto depth = bfs_depths(dst, snap);
  auto it = depth.find(src);
  if (it == depth.end()) return std::nullopt;

  std::vector<NodeId> path{src};
  NodeId cur = src;
  int remaining = it->second;
  while (remaining > 0) {
    for (NodeId next : snap.adjacent(cur)) {
      auto d = depth.find(next);
      if (d != depth.end() && d->second == remaining - 1) {
        cur = next;
        break;
      }
    }
    path.push_back(cur);
    --remaining;
  }
  return path;
}

std::optional<int> hop_distance(NodeId src, NodeId dst, const TopologySnapshot& snap) {
  if (!snap.contains(src) || !snap.contains(dst)) return std::nullopt;
  const auto depth = bfs_depths(src, snap);
  auto it = depth.find(dst);
  if (it == depth.end()) return std::nullopt;
  return it->second;
}

}  // namespace coopcache
