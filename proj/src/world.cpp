#include "coopcache/world.hpp"

namespace coopcache {

std::string to_string(Role r) {
  switch (r) {
    case Role::Member:
      return "member";
    case Role::Head:
      return "head";
    case Role::Joining:
      return "joining";
  }
  return "?";
}

NodeState& World::node(NodeId n) {
  auto it = nodes.find(n);
  if (it == nodes.end()) throw UnknownNode(n);
  return it->second;
}

const NodeState& World::node(NodeId n) const {
  auto it = nodes.find(n);
  if (it == nodes.end()) throw UnknownNode(n);
  return it->second;
}

bool World::is_live(NodeId n) const {
  auto it = nodes.find(n);
  return it != nodes.end() && it->second.alive;
}

void World::rebuild_topology(double range) {
  std::map<NodeId, Position> positions;
  for (const auto& [id, n] : nodes)
    if (n.alive) positions.emplace(id, n.position());
  positions.emplace(server, server_position);
  topo = TopologySnapshot(std::move(positions), range, server);
}

}  // namespace coopcache
