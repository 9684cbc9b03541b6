#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coopcache/trace.hpp"
#include "coopcache/world.hpp"

namespace coopcache {

/// Where a request was satisfied.
enum class Level {
  LocalCache,
  PreReq,
  HomeCluster,
  RoutingPathLocal,
  RoutingPathPreReq,
  RoutingPathCluster,
  Server,
  Failed,
};

inline constexpr Level kAllLevels[] = {Level::LocalCache,         Level::PreReq,
                                       Level::HomeCluster,        Level::RoutingPathLocal,
                                       Level::RoutingPathPreReq,  Level::RoutingPathCluster,
                                       Level::Server,             Level::Failed};

std::string to_string(Level l);

enum class MessageKind {
  Request,  // request forwarded toward a target or the server
  Lookup,   // query to a D-Clusterhead
  Ack,      // head or relay answer naming a holder (or none)
  Confirm,  // requester asks a named holder for the item
  Nack,     // target did not have the item
  Data,     // reply carrying the item
};

bool is_data(MessageKind k);

/// One transmission over one link.
struct MessageHop {
  NodeId from;
  NodeId to;
  MessageKind kind;

  friend bool operator==(const MessageHop&, const MessageHop&) = default;
};

/// (control messages, data messages), each link traversal counted once.
std::pair<int, int> account_messages(std::span<const MessageHop> hops);

struct RequestOutcome {
  NodeId requester;
  DataId data_id;
  Level served_by = Level::Failed;
  std::optional<NodeId> serving_node;
  /// Total link traversals of every message this request caused.
  int hops_traveled = 0;
  int control_messages = 0;
  int data_messages = 0;
  /// Every transmission, in send order.
  std::vector<MessageHop> messages;
  /// Ids evicted from the requester's cache when it stored the result.
  std::vector<DataId> evicted;
  /// Whether the requester stored a new copy.
  bool cached = false;

  bool succeeded() const { return served_by != Level::Failed; }
};

/// Local cache, then the data server; nobody on the route may answer.
RequestOutcome resolve_nc(NodeId requester, DataId d, World& world, TraceSink* trace = nullptr);

/// Walks the route to the server; the first node with a valid copy answers.
RequestOutcome resolve_hop_by_hop(NodeId requester, DataId d, World& world,
                                  TraceSink* trace = nullptr);

/// Local cache, PreReq hint, home D-Clusterhead, routing path (each relay:
/// local cache, PreReq, its D-Clusterhead), then the server.
RequestOutcome resolve_hybrid(NodeId requester, DataId d, World& world, TraceSink* trace = nullptr);

RequestOutcome resolve(Policy policy, NodeId requester, DataId d, World& world,
                       TraceSink* trace = nullptr);

}  // namespace coopcache
