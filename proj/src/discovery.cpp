#include "coopcache/discovery.hpp"

#include <algorithm>
#include <set>

namespace coopcache {

std::string to_string(Level l) {
  switch (l) {
    case Level::LocalCache:
      return "LocalCache";
    case Level::PreReq:
      return "PreReq";
    case Level::HomeCluster:
      return "HomeCluster";
    case Level::RoutingPathLocal:
      return "RoutingPathLocal";
    case Level::RoutingPathPreReq:
      return "RoutingPathPreReq";
    case Level::RoutingPathCluster:
      return "RoutingPathCluster";
    case Level::Server:
      return "Server";
    case Level::Failed:
      return "Failed";
  }
  return "?";
}

bool is_data(MessageKind k) { return k == MessageKind::Data; }

std::pair<int, int> account_messages(std::span<const MessageHop> hops) {
  int control = 0;
  int data = 0;
  for (const auto& h : hops) (is_data(h.kind) ? data : control) += 1;
  return {control, data};
}

namespace {

using Path = std::vector<NodeId>;

Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

/// State of one request while it is being resolved.
class Resolver {
 public:
  Resolver(NodeId requester, DataId d, World& world, TraceSink* trace, bool keep_history)
      : world_(world), trace_(trace), keep_history_(keep_history) {
    out_.requester = requester;
    out_.data_id = d;
  }

  NodeId requester() const { return out_.requester; }
  DataId data() const { return out_.data_id; }
  World& world() { return world_; }
  Tick now() const { return world_.now; }

  std::optional<Path> route(NodeId a, NodeId b) const { return shortest_path(a, b, world_.topo); }

  /// Sends one message along `path`. When `observers` is set, each node the
  /// message reaches records the request; `base_hops` is the distance of
  /// path.front() from the requester.
  void send(const Path& path, MessageKind kind, bool observers = false, int base_hops = 0) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      out_.messages.push_back({path[i - 1], path[i], kind});
      if (observers) observe(path[i], base_hops + static_cast<int>(i));
    }
  }

  /// A node handling the request records where the item will end up and
  /// counts the request toward its popularity if it holds a copy.
  void observe(NodeId v, int hops_from_requester) {
    if (!keep_history_ || v == requester() || v == world_.server) return;
    NodeState& n = world_.node(v);
    n.prereq.record(data(), Holder{requester(), std::max(hops_from_requester, 1)}, now());
    std::string outcome = "recorded";
    if (n.cache.holds_valid(data(), now())) {
      n.prereq.bump_popularity(data(), now());
      outcome = "recorded+popular";
    }
    trace_prereq(v, "record", outcome);
  }

  void trace_prereq(NodeId node, const char* op, const std::string& outcome) {
    if (!trace_) return;
    TraceRecord r;
    r["tick"] = now();
    r["event"] = "prereq";
    r["node"] = node.value;
    r["op"] = op;
    r["data_id"] = data().value;
    r["outcome"] = outcome;
    trace_->write(r);
  }

  bool holds(NodeId v) const {
    if (v == world_.server) return true;
    if (!world_.is_live(v)) return false;
    return world_.node(v).cache.holds_valid(data(), now());
  }

  /// Replies with the item along `to_requester` (source first) and stores it
  /// at the requester.
  void serve(Level level, NodeId source, const Path& to_requester) {
    send(to_requester, MessageKind::Data);
    DataItem item;
    if (source == world_.server) {
      item = world_.catalog.at(data().value);
    } else {
      NodeState& holder = world_.node(source);
      const CacheEntry* e = holder.cache.find(data());
      holder.cache.lookup(data(), now());  // refresh recency at the holder
      item = e->item;
      item.ttl = e->expires_at - now();
    }
    out_.served_by = level;
    out_.serving_node = source;
    store_at_requester(item, source, static_cast<int>(to_requester.size()) - 1);
  }

  RequestOutcome local_hit() {
    out_.served_by = Level::LocalCache;
    out_.serving_node = requester();
    return finish();
  }

  RequestOutcome fail() {
    out_.served_by = Level::Failed;
    out_.serving_node.reset();
    return finish();
  }

  /// Confirm + reply exchange with a named holder. Returns true when served.
  bool fetch_from(NodeId holder, Level level) {
    auto path = route(requester(), holder);
    if (!path) return false;
    send(*path, MessageKind::Confirm, true);
    if (!holds(holder)) {
      send(reversed(*path), MessageKind::Nack);
      return false;
    }
    serve(level, holder, reversed(*path));
    return true;
  }

  /// The head's table lookup for this request, excluding the requester.
  std::optional<NodeId> head_lookup(NodeId head) const {
    const NodeState& h = world_.node(head);
    if (!h.head_state) return std::nullopt;
    return state_table_lookup(h.head_state->table, data(), now(), requester());
  }

  RequestOutcome finish() {
    auto [control, data] = account_messages(out_.messages);
    out_.control_messages = control;
    out_.data_messages = data;
    out_.hops_traveled = control + data;
    if (trace_) {
      TraceRecord r;
      r["tick"] = now();
      r["event"] = "request";
      r["node"] = out_.requester.value;
      r["data_id"] = out_.data_id.value;
      r["served_by"] = to_string(out_.served_by);
      if (out_.serving_node)
        r["serving_node"] = out_.serving_node->value;
      else
        r["serving_node"] = nullptr;
      r["hops"] = out_.hops_traveled;
      r["control"] = out_.control_messages;
      r["data"] = out_.data_messages;
      trace_->write(r);
    }
    return std::move(out_);
  }

  std::set<NodeId> consulted_heads;

 private:
  void store_at_requester(const DataItem& item, NodeId source, int hops) {
    NodeState& r = world_.node(requester());
    if (item.size > r.cache.capacity() || item.ttl <= 0) return;
    out_.evicted = r.cache.insert(item, now());
    out_.cached = true;
    if (!keep_history_) return;
    for (DataId gone : out_.evicted) r.prereq.clear_local(gone);
    r.prereq.mark_local(item.id, item.size, now() + item.ttl, now());
    if (source != world_.server && source != requester())
      r.prereq.record(item.id, Holder{source, std::max(hops, 1)}, now());
  }

  World& world_;
  TraceSink* trace_;
  bool keep_history_;
  RequestOutcome out_;
};

}  // namespace

RequestOutcome resolve_nc(NodeId requester, DataId d, World& world, TraceSink* trace) {
  Resolver r(requester, d, world, trace, false);
  if (world.node(requester).cache.lookup(d, world.now)) return r.local_hit();
  auto path = r.route(requester, world.server);
  if (!path) return r.fail();
  r.send(*path, MessageKind::Request);
  r.serve(Level::Server, world.server, reversed(*path));
  return r.finish();
}

RequestOutcome resolve_hop_by_hop(NodeId requester, DataId d, World& world, TraceSink* trace) {
  Resolver r(requester, d, world, trace, false);
  if (world.node(requester).cache.lookup(d, world.now)) return r.local_hit();
  auto path = r.route(requester, world.server);
  if (!path) return r.fail();
  for (std::size_t i = 1; i < path->size(); ++i) {
    const Path step{(*path)[i - 1], (*path)[i]};
    r.send(step, MessageKind::Request);
    const NodeId v = (*path)[i];
    if (v == world.server || r.holds(v)) {
      const Path back = reversed(Path(path->begin(), path->begin() + static_cast<long>(i) + 1));
      r.serve(v == world.server ? Level::Server : Level::RoutingPathLocal, v, back);
      return r.finish();
    }
  }
  return r.fail();  // unreachable: the route ends at the server
}

RequestOutcome resolve_hybrid(NodeId requester, DataId d, World& world, TraceSink* trace) {
  Resolver r(requester, d, world, trace, true);
  NodeState& self = world.node(requester);

  // 1. local cache
  if (self.cache.lookup(d, world.now)) return r.local_hit();

  // 2. PreReq hint: one targeted attempt at the closest recorded holder
  std::vector<Holder> hints = self.prereq.lookup(d, world.now);
  std::erase_if(hints, [&](const Holder& h) { return h.node == requester || h.node == world.server; });
  r.trace_prereq(requester, "lookup", hints.empty() ? "miss" : "hit");
  if (!hints.empty()) {
    const auto server_hops = hop_distance(requester, world.server, world.topo);
    if (auto target = prereq_choose_target(hints, server_hops)) {
      if (r.fetch_from(target->node, Level::PreReq)) return r.finish();
      world.node(requester).prereq.invalidate(d, target->node);
      r.trace_prereq(requester, "invalidate", "removed " + std::to_string(target->node.value));
    }
  }

  // 3. home cluster
  if (self.settled()) {
    const NodeId head = *self.head;
    std::optional<NodeId> holder;
    bool answered = false;
    if (head == requester) {
      holder = r.head_lookup(head);
      answered = true;
    } else if (auto path = r.route(requester, head)) {
      r.send(*path, MessageKind::Lookup, true);
      holder = r.head_lookup(head);
      answered = true;
      r.send(reversed(*path), MessageKind::Ack);
    }
    if (answered) {
      r.consulted_heads.insert(head);
      if (holder && r.fetch_from(*holder, Level::HomeCluster)) return r.finish();
    }
  }

  // 4. routing path toward the server, 5. the server itself
  auto path = r.route(requester, world.server);
  if (!path) return r.fail();
  for (std::size_t i = 1; i < path->size(); ++i) {
    const NodeId v = (*path)[i];
    const int depth = static_cast<int>(i);
    const Path to_v(path->begin(), path->begin() + depth + 1);
    r.send(Path{(*path)[i - 1], v}, MessageKind::Request, true, depth - 1);
    if (v == world.server) {
      r.serve(Level::Server, v, reversed(to_v));
      return r.finish();
    }

    NodeState& relay = world.node(v);
    if (relay.cache.holds_valid(d, world.now)) {
      r.serve(Level::RoutingPathLocal, v, reversed(to_v));
      return r.finish();
    }

    std::vector<Holder> relay_hints = relay.prereq.lookup(d, world.now);
    std::erase_if(relay_hints, [&](const Holder& h) {
      return h.node == requester || h.node == v || h.node == world.server;
    });
    r.trace_prereq(v, "lookup", relay_hints.empty() ? "miss" : "hit");
    const int hops_left = static_cast<int>(path->size()) - 1 - depth;
    if (auto target = prereq_choose_target(relay_hints, hops_left)) {
      r.send(reversed(to_v), MessageKind::Ack);
      if (r.fetch_from(target->node, Level::RoutingPathPreReq)) return r.finish();
      relay.prereq.invalidate(d, target->node);
      r.trace_prereq(v, "invalidate", "removed " + std::to_string(target->node.value));
      r.send(to_v, MessageKind::Request);
    }

    if (!relay.settled() || r.consulted_heads.contains(*relay.head)) continue;
    const NodeId head = *relay.head;
    r.consulted_heads.insert(head);
    std::optional<NodeId> holder;
    if (head == v) {
      holder = r.head_lookup(head);
    } else if (auto to_head = r.route(v, head)) {
      r.send(*to_head, MessageKind::Lookup, true, depth);
      holder = r.head_lookup(head);
      if (!holder) {
        r.send(reversed(*to_head), MessageKind::Ack);
        continue;
      }
    } else {
      continue;
    }
    if (!holder) continue;
    // The head (or the relay acting as head) names the holder to the requester.
    auto ack = r.route(head, requester);
    if (!ack) continue;
    r.send(*ack, MessageKind::Ack);
    if (r.fetch_from(*holder, Level::RoutingPathCluster)) return r.finish();
    r.send(to_v, MessageKind::Request);
  }
  return r.fail();
}

RequestOutcome resolve(Policy policy, NodeId requester, DataId d, World& world, TraceSink* trace) {
  switch (policy) {
    case Policy::NC:
      return resolve_nc(requester, d, world, trace);
    case Policy::HopByHop:
      return resolve_hop_by_hop(requester, d, world, trace);
    case Policy::Hybrid:
      return resolve_hybrid(requester, d, world, trace);
  }
  return resolve_hybrid(requester, d, world, trace);
}

}  // namespace coopcache
