#include "coopcache/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coopcache {

void MetricsAccumulator::add(const RequestOutcome& o) {
  ++requests_issued;
  if (o.served_by == Level::Failed)
    ++requests_failed;
  else
    ++hits_by_level[o.served_by];
  total_hops += o.hops_traveled;
  total_control_messages += o.control_messages;
  total_data_messages += o.data_messages;
  ++latency_hops[o.hops_traveled];
}

std::int64_t MetricsAccumulator::hits(Level l) const {
  auto it = hits_by_level.find(l);
  return it == hits_by_level.end() ? 0 : it->second;
}

bool MetricsAccumulator::conserved() const {
  std::int64_t sum = requests_failed;
  for (const auto& [level, n] : hits_by_level) {
    if (level == Level::Failed) return false;
    sum += n;
  }
  return sum == requests_issued;
}

namespace {

SimConfig validated(SimConfig cfg) {
  const auto violations = validate_config(cfg);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& v : violations) os << "\n  " << v;
    throw ConfigError(os.str());
  }
  return cfg;
}

nlohmann::ordered_json cluster_json(ClusterId c) { return nlohmann::ordered_json::array({c.gx, c.gy}); }

}  // namespace

Engine::Engine(SimConfig cfg, TraceSink* trace, InitOptions options)
    : cfg_(validated(std::move(cfg))),
      trace_(trace),
      zipf_(cfg_.catalog_size, cfg_.zipf_exponent),
      workload_rng_(cfg_.seed, kWorkloadStream) {
  mobility_ = {cfg_.world_width, cfg_.world_height, cfg_.min_speed, cfg_.max_speed,
               cfg_.pause_ticks};
  bootstrap(options);
}

void Engine::bootstrap(const InitOptions& options) {
  bootstrapping_ = true;
  world_.now = 0;
  world_.server = NodeId{static_cast<std::uint32_t>(cfg_.node_count)};
  world_.server_position = cfg_.server_position;
  world_.catalog = make_catalog(cfg_);

  std::set<NodeId> late;
  for (const auto& a : cfg_.arrivals) late.insert(a.node);

  for (std::int64_t i = 0; i < cfg_.node_count; ++i) {
    NodeState n;
    n.id = NodeId{static_cast<std::uint32_t>(i)};
    n.rng = RngStream(cfg_.seed, kNodeStreamBase + static_cast<std::uint64_t>(i));
    n.motion = initial_waypoint(mobility_, n.rng);
    if (options.positions && static_cast<std::size_t>(i) < options.positions->size())
      n.motion.current = (*options.positions)[static_cast<std::size_t>(i)];
    n.speed.prev_position = n.motion.current;
    n.cache = LocalCache(cfg_.cache_capacity);
    n.prereq = PreReqTable(static_cast<std::size_t>(cfg_.prereq_capacity));
    n.battery = BatteryMeter(cfg_.battery_costs);
    n.alive = !late.contains(n.id);
    world_.nodes.emplace(n.id, std::move(n));
  }
  world_.rebuild_topology(cfg_.transmission_range);

  std::map<ClusterId, std::map<NodeId, NodeMetrics>> cells;
  for (auto& [id, n] : world_.nodes) {
    n.cluster = cluster_of(n.position(), world_.topo.grid());
    if (!n.alive) continue;
    std::optional<NodeMetrics> mx;
    if (options.metrics_override) mx = options.metrics_override(id);
    cells[n.cluster][id] = mx ? *mx : measure(id);
  }
  for (const auto& [cell, members] : cells) {
    const ElectionResult e = elect_head(members, cfg_.election_weights, cell);
    trace_election(e);
    become_head(world_.node(e.head));
    for (const auto& [id, _] : members)
      if (id != e.head) attach(world_.node(id), e.head);
  }
  bootstrapping_ = false;
}

NodeMetrics Engine::measure(NodeId id) const {
  const NodeState& n = world_.node(id);
  NodeMetrics mx;
  mx.cs = static_cast<double>(n.cache.free_capacity(world_.now));
  mx.d = world_.topo.contains(id) ? sum_neighbor_distances(id, world_.topo) : 0.0;
  mx.m = mobility_metric(n.speed);
  mx.bp = n.battery.consumed();
  mx.p = static_cast<double>(n.prereq.total_popularity());
  return mx;
}

void Engine::run_to_end() {
  while (world_.now < cfg_.ticks) step();
}

void Engine::step() {
  apply_schedule();
  move_nodes();
  charge_idle();
  world_.rebuild_topology(cfg_.transmission_range);
  maintain_clusters();
  run_leases();
  if (requests_enabled_) issue_requests();
  ++world_.now;
}

bool Engine::counting() const { return !bootstrapping_ && world_.now >= cfg_.warmup_ticks; }

void Engine::trace_event(TraceRecord r) {
  if (trace_) trace_->write(r);
}

void Engine::trace_election(const ElectionResult& e) {
  if (!trace_) return;
  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "election";
  r["cluster"] = cluster_json(e.cluster);
  r["head"] = e.head.value;
  TraceRecord weights = TraceRecord::object();
  for (const auto& [id, w] : e.weights_table) weights[std::to_string(id.value)] = w;
  r["weights"] = weights;
  trace_->write(r);
}

void Engine::charge_hop(NodeId from, NodeId to) {
  if (world_.is_live(from)) world_.node(from).battery.consume(CostClass::MessageSent);
  if (world_.is_live(to)) world_.node(to).battery.consume(CostClass::MessageReceived);
}

void Engine::send_control(NodeId from, std::optional<NodeId> to) {
  if (to)
    charge_hop(from, *to);
  else if (world_.is_live(from))
    world_.node(from).battery.consume(CostClass::MessageSent);
  if (counting()) ++metrics_.maintenance_messages;
}

void Engine::renew_lease(NodeState& member, NodeState& head) {
  member.head_lease_expires = world_.now + cfg_.lease_duration;
  member.last_keepalive = world_.now;
  head.head_state->member_leases[member.id] = {member.id, world_.now + cfg_.lease_duration};
}

std::map<NodeId, NodeId> Engine::settled_heads() const {
  std::map<NodeId, NodeId> out;
  for (const auto& [id, n] : world_.nodes)
    if (n.settled()) out.emplace(id, *n.head);
  return out;
}

// --- schedule, mobility, battery --------------------------------------------

void Engine::apply_schedule() {
  for (const auto& f : cfg_.failures)
    if (f.tick == world_.now) fail_node(f.node);
  for (const auto& a : cfg_.arrivals)
    if (a.tick == world_.now) arrive_node(a.node);
}

void Engine::fail_node(NodeId id) {
  NodeState& n = world_.node(id);
  if (!n.alive) return;
  n.alive = false;
  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "failure";
  r["cluster"] = cluster_json(n.cluster);
  r["actor"] = id.value;
  r["role"] = to_string(n.role);
  trace_event(std::move(r));
}

void Engine::arrive_node(NodeId id) {
  NodeState& n = world_.node(id);
  if (n.alive) return;
  n.alive = true;
  n.speed.prev_position = n.position();
  world_.rebuild_topology(cfg_.transmission_range);
  n.cluster = cluster_of(n.position(), world_.topo.grid());
  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "arrival";
  r["cluster"] = cluster_json(n.cluster);
  r["actor"] = id.value;
  trace_event(std::move(r));
  begin_enter(n);
}

void Engine::move_nodes() {
  for (auto& [id, n] : world_.nodes) {
    if (!n.alive) continue;
    if (mobility_enabled_) n.motion = mobility_step(n.motion, mobility_, n.rng);
    n.speed = update_speed_history(n.speed, n.position());
  }
}

void Engine::charge_idle() {
  for (auto& [id, n] : world_.nodes) {
    if (!n.alive) continue;
    n.battery.consume(n.role == Role::Head ? CostClass::HeadTick : CostClass::IdleTick);
  }
}

// --- cluster maintenance ----------------------------------------------------

void Engine::maintain_clusters() {
  // Every mover leaves before anyone enters, so no entering node hears a
  // reply naming the head of a cell the replier has already left.
  std::vector<NodeId> movers;
  for (auto& [id, n] : world_.nodes) {
    if (!n.alive) continue;
    const ClusterId now_in = cluster_of(n.position(), world_.topo.grid());
    if (now_in == n.cluster) continue;  // moving inside a cell costs nothing
    depart(id, n.cluster);
    n.cluster = now_in;
    movers.push_back(id);
  }
  for (NodeId id : movers) begin_enter(world_.node(id));
  for (auto& [id, n] : world_.nodes)
    if (n.alive && n.role == Role::Joining && n.join_deadline <= world_.now) finish_enter(n);
}

void Engine::depart(NodeId id, ClusterId old_cluster) {
  NodeState& n = world_.node(id);
  if (n.role == Role::Member)
    member_departs(n, old_cluster);
  else if (n.role == Role::Head)
    head_departs(n, old_cluster);
  n.role = Role::Joining;
  n.head.reset();
  n.head_state.reset();
}

void Engine::member_departs(NodeState& node, ClusterId old_cluster) {
  if (!node.head) return;
  NodeState& head = world_.node(*node.head);
  if (!head.alive || head.role != Role::Head || !head.head_state ||
      !head.head_state->table.has_member(node.id))
    return;
  send_control(node.id, head.id);

  std::vector<DataItem> items;
  for (const auto& [d, expires] : node.cache.valid_items(world_.now)) {
    DataItem it = node.cache.find(d)->item;
    it.ttl = expires - world_.now;
    items.push_back(it);
  }
  std::map<NodeId, Capacity> free_space;
  for (const auto& [m, _] : head.head_state->table.rows) {
    if (m == node.id || !world_.is_live(m)) continue;
    free_space[m] = world_.node(m).cache.free_capacity(world_.now);
  }
  const auto actions =
      member_leave(head.head_state->table, node.id, items, free_space, world_.now);
  head.head_state->member_leases.erase(node.id);

  int cached = 0;
  for (const auto& a : actions) {
    NodeState& target = world_.node(a.target);
    if (a.item.size > target.cache.capacity()) continue;
    if (a.target != head.id) send_control(head.id, a.target);
    charge_hop(node.id, a.target);
    if (counting()) ++metrics_.maintenance_messages;
    const auto evicted = target.cache.insert(a.item, world_.now);
    if (cfg_.policy == Policy::Hybrid) {
      for (DataId gone : evicted) target.prereq.clear_local(gone);
      target.prereq.mark_local(a.item.id, a.item.size, world_.now + a.item.ttl, world_.now);
    }
    report_cache(a.target);
    ++cached;
  }

  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "leave";
  r["cluster"] = cluster_json(old_cluster);
  r["actor"] = node.id.value;
  r["head"] = head.id.value;
  r["rescued"] = cached;
  r["messages"] = 1 + cached + static_cast<int>(std::count_if(
                                   actions.begin(), actions.end(),
                                   [&](const CachingAction& a) { return a.target != head.id; }));
  trace_event(std::move(r));
}

void Engine::head_departs(NodeState& node, ClusterId old_cluster) {
  const HeadState old_state = *node.head_state;
  std::map<NodeId, NodeMetrics> remaining;
  for (const auto& [m, _] : old_state.table.rows) {
    if (m == node.id || !world_.is_live(m)) continue;
    const NodeState& mm = world_.node(m);
    if (cluster_of(mm.position(), world_.topo.grid()) != old_cluster) continue;
    remaining[m] = measure(m);
  }
  const HandoverOutcome ho =
      head_leave(node.id, remaining, old_state.table, cfg_.election_weights, old_cluster);

  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "handover";
  r["cluster"] = cluster_json(old_cluster);
  r["actor"] = node.id.value;
  if (!ho.new_head) {
    r["head"] = nullptr;
    r["multicast"] = 0;
    r["deliveries"] = 0;
    r["messages"] = 0;
    trace_event(std::move(r));
    return;
  }

  trace_election(*ho.election);
  NodeState& next = world_.node(*ho.new_head);
  // One multicast carries the successor's name and the table to every
  // remaining member.
  send_control(node.id, std::nullopt);

  HeadState state{ho.table, old_state.member_leases};
  state.member_leases.erase(next.id);
  state.member_leases.erase(node.id);
  next.role = Role::Head;
  next.head = next.id;
  next.head_state = std::move(state);

  int deliveries = 0;
  for (const auto& [m, _] : next.head_state->table.rows) {
    if (!world_.is_live(m)) continue;
    NodeState& mm = world_.node(m);
    if (m != next.id && mm.head != node.id) continue;
    if (counting()) ++metrics_.maintenance_messages;
    mm.battery.consume(CostClass::MessageReceived);
    ++deliveries;
    if (m == next.id) continue;
    mm.head = next.id;
    renew_lease(mm, next);
  }
  r["head"] = next.id.value;
  r["multicast"] = 1;
  r["deliveries"] = deliveries;
  r["messages"] = 1 + deliveries;
  trace_event(std::move(r));
}

void Engine::begin_enter(NodeState& node) {
  node.role = Role::Joining;
  node.head.reset();
  node.head_state.reset();
  const JoinOutcome jo = node_enter(node.id, world_.topo, settled_heads());
  send_control(node.id, std::nullopt);  // location broadcast
  for (int i = 0; i < jo.replies; ++i) send_control(*jo.head, node.id);
  if (jo.kind == JoinOutcome::Kind::Joined) {
    attach(node, *jo.head);
  } else if (cfg_.threshold_ticks == 0) {
    become_head(node);
  } else {
    node.join_deadline = world_.now + cfg_.threshold_ticks;
  }
}

void Engine::finish_enter(NodeState& node) {
  const JoinOutcome jo = node_enter(node.id, world_.topo, settled_heads());
  for (int i = 0; i < jo.replies; ++i) send_control(*jo.head, node.id);
  if (jo.kind == JoinOutcome::Kind::Joined)
    attach(node, *jo.head);
  else
    become_head(node);
}

void Engine::attach(NodeState& node, NodeId head_id) {
  node.role = Role::Member;
  node.head = head_id;
  node.head_lease_expires = world_.now + cfg_.lease_duration;
  node.last_keepalive = world_.now;
  send_control(node.id, head_id);  // cache information
  NodeState& head = world_.node(head_id);
  if (head.alive && head.role == Role::Head && head.head_state) {
    state_table_add_member(head.head_state->table, node.id, node.cache.valid_items(world_.now));
    head.head_state->member_leases[node.id] = {node.id, world_.now + cfg_.lease_duration};
  }
  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "join";
  r["cluster"] = cluster_json(node.cluster);
  r["actor"] = node.id.value;
  r["head"] = head_id.value;
  trace_event(std::move(r));
}

void Engine::become_head(NodeState& node) {
  node.role = Role::Head;
  node.head = node.id;
  HeadState hs;
  hs.table.owner = node.id;
  hs.table.rows[node.id] = node.cache.valid_items(world_.now);
  node.head_state = std::move(hs);
  TraceRecord r;
  r["tick"] = world_.now;
  r["event"] = "became_head";
  r["cluster"] = cluster_json(node.cluster);
  r["actor"] = node.id.value;
  trace_event(std::move(r));
}

// --- leases -----------------------------------------------------------------

void Engine::run_leases() {
  keepalives();
  handle_head_timeouts();
  handle_member_timeouts();
}

void Engine::keepalives() {
  const Tick interval = std::max<Tick>(1, cfg_.lease_duration / 2);
  for (auto& [id, n] : world_.nodes) {
    if (!n.alive || n.role != Role::Member || !n.head) continue;
    if (world_.now - n.last_keepalive < interval) continue;
    n.last_keepalive = world_.now;
    send_control(id, *n.head);
    NodeState& head = world_.node(*n.head);
    if (head.alive && head.role == Role::Head && head.head_state &&
        head.head_state->table.has_member(id)) {
      send_control(head.id, id);
      renew_lease(n, head);
    }
  }
}

void Engine::handle_head_timeouts() {
  std::map<std::pair<ClusterId, NodeId>, std::set<NodeId>> detectors;
  for (const auto& [id, n] : world_.nodes) {
    if (!n.alive || n.role != Role::Member || !n.head) continue;
    if (world_.now >= n.head_lease_expires) detectors[{n.cluster, *n.head}].insert(id);
  }

  for (const auto& [key, dets] : detectors) {
    const auto& [cluster, silent_head] = key;
    NodeState& old = world_.node(silent_head);
    if (old.alive && old.role == Role::Head && old.cluster == cluster && old.head_state) {
      // The head is alive but lost track of these members: they rejoin it.
      for (NodeId d : dets) attach(world_.node(d), silent_head);
      continue;
    }

    std::map<NodeId, NodeMetrics> responders;
    std::map<NodeId, CachedItemReport> reports;
    for (const auto& [id, n] : world_.nodes) {
      if (!n.alive || n.role != Role::Member || n.cluster != cluster || n.head != silent_head)
        continue;
      responders[id] = measure(id);
      reports[id] = n.cache.valid_items(world_.now);
    }
    const TimeoutElection te =
        head_timeout(dets, responders, reports, cfg_.election_weights, cluster);
    trace_election(te.election);

    const auto others = static_cast<int>(responders.size()) - 1;
    send_control(te.initiator, std::nullopt);  // election broadcast
    for (const auto& [id, _] : responders)
      if (id != te.initiator) send_control(id, te.initiator);
    send_control(te.election.head, std::nullopt);  // selection broadcast

    NodeState& next = world_.node(te.election.head);
    next.role = Role::Head;
    next.head = next.id;
    next.head_state = HeadState{te.table, {}};
    for (const auto& [id, _] : responders) {
      if (id == next.id) continue;
      NodeState& m = world_.node(id);
      m.head = next.id;
      send_control(id, next.id);  // cache report
      renew_lease(m, next);
    }

    TraceRecord r;
    r["tick"] = world_.now;
    r["event"] = "head_timeout";
    r["cluster"] = cluster_json(cluster);
    r["actor"] = te.initiator.value;
    r["silent_head"] = silent_head.value;
    r["head"] = next.id.value;
    r["messages"] = 2 + 2 * others;
    trace_event(std::move(r));
  }
}

void Engine::handle_member_timeouts() {
  for (auto& [id, n] : world_.nodes) {
    if (!n.alive || n.role != Role::Head || !n.head_state) continue;
    std::vector<NodeId> expired;
    for (const auto& [m, lease] : n.head_state->member_leases)
      if (lease.expired(world_.now)) expired.push_back(m);
    for (NodeId m : expired) {
      n.head_state->member_leases.erase(m);
      member_timeout(n.head_state->table, m);
      TraceRecord r;
      r["tick"] = world_.now;
      r["event"] = "member_timeout";
      r["cluster"] = cluster_json(n.cluster);
      r["actor"] = id.value;
      r["member"] = m.value;
      r["messages"] = 0;
      trace_event(std::move(r));
    }
  }
}

// --- requests ---------------------------------------------------------------

void Engine::issue_requests() {
  const std::int64_t count = poisson(cfg_.request_rate, workload_rng_);
  std::vector<NodeId> live;
  for (const auto& [id, n] : world_.nodes)
    if (n.alive) live.push_back(id);
  if (live.empty()) return;

  std::vector<std::pair<NodeId, DataId>> batch;
  for (std::int64_t i = 0; i < count; ++i) batch.push_back(draw_request(live, zipf_, workload_rng_));
  std::stable_sort(batch.begin(), batch.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [requester, d] : batch) issue_request(requester, d);
}

RequestOutcome Engine::issue_request(NodeId requester, DataId d) {
  RequestOutcome o = resolve(cfg_.policy, requester, d, world_, trace_);
  for (const auto& hop : o.messages) {
    charge_hop(hop.from, hop.to);
    // Any message to the own head doubles as a lease renewal.
    if (!world_.is_live(hop.from) || !world_.is_live(hop.to)) continue;
    NodeState& from = world_.node(hop.from);
    if (from.role != Role::Member || from.head != hop.to) continue;
    NodeState& head = world_.node(hop.to);
    if (head.role == Role::Head && head.head_state && head.head_state->table.has_member(from.id))
      renew_lease(from, head);
  }
  if (o.cached) report_cache(requester);
  if (counting()) metrics_.add(o);
  return o;
}

void Engine::report_cache(NodeId member) {
  NodeState& m = world_.node(member);
  if (!m.alive || !m.head) return;
  if (m.role == Role::Head && m.head_state) {
    state_table_update(m.head_state->table, member, m.cache.valid_items(world_.now));
    return;
  }
  if (m.role != Role::Member) return;
  NodeState& head = world_.node(*m.head);
  if (!head.alive || head.role != Role::Head || !head.head_state) return;
  if (state_table_update(head.head_state->table, member, m.cache.valid_items(world_.now))) {
    send_control(member, head.id);
    renew_lease(m, head);
  }
}

// --- checks -----------------------------------------------------------------

std::vector<std::string> Engine::check_invariants() const {
  std::vector<std::string> out;
  if (!metrics_.conserved()) out.push_back("metrics: hits_by_level + failed != issued");
  const Tick now = world_.now;
  for (const auto& [id, n] : world_.nodes) {
    const std::string who = "node " + std::to_string(id.value);
    Capacity sum = 0;
    for (const auto& [_, e] : n.cache.entries()) sum += e.item.size;
    if (sum != n.cache.used() || n.cache.used() > n.cache.capacity())
      out.push_back(who + ": cache accounting broken");
    if (n.prereq.size() > n.prereq.capacity()) out.push_back(who + ": PreReq over capacity");
    if (!n.alive || n.role != Role::Head || !n.head_state) continue;
    for (const auto& [m, row] : n.head_state->table.rows) {
      if (!world_.is_live(m)) continue;
      const NodeState& mm = world_.node(m);
      for (const auto& [d, expires] : row) {
        if (expires <= now) continue;
        const CacheEntry* e = mm.cache.find(d);
        if (e == nullptr || !e->valid_at(now) || e->expires_at != expires)
          out.push_back(who + ": table lists item " + std::to_string(d.value) + " at node " +
                        std::to_string(m.value) + " which does not hold it");
      }
    }
  }
  return out;
}

std::vector<std::string> Engine::quiescence_violations() const {
  std::vector<std::string> out;
  std::map<ClusterId, std::vector<NodeId>> cells;
  for (const auto& [id, n] : world_.nodes)
    if (n.alive) cells[cluster_of(n.position(), world_.topo.grid())].push_back(id);

  for (const auto& [cell, ids] : cells) {
    const std::string where =
        "cell (" + std::to_string(cell.gx) + "," + std::to_string(cell.gy) + ")";
    std::vector<NodeId> heads;
    for (NodeId id : ids)
      if (world_.node(id).role == Role::Head) heads.push_back(id);
    if (heads.size() != 1) {
      out.push_back(where + ": " + std::to_string(heads.size()) + " heads");
      continue;
    }
    const NodeState& head = world_.node(heads.front());
    std::set<NodeId> expected(ids.begin(), ids.end());
    std::set<NodeId> listed;
    for (const auto& [m, _] : head.head_state->table.rows) listed.insert(m);
    if (listed != expected) out.push_back(where + ": head table members differ from cell occupants");
    for (NodeId id : ids) {
      const NodeState& n = world_.node(id);
      if (n.cluster != cell) out.push_back(where + ": node " + std::to_string(id.value) + " has a stale cluster id");
      if (n.head != head.id)
        out.push_back(where + ": node " + std::to_string(id.value) + " follows the wrong head");
    }
  }
  return out;
}

World init_world(const SimConfig& cfg, InitOptions options) {
  Engine e(cfg, nullptr, std::move(options));
  return e.world();
}

MetricsAccumulator run(const SimConfig& cfg, TraceSink* trace) {
  Engine e(cfg, trace);
  e.run_to_end();
  const auto broken = e.check_invariants();
  if (!broken.empty()) throw InvariantViolation(broken.front());
  const MetricsAccumulator& m = e.metrics();
  if (trace) {
    TraceRecord r;
    r["tick"] = e.world().now;
    r["event"] = "summary";
    r["requests_issued"] = m.requests_issued;
    r["requests_failed"] = m.requests_failed;
    TraceRecord hits = TraceRecord::object();
    for (const auto& [level, n] : m.hits_by_level) hits[to_string(level)] = n;
    r["hits_by_level"] = hits;
    r["total_hops"] = m.total_hops;
    r["total_control_messages"] = m.total_control_messages;
    r["total_data_messages"] = m.total_data_messages;
    r["maintenance_messages"] = m.maintenance_messages;
    trace->write(r);
  }
  return m;
}

}  // namespace coopcache
