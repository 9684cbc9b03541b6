#include "support.hpp"

namespace coopcache::testing {

SimConfig still_config(std::size_t nodes, Position server, double width, double height,
                       double range) {
  SimConfig cfg;
  cfg.node_count = static_cast<std::int64_t>(nodes);
  cfg.world_width = width;
  cfg.world_height = height;
  cfg.transmission_range = range;
  cfg.server_position = server;
  cfg.catalog_size = 10;
  cfg.item_size_min = 10;
  cfg.item_size_max = 10;
  cfg.ticks = 0;
  cfg.threshold_ticks = 0;
  return cfg;
}

Engine still_engine(const SimConfig& cfg, const std::vector<Position>& positions,
                    InitOptions options, TraceSink* trace) {
  options.positions = positions;
  Engine e(cfg, trace, std::move(options));
  e.set_mobility_enabled(false);
  e.set_requests_enabled(false);
  return e;
}

void resync(World& w, NodeId n) {
  NodeState& node = w.node(n);
  if (!node.head || !w.is_live(*node.head)) return;
  NodeState& head = w.node(*node.head);
  if (head.head_state) state_table_update(head.head_state->table, n, node.cache.valid_items(w.now));
}

void give(World& w, NodeId n, DataItem item) {
  NodeState& node = w.node(n);
  for (DataId gone : node.cache.insert(item, w.now)) node.prereq.clear_local(gone);
  node.prereq.mark_local(item.id, item.size, w.now + item.ttl, w.now);
  resync(w, n);
}

void give(World& w, NodeId n, DataId d, Tick ttl) {
  DataItem item = w.catalog.at(d.value);
  item.ttl = ttl;
  give(w, n, item);
}

World random_snapshot(std::uint64_t seed) {
  RngStream g(seed, 0xfeed);
  SimConfig cfg;
  cfg.seed = seed;
  cfg.node_count = g.uniform_int(2, 11);
  cfg.world_width = 300;
  cfg.world_height = 300;
  cfg.transmission_range = 100;
  cfg.server_position = {g.uniform(0, 300), g.uniform(0, 300)};
  cfg.catalog_size = 6;
  cfg.cache_capacity = 60;
  cfg.item_size_min = 10;
  cfg.item_size_max = 30;
  cfg.item_ttl_min = 20;
  cfg.item_ttl_max = 60;
  cfg.prereq_capacity = 4;
  cfg.threshold_ticks = g.uniform_int(0, 2);
  cfg.request_rate = 2;
  cfg.min_speed = 1;
  cfg.max_speed = 15;
  cfg.pause_ticks = 2;

  Engine e(cfg);
  const auto warm = g.uniform_int(0, 60);
  for (std::int64_t t = 0; t < warm; ++t) e.step();
  World w = e.world();

  for (auto& [id, n] : w.nodes) {
    if (!n.alive) continue;
    // drop a cached copy so hints pointing here go stale
    if (!n.cache.entries().empty() && g.uniform() < 0.3) {
      const auto victim = std::next(n.cache.entries().begin(),
                                    g.uniform_int(0, static_cast<std::int64_t>(n.cache.entries().size()) - 1))
                              ->first;
      n.cache.erase(victim);
      n.prereq.clear_local(victim);
      resync(w, id);
    }
    // plant a hint naming a random node, which may or may not hold the item
    if (g.uniform() < 0.5) {
      const NodeId holder{static_cast<std::uint32_t>(g.uniform_int(0, cfg.node_count - 1))};
      const DataId d{static_cast<std::uint32_t>(g.uniform_int(0, cfg.catalog_size - 1))};
      n.prereq.record(d, Holder{holder, static_cast<int>(g.uniform_int(1, 5))}, w.now);
    }
  }
  return w;
}

}  // namespace coopcache::testing
