#include "coopcache/prereq.hpp"

#include <algorithm>

namespace coopcache {

const PreReqEntry* PreReqTable::find(DataId d) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [d](const PreReqEntry& e) { return e.data_id == d; });
  return it == entries_.end() ? nullptr : &*it;
}

PreReqEntry& PreReqTable::touch(DataId data_id, Tick now) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [data_id](const PreReqEntry& e) { return e.data_id == data_id; });
  if (it != entries_.end()) {
    it->recorded_at = now;
    return *it;
  }
  if (capacity_ > 0 && entries_.size() >= capacity_) entries_.erase(entries_.begin());
  PreReqEntry e;
  e.data_id = data_id;
  e.recorded_at = now;
  entries_.push_back(std::move(e));
  return entries_.back();
}

void PreReqTable::record(DataId data_id, std::optional<Holder> holder, Tick now) {
  PreReqEntry& e = touch(data_id, now);
  if (!holder) return;
  auto it = std::find_if(e.cached_nodes.begin(), e.cached_nodes.end(),
                         [&](const Holder& h) { return h.node == holder->node; });
  if (it != e.cached_nodes.end())
    it->hops = holder->hops;
  else
    e.cached_nodes.push_back(*holder);
}

void PreReqTable::bump_popularity(DataId data_id, Tick now) { touch(data_id, now).popularity += 1; }

void PreReqTable::mark_local(DataId data_id, Capacity size, Tick expires_at, Tick now) {
  PreReqEntry& e = touch(data_id, now);
  e.locally_cached = size;
  e.ttl = expires_at;
}

void PreReqTable::clear_local(DataId data_id) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [data_id](const PreReqEntry& e) { return e.data_id == data_id; });
  if (it == entries_.end()) return;
  it->locally_cached.reset();
  it->ttl.reset();
  if (it->cached_nodes.empty()) entries_.erase(it);
}

std::vector<Holder> PreReqTable::lookup(DataId d, Tick now) const {
  const PreReqEntry* e = find(d);
  if (e == nullptr) return {};
  if (e->ttl && *e->ttl <= now) return {};
  return e->cached_nodes;
}

void PreReqTable::invalidate(DataId d, NodeId holder) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [d](const PreReqEntry& e) { return e.data_id == d; });
  if (it == entries_.end()) return;
  std::erase_if(it->cached_nodes, [holder](const Holder& h) { return h.node == holder; });
  if (it->cached_nodes.empty() && !it->locally_cached) entries_.erase(it);
}

std::uint64_t PreReqTable::total_popularity() const {
  std::uint64_t sum = 0;
  for (const auto& e : entries_) sum += e.popularity;
  return sum;
}

std::optional<Holder> prereq_choose_target(const std::vector<Holder>& candidates,
                                           std::optional<int> server_hops) {
  std::optional<Holder> best;
  for (const Holder& h : candidates) {
    if (!best || h.hops < best->hops || (h.hops == best->hops && h.node < best->node)) best = h;
  }
  if (!best) return std::nullopt;
  if (server_hops && *server_hops < best->hops) return std::nullopt;
  return best;
}

}  // namespace coopcache
