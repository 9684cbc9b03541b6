#include "coopcache/cache.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace coopcache {

OversizeItem::OversizeItem(DataId id, Capacity size, Capacity capacity)
    : std::invalid_argument("item " + std::to_string(id.value) + " of size " +
                            std::to_string(size) + " exceeds cache capacity " +
                            std::to_string(capacity)) {}

std::optional<DataItem> LocalCache::lookup(DataId d, Tick now) {
  auto it = entries_.find(d);
  if (it == entries_.end() || !it->second.valid_at(now)) return std::nullopt;
  it->second.last_access = std::max(it->second.last_access, now);
  return it->second.item;
}

bool LocalCache::holds_valid(DataId d, Tick now) const {
  auto it = entries_.find(d);
  return it != entries_.end() && it->second.valid_at(now);
}

const CacheEntry* LocalCache::find(DataId d) const {
  auto it = entries_.find(d);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<DataId> LocalCache::insert(const DataItem& item, Tick now) {
  if (item.size > capacity_) throw OversizeItem(item.id, item.size, capacity_);

  erase(item.id);

  std::vector<DataId> evicted;
  if (used_ + item.size > capacity_) {
    // Victim order: expired entries first (earliest expiry first), then valid
    // entries by least recent access.
    std::vector<const CacheEntry*> order;
    order.reserve(entries_.size());
    for (const auto& [_, e] : entries_) order.push_back(&e);
    std::sort(order.begin(), order.end(), [now](const CacheEntry* a, const CacheEntry* b) {
      const bool a_live = a->valid_at(now);
      const bool b_live = b->valid_at(now);
      if (a_live != b_live) return !a_live;
      if (!a_live) return std::tie(a->expires_at, a->item.id) < std::tie(b->expires_at, b->item.id);
      return std::tie(a->last_access, a->cached_at, a->item.id) <
             std::tie(b->last_access, b->cached_at, b->item.id);
    });
    std::vector<DataId> victims;
    Capacity used = used_;
    for (const CacheEntry* e : order) {
      if (used + item.size <= capacity_) break;
      used -= e->item.size;
      victims.push_back(e->item.id);
    }
    for (DataId v : victims) erase(v);
    evicted = std::move(victims);
  }

  entries_[item.id] = CacheEntry{item, now, now + item.ttl, now};
  used_ += item.size;
  return evicted;
}

bool LocalCache::erase(DataId d) {
  auto it = entries_.find(d);
  if (it == entries_.end()) return false;
  used_ -= it->second.item.size;
  entries_.erase(it);
  return true;
}

Capacity LocalCache::free_capacity(Tick now) const {
  Capacity live = 0;
  for (const auto& [_, e] : entries_)
    if (e.valid_at(now)) live += e.item.size;
  return capacity_ - live;
}

std::vector<std::pair<DataId, Tick>> LocalCache::valid_items(Tick now) const {
  std::vector<std::pair<DataId, Tick>> out;
  for (const auto& [id, e] : entries_)
    if (e.valid_at(now)) out.emplace_back(id, e.expires_at);
  return out;
}

}  // namespace coopcache
