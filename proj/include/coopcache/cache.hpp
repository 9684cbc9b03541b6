#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coopcache/types.hpp"

namespace coopcache {

struct CacheEntry {
  DataItem item;
  Tick cached_at = 0;
  Tick expires_at = 0;
  Tick last_access = 0;

  bool valid_at(Tick now) const { return now < expires_at; }

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

/// Thrown by LocalCache::insert when an item can never fit.
class OversizeItem : public std::invalid_argument {
 public:
  OversizeItem(DataId id, Capacity size, Capacity capacity);
};

/// Capacity-bounded per-node cache. Entries are valid strictly before their
/// expiry tick. Replacement evicts expired entries first, then the least
/// recently accessed.
class LocalCache {
 public:
  LocalCache() = default;
  explicit LocalCache(Capacity capacity) : capacity_(capacity) {}

  Capacity capacity() const { return capacity_; }
  /// Sum of the sizes of every stored entry, expired or not.
  Capacity used() const { return used_; }
  const std::map<DataId, CacheEntry>& entries() const { return entries_; }

  /// Returns the item when a valid copy is held, refreshing its access time.
  std::optional<DataItem> lookup(DataId d, Tick now);
  /// Read-only validity check; does not touch recency.
  bool holds_valid(DataId d, Tick now) const;
  const CacheEntry* find(DataId d) const;

  /// Stores `item` for item.ttl ticks from `now`, replacing any older copy.
  /// Returns the ids evicted to make room, in eviction order.
  /// Throws OversizeItem (cache unchanged) when item.size > capacity.
  std::vector<DataId> insert(const DataItem& item, Tick now);

  bool erase(DataId d);

  /// capacity minus the sizes of valid entries; expired space counts as free.
  Capacity free_capacity(Tick now) const;

  /// (id, expiry) for every valid entry, ascending id.
  std::vector<std::pair<DataId, Tick>> valid_items(Tick now) const;

  friend bool operator==(const LocalCache&, const LocalCache&) = default;

 private:
  Capacity capacity_ = 0;
  Capacity used_ = 0;
  std::map<DataId, CacheEntry> entries_;
};

}  // namespace coopcache
