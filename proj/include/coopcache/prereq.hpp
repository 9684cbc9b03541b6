#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coopcache/types.hpp"

namespace coopcache {

/// A node believed to cache an item, with the hop distance observed when the
/// hint was recorded.
struct Holder {
  NodeId node;
  int hops = 1;

  friend constexpr bool operator==(Holder, Holder) = default;
};

/// One record of the historical request table.
struct PreReqEntry {
  DataId data_id;
  /// Size of the local copy when this node caches the item itself.
  std::optional<Capacity> locally_cached;
  std::vector<Holder> cached_nodes;
  /// Requests for this item observed while this node held a copy.
  std::uint64_t popularity = 0;
  /// Expiry deadline of the item as last learned; absent when unknown.
  std::optional<Tick> ttl;
  Tick recorded_at = 0;

  friend bool operator==(const PreReqEntry&, const PreReqEntry&) = default;
};

/// Bounded history of observed requests. When full, a new item overwrites the
/// oldest-inserted record. Updating an existing record keeps its age.
class PreReqTable {
 public:
  PreReqTable() = default;
  explicit PreReqTable(std::size_t capacity) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  /// Oldest first.
  const std::vector<PreReqEntry>& entries() const { return entries_; }
  const PreReqEntry* find(DataId d) const;

  /// Creates or updates the record for `data_id`, merging `holder` into the
  /// cached-node list (a re-listed node takes the new hop count).
  void record(DataId data_id, std::optional<Holder> holder, Tick now);

  /// Counts an observed request for an item this node caches.
  void bump_popularity(DataId data_id, Tick now);

  /// Marks the item as cached here with the given size and expiry.
  void mark_local(DataId data_id, Capacity size, Tick expires_at, Tick now);
  /// Clears the locally-cached field; drops the record if nothing remains.
  void clear_local(DataId data_id);

  /// Hinted holders of `d`; empty when absent or when the record's ttl has passed.
  std::vector<Holder> lookup(DataId d, Tick now) const;

  /// Forgets `holder` for `d`. Removes the record when no holder is left and
  /// the item is not cached locally.
  void invalidate(DataId d, NodeId holder);

  /// Sum of popularity counts, used as P_v in the election.
  std::uint64_t total_popularity() const;

  friend bool operator==(const PreReqTable&, const PreReqTable&) = default;

 private:
  PreReqEntry& touch(DataId data_id, Tick now);

  std::size_t capacity_ = 0;
  std::vector<PreReqEntry> entries_;
};

/// Picks the closest source for a request. Returns the chosen holder, or
/// nullopt when the data server should be used instead. A candidate wins ties
/// with the server; candidates tie-break by smaller id.
std::optional<Holder> prereq_choose_target(const std::vector<Holder>& candidates,
                                           std::optional<int> server_hops);

}  // namespace coopcache
