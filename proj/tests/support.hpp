#pragma once

#include <vector>

#include "coopcache/engine.hpp"

namespace coopcache::testing {

inline NodeId N(std::uint32_t v) { return NodeId{v}; }
inline DataId D(std::uint32_t v) { return DataId{v}; }

/// A config for hand-built worlds: nothing moves, nothing is requested
/// unless the test asks.
SimConfig still_config(std::size_t nodes, Position server, double width, double height,
                       double range = 100.0);

/// An engine bootstrapped at fixed positions with mobility and workload off.
Engine still_engine(const SimConfig& cfg, const std::vector<Position>& positions,
                    InitOptions options = {}, TraceSink* trace = nullptr);

/// Puts `item` into n's cache as if it had just been fetched, keeping the
/// head's table and n's own PreReq entry in step.
void give(World& w, NodeId n, DataItem item);
void give(World& w, NodeId n, DataId d, Tick ttl);

/// Re-reports n's cache to whichever head tracks it.
void resync(World& w, NodeId n);

/// A small random world of at most 12 nodes (server included), warmed up
/// by a short run, then disturbed so some hints and copies are stale.
World random_snapshot(std::uint64_t seed);

}  // namespace coopcache::testing
