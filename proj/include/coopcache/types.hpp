#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace coopcache {

/// Simulation time in whole ticks. One tick is one mobility step.
using Tick = std::int64_t;

/// Abstract capacity unit shared by cache sizes and data-item sizes.
using Capacity = std::int64_t;

struct NodeId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

struct DataId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(DataId, DataId) = default;
};

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(Position, Position) = default;
};

/// Euclidean distance between two points.
double distance(Position a, Position b);

/// A unit of cacheable content. `ttl` is a duration; a copy fetched from the
/// server lives for `ttl` ticks, a copy passed between peers carries only the
/// remaining lifetime.
struct DataItem {
  DataId id;
  Capacity size = 1;
  Tick ttl = 1;

  friend constexpr bool operator==(const DataItem&, const DataItem&) = default;
};

enum class Policy { NC, HopByHop, Hybrid };

std::string to_string(Policy p);
/// Throws std::invalid_argument on an unknown name.
Policy policy_from_string(const std::string& name);

}  // namespace coopcache

template <>
struct std::hash<coopcache::NodeId> {
  std::size_t operator()(coopcache::NodeId n) const noexcept {
    return std::hash<std::uint32_t>{}(n.value);
  }
};

template <>
struct std::hash<coopcache::DataId> {
  std::size_t operator()(coopcache::DataId d) const noexcept {
    return std::hash<std::uint32_t>{}(d.value);
  }
};
