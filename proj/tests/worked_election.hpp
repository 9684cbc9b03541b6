#pragma once

#include <array>

#include "coopcache/election.hpp"

namespace coopcache::testing {

/// Nine-node worked example: (cs, d, m, bp, p) and the expected W_v (two decimals).
struct WorkedRow {
  NodeMetrics metrics;
  double expected_w;
};

inline constexpr std::array<WorkedRow, 9> kWorkedElection{{
    {{52, 11, 2, 3, 15}, 5.02},
    {{42, 13, 2, 2, 10}, 6.24},
    {{62, 12, 3, 6, 9}, 6.45},
    {{47, 10, 4, 7, 14}, 5.22},
    {{24, 12, 1, 4, 13}, 5.51},
    {{53, 8, 2, 5, 18}, 3.99},
    {{68, 13, 0, 4, 19}, 5.18},
    {{71, 14, 3, 2, 20}, 5.62},
    {{38, 14, 1, 3, 8}, 7.00},
}};

inline const Weights kWorkedWeights{0.5, 0.3, 0.1, 0.05, 0.05};

/// MN1..MN9 mapped to NodeIds 1..9.
inline std::map<NodeId, NodeMetrics> worked_members() {
  std::map<NodeId, NodeMetrics> m;
  for (std::size_t i = 0; i < kWorkedElection.size(); ++i)
    m[NodeId{static_cast<std::uint32_t>(i + 1)}] = kWorkedElection[i].metrics;
  return m;
}

}  // namespace coopcache::testing
