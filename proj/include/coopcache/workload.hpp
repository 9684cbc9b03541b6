#pragma once

#include <span>
#include <utility>
#include <vector>

#include "coopcache/config.hpp"
#include "coopcache/rng.hpp"
#include "coopcache/types.hpp"

namespace coopcache {

/// Zipf(s) over ranks 1..n; rank k maps to DataId k-1. s = 0 is uniform.
class ZipfSampler {
 public:
  ZipfSampler(std::int64_t n, double exponent);

  DataId sample(RngStream& rng) const;
  /// Exact normalized mass of DataId `d`.
  double probability(DataId d) const;
  std::int64_t size() const { return static_cast<std::int64_t>(cdf_.size()); }

 private:
  std::vector<double> cdf_;
};

/// Poisson-distributed count with the given mean (Knuth's product method,
/// split into chunks so large means do not underflow).
std::int64_t poisson(double mean, RngStream& rng);

/// Requester uniform over `nodes`, item drawn from `zipf`.
std::pair<NodeId, DataId> draw_request(std::span<const NodeId> nodes, const ZipfSampler& zipf,
                                       RngStream& rng);

/// The server's catalog: sizes and TTLs drawn uniformly from the configured ranges.
std::vector<DataItem> make_catalog(const SimConfig& cfg);

}  // namespace coopcache
