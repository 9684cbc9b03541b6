#include "coopcache/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coopcache {

ZipfSampler::ZipfSampler(std::int64_t n, double exponent) {
  if (n < 1) throw std::invalid_argument("ZipfSampler: catalog must be non-empty");
  cdf_.resize(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    acc += 1.0 / std::pow(static_cast<double>(k), exponent);
    cdf_[static_cast<std::size_t>(k - 1)] = acc;
  }
  for (double& c : cdf_) c /= acc;
  cdf_.back() = 1.0;
}

DataId ZipfSampler::sample(RngStream& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return DataId{static_cast<std::uint32_t>(it - cdf_.begin())};
}

double ZipfSampler::probability(DataId d) const {
  const auto i = static_cast<std::size_t>(d.value);
  if (i >= cdf_.size()) return 0.0;
  return i == 0 ? cdf_[0] : cdf_[i] - cdf_[i - 1];
}

std::int64_t poisson(double mean, RngStream& rng) {
  if (mean <= 0) return 0;
  std::int64_t count = 0;
  double remaining = mean;
  while (remaining > 0) {
    const double chunk = std::min(remaining, 30.0);
    remaining -= chunk;
    const double limit = std::exp(-chunk);
    double prod = rng.uniform();
    while (prod > limit) {
      ++count;
      prod *= rng.uniform();
    }
  }
  return count;
}

std::pair<NodeId, DataId> draw_request(std::span<const NodeId> nodes, const ZipfSampler& zipf,
                                       RngStream& rng) {
  if (nodes.empty()) throw std::invalid_argument("draw_request: no live nodes");
  const auto idx = rng.uniform_int(0, static_cast<std::int64_t>(nodes.size()) - 1);
  const NodeId requester = nodes[static_cast<std::size_t>(idx)];
  return {requester, zipf.sample(rng)};
}

std::vector<DataItem> make_catalog(const SimConfig& cfg) {
  RngStream rng(cfg.seed, kCatalogStream);
  std::vector<DataItem> catalog;
  catalog.reserve(static_cast<std::size_t>(cfg.catalog_size));
  for (std::int64_t i = 0; i < cfg.catalog_size; ++i) {
    DataItem item;
    item.id = DataId{static_cast<std::uint32_t>(i)};
    item.size = rng.uniform_int(cfg.item_size_min, cfg.item_size_max);
    item.ttl = rng.uniform_int(cfg.item_ttl_min, cfg.item_ttl_max);
    catalog.push_back(item);
  }
  return catalog;
}

}  // namespace coopcache
