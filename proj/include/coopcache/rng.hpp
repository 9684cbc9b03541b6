#pragma once

#include <cstdint>
#include <random>

namespace coopcache {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// A seeded random stream. The conversions to real and integer ranges are
/// spelled out here rather than taken from <random> distributions so that
/// draws are identical across standard library implementations.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x5bd1e995ULL))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi]. Returns lo when hi <= lo.
  double uniform(double lo, double hi) {
    if (hi <= lo) return lo;
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::mt19937_64 engine_;
};

// Stream tags for the seed-derived streams.
inline constexpr std::uint64_t kWorkloadStream = 1;
inline constexpr std::uint64_t kCatalogStream = 2;
inline constexpr std::uint64_t kNodeStreamBase = 0x10000;

}  // namespace coopcache
