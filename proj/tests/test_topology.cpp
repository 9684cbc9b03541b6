#include <doctest.h>

#include <cmath>
#include <deque>

#include "coopcache/rng.hpp"
#include "coopcache/topology.hpp"
#include "support.hpp"

using namespace coopcache;
using namespace coopcache::testing;

namespace {

TopologySnapshot snap_of(const std::vector<Position>& pts, double r = 100.0) {
  std::map<NodeId, Position> m;
  for (std::size_t i = 0; i < pts.size(); ++i) m[N(static_cast<std::uint32_t>(i))] = pts[i];
  return TopologySnapshot(m, r, N(1000));
}

}  // namespace

TEST_CASE("grid_size") {
  CHECK(std::abs(grid_size(100) - 70.71068) < 1e-4);
  CHECK(grid_size(std::sqrt(2.0)) == doctest::Approx(1.0));
  CHECK(std::abs(grid_size(250) - 176.7767) < 1e-3);
}

TEST_CASE("cluster_of is lower-inclusive") {
  CHECK(cluster_of({0, 0}, 70.71) == ClusterId{0, 0});
  CHECK(cluster_of({70.71, 0}, 70.71) == ClusterId{1, 0});
  CHECK(cluster_of({70.70, 141.42}, 70.71) == ClusterId{0, 2});
  CHECK(cluster_of({-0.1, 0}, 70.71) == ClusterId{-1, 0});
}

TEST_CASE("same cell implies one hop") {
  RngStream rng(3, 0);
  const double r = 100;
  const double g = grid_size(r);
  for (int i = 0; i < 5000; ++i) {
    const double cx = std::floor(rng.uniform(-10, 10)) * g;
    const double cy = std::floor(rng.uniform(-10, 10)) * g;
    const Position a{cx + rng.uniform(0, g), cy + rng.uniform(0, g)};
    const Position b{cx + rng.uniform(0, g), cy + rng.uniform(0, g)};
    if (cluster_of(a, g) != cluster_of(b, g)) continue;
    CHECK(distance(a, b) <= r);
  }
}

TEST_CASE("neighbors") {
  CHECK(neighbors(N(0), snap_of({{0, 0}})).empty());

  const auto pair = snap_of({{0, 0}, {100, 0}});
  CHECK(neighbors(N(0), pair) == std::set<NodeId>{N(1)});
  CHECK(neighbors(N(1), pair) == std::set<NodeId>{N(0)});

  const auto line = snap_of({{0, 0}, {100, 0}, {200, 0}});
  CHECK(neighbors(N(1), line).size() == 2);
  CHECK(neighbors(N(0), line).size() == 1);
  CHECK(neighbors(N(2), line).size() == 1);

  CHECK_THROWS_AS(neighbors(N(7), line), UnknownNode);
}

TEST_CASE("shortest_path") {
  const auto line = snap_of({{0, 0}, {100, 0}, {200, 0}});
  CHECK(*shortest_path(N(0), N(0), line) == std::vector<NodeId>{N(0)});
  CHECK(*hop_distance(N(0), N(0), line) == 0);
  CHECK(*shortest_path(N(0), N(2), line) == std::vector<NodeId>{N(0), N(1), N(2)});

  const auto split = snap_of({{0, 0}, {50, 0}, {500, 0}, {550, 0}});
  CHECK_FALSE(shortest_path(N(0), N(3), split).has_value());
  CHECK_FALSE(hop_distance(N(1), N(2), split).has_value());

  // two equal-length routes: the smaller relay id wins
  const auto diamond = snap_of({{0, 0}, {90, 40}, {90, -40}, {180, 0}});
  CHECK(*shortest_path(N(0), N(3), diamond) == std::vector<NodeId>{N(0), N(1), N(3)});
}

TEST_CASE("neighbors symmetric, irreflexive; path length equals BFS distance") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RngStream rng(seed, 11);
    std::vector<Position> pts;
    const auto n = rng.uniform_int(2, 25);
    for (std::int64_t i = 0; i < n; ++i) pts.push_back({rng.uniform(0, 400), rng.uniform(0, 400)});
    const auto snap = snap_of(pts);

    for (std::int64_t a = 0; a < n; ++a) {
      const auto na = neighbors(N(static_cast<std::uint32_t>(a)), snap);
      CHECK_FALSE(na.contains(N(static_cast<std::uint32_t>(a))));
      for (NodeId b : na) CHECK(neighbors(b, snap).contains(N(static_cast<std::uint32_t>(a))));
    }

    // independent BFS over the raw distance matrix
    for (std::int64_t s = 0; s < n; ++s) {
      std::vector<int> dist(static_cast<std::size_t>(n), -1);
      std::deque<std::int64_t> q{s};
      dist[static_cast<std::size_t>(s)] = 0;
      while (!q.empty()) {
        const auto u = q.front();
        q.pop_front();
        for (std::int64_t v = 0; v < n; ++v)
          if (v != u && dist[static_cast<std::size_t>(v)] < 0 &&
              distance(pts[static_cast<std::size_t>(u)], pts[static_cast<std::size_t>(v)]) <= 100) {
            dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
            q.push_back(v);
          }
      }
      for (std::int64_t t = 0; t < n; ++t) {
        const auto p = shortest_path(N(static_cast<std::uint32_t>(s)), N(static_cast<std::uint32_t>(t)), snap);
        if (dist[static_cast<std::size_t>(t)] < 0) {
          CHECK_FALSE(p.has_value());
          continue;
        }
        REQUIRE(p.has_value());
        CHECK(static_cast<int>(p->size()) - 1 == dist[static_cast<std::size_t>(t)]);
        for (std::size_t i = 1; i < p->size(); ++i)
          CHECK(distance(snap.position((*p)[i - 1]), snap.position((*p)[i])) <= 100);
      }
    }
  }
}
