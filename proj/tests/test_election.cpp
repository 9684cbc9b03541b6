#include <doctest.h>

#include <algorithm>

#include "coopcache/election.hpp"
#include "coopcache/rng.hpp"
#include "support.hpp"
#include "worked_election.hpp"

using namespace coopcache;
using namespace coopcache::testing;

namespace {

// Written out term by term, independently of combined_weight.
double hand_weight(const NodeMetrics& x, const Weights& w) {
  return 1.0 / (w.w1 * x.cs) + w.w2 * x.d + w.w3 * x.m + w.w4 * x.bp + 1.0 / (w.w5 * x.p);
}

TopologySnapshot snap_of(std::map<NodeId, Position> pts) {
  return TopologySnapshot(std::move(pts), 100.0, N(1000));
}

}  // namespace

TEST_CASE("sum_neighbor_distances") {
  CHECK(sum_neighbor_distances(N(0), snap_of({{N(0), {10, 10}}})) == 0.0);

  const auto pair = snap_of({{N(0), {10, 10}}, {N(1), {14, 10}}});
  CHECK(sum_neighbor_distances(N(0), pair) == doctest::Approx(4.0));
  CHECK(sum_neighbor_distances(N(1), pair) == doctest::Approx(4.0));

  // 80 apart, in range, but in the next cell
  const auto split = snap_of({{N(0), {10, 10}}, {N(1), {90, 10}}});
  CHECK(sum_neighbor_distances(N(0), split) == 0.0);
}

TEST_CASE("battery") {
  BatteryCosts costs;
  costs.idle_tick = 1;
  costs.head_tick = 2;
  BatteryMeter fresh(costs);
  CHECK(fresh.consumed() == 0.0);
  BatteryMeter idle(costs), head(costs);
  for (int i = 0; i < 3; ++i) {
    idle.consume(CostClass::IdleTick);
    head.consume(CostClass::HeadTick);
  }
  CHECK(idle.consumed() == 3.0);
  CHECK(head.consumed() == 6.0);
}

TEST_CASE("combined_weight reproduces the worked rows") {
  for (const auto& row : kWorkedElection) {
    const double w = combined_weight(row.metrics, kWorkedWeights);
    CHECK(w == doctest::Approx(hand_weight(row.metrics, kWorkedWeights)));
    CHECK(std::abs(w - row.expected_w) <= 0.02);
  }
}

TEST_CASE("elect_head") {
  CHECK(elect_head(worked_members(), kWorkedWeights).head == N(6));
  CHECK(elect_head({{N(4), {10, 1, 1, 1, 1}}}, kWorkedWeights).head == N(4));
  const NodeMetrics same{30, 5, 1, 2, 3};
  CHECK(elect_head({{N(7), same}, {N(3), same}}, kWorkedWeights).head == N(3));
  CHECK_THROWS(elect_head({}, kWorkedWeights));
}

TEST_CASE("full caches are passed over unless everyone is full") {
  const NodeMetrics full{0, 0, 0, 0, 100};
  const NodeMetrics roomy{5, 50, 5, 50, 1};
  CHECK(elect_head({{N(1), full}, {N(2), roomy}}, kWorkedWeights).head == N(2));
  CHECK(elect_head({{N(1), full}, {N(2), full}}, kWorkedWeights).head == N(1));
}

TEST_CASE("relabeling members relabels the head") {
  RngStream rng(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 10));
    std::vector<NodeMetrics> mx;
    for (std::size_t i = 0; i < n; ++i)
      mx.push_back({rng.uniform(1, 100), rng.uniform(0, 50), rng.uniform(0, 5),
                    rng.uniform(0, 20), rng.uniform(1, 30)});
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);

    std::map<NodeId, NodeMetrics> a, b;
    for (std::size_t i = 0; i < n; ++i) {
      a[N(static_cast<std::uint32_t>(i))] = mx[i];
      b[N(perm[i])] = mx[i];
    }
    const NodeId ha = elect_head(a, kWorkedWeights).head;
    CHECK(elect_head(b, kWorkedWeights).head == N(perm[ha.value]));
  }
}

TEST_CASE("combined_weight is monotone in each input") {
  const NodeMetrics base{20, 10, 2, 5, 8};
  auto w = [](NodeMetrics x) { return combined_weight(x, kWorkedWeights); };
  NodeMetrics more = base;
  more.cs += 1;
  CHECK(w(more) < w(base));
  more = base;
  more.p += 1;
  CHECK(w(more) < w(base));
  more = base;
  more.d += 1;
  CHECK(w(more) > w(base));
  more = base;
  more.m += 1;
  CHECK(w(more) > w(base));
  more = base;
  more.bp += 1;
  CHECK(w(more) > w(base));
}
