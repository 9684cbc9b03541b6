#include <doctest.h>

#include <algorithm>

#include "coopcache/discovery.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace coopcache;
using namespace coopcache::testing;

namespace {

// Nodes 0..5 at x = 0, 90, ..., 450 on y = 10, the server one more step
// along at x = 540; every node sits alone in its cell.
Engine line_engine(std::vector<Position> extra = {}, Position server = {540, 10}) {
  std::vector<Position> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({90.0 * i, 10});
  pts.insert(pts.end(), extra.begin(), extra.end());
  return still_engine(still_config(pts.size(), server, 600, 200), pts);
}

int count_kind(const RequestOutcome& o, MessageKind k) {
  return static_cast<int>(std::count_if(o.messages.begin(), o.messages.end(),
                                        [&](const MessageHop& h) { return h.kind == k; }));
}

}  // namespace

TEST_CASE("account_messages") {
  CHECK(account_messages({}) == std::pair{0, 0});
  const std::vector<MessageHop> one{{N(0), N(1), MessageKind::Request},
                                    {N(1), N(0), MessageKind::Data}};
  CHECK(account_messages(one) == std::pair{1, 1});
}

TEST_CASE("resolve_nc") {
  SUBCASE("local copy") {
    Engine e = line_engine();
    give(e.world(), N(0), D(1), 100);
    const auto o = resolve_nc(N(0), D(1), e.world());
    CHECK(o.served_by == Level::LocalCache);
    CHECK(o.hops_traveled == 0);
  }
  SUBCASE("an up-path copy is ignored") {
    Engine e = line_engine();
    give(e.world(), N(2), D(1), 100);
    const auto o = resolve_nc(N(0), D(1), e.world());
    CHECK(o.served_by == Level::Server);
    CHECK(o.control_messages == 6);
    CHECK(o.data_messages == 6);
    CHECK(o.hops_traveled == 12);
    CHECK(e.world().node(N(0)).cache.holds_valid(D(1), e.world().now));
  }
  SUBCASE("server out of reach") {
    Engine e = line_engine({}, {599, 190});
    CHECK(resolve_nc(N(0), D(1), e.world()).served_by == Level::Failed);
  }
}

TEST_CASE("resolve_hop_by_hop") {
  SUBCASE("an up-path copy answers early") {
    Engine e = line_engine();
    give(e.world(), N(2), D(1), 100);
    World nc_world = e.world();
    const auto o = resolve_hop_by_hop(N(0), D(1), e.world());
    CHECK(o.served_by == Level::RoutingPathLocal);
    CHECK(o.serving_node == N(2));
    CHECK(o.hops_traveled == 4);
    CHECK(o.hops_traveled < resolve_nc(N(0), D(1), nc_world).hops_traveled);
  }
  SUBCASE("an off-path neighbor is not asked") {
    Engine e = line_engine({{0, 100}});
    give(e.world(), N(6), D(1), 100);
    CHECK(resolve_hop_by_hop(N(0), D(1), e.world()).served_by == Level::Server);
  }
  SUBCASE("no copy anywhere") {
    Engine e = line_engine();
    CHECK(resolve_hop_by_hop(N(0), D(1), e.world()).served_by == Level::Server);
  }
  SUBCASE("one-hop neighbor") {
    Engine e = line_engine();
    give(e.world(), N(1), D(1), 100);
    const auto o = resolve_hop_by_hop(N(0), D(1), e.world());
    CHECK(o.control_messages == 1);
    CHECK(o.data_messages == 1);
  }
}

TEST_CASE("resolve_hybrid levels") {
  SUBCASE("local copy matches NC") {
    Engine e = line_engine();
    give(e.world(), N(0), D(1), 100);
    World copy = e.world();
    const auto h = resolve_hybrid(N(0), D(1), e.world());
    const auto n = resolve_nc(N(0), D(1), copy);
    CHECK(h.served_by == n.served_by);
    CHECK(h.hops_traveled == n.hops_traveled);
  }
  SUBCASE("own history names a 2-hop holder") {
    Engine e = line_engine();
    World& w = e.world();
    give(w, N(2), D(1), 100);
    w.node(N(0)).prereq.record(D(1), Holder{N(2), 2}, w.now);
    const auto o = resolve_hybrid(N(0), D(1), w);
    CHECK(o.served_by == Level::PreReq);
    CHECK(o.serving_node == N(2));
    CHECK(o.hops_traveled == 4);
    CHECK(count_kind(o, MessageKind::Confirm) == 2);
    CHECK(o.data_messages == 2);
  }
  SUBCASE("up-path copy") {
    Engine e = line_engine();
    give(e.world(), N(2), D(1), 100);
    const auto o = resolve_hybrid(N(0), D(1), e.world());
    CHECK(o.served_by == Level::RoutingPathLocal);
    CHECK(o.hops_traveled == 4);
  }
  SUBCASE("a relay's history points off the path") {
    Engine e = line_engine({{90, 100}});
    World& w = e.world();
    give(w, N(6), D(1), 100);
    w.node(N(1)).prereq.record(D(1), Holder{N(6), 1}, w.now);
    const auto o = resolve_hybrid(N(0), D(1), w);
    CHECK(o.served_by == Level::RoutingPathPreReq);
    CHECK(o.serving_node == N(6));
    CHECK(o.control_messages == 4);
    CHECK(o.data_messages == 2);
  }
  SUBCASE("a relay's cluster holds a copy") {
    Engine e = line_engine({{130, 60}});
    World& w = e.world();
    REQUIRE(w.node(N(1)).role == Role::Head);
    REQUIRE(w.node(N(6)).head == N(1));
    give(w, N(6), D(1), 100);
    const auto o = resolve_hybrid(N(0), D(1), w);
    CHECK(o.served_by == Level::RoutingPathCluster);
    CHECK(o.serving_node == N(6));
    CHECK(o.control_messages == 4);
    CHECK(o.data_messages == 2);
  }
  SUBCASE("home cluster") {
    Engine e = line_engine({{20, 50}});
    World& w = e.world();
    REQUIRE(w.node(N(0)).role == Role::Head);
    give(w, N(6), D(1), 100);
    const auto o = resolve_hybrid(N(0), D(1), w);
    CHECK(o.served_by == Level::HomeCluster);
    CHECK(o.serving_node == N(6));
    CHECK(o.hops_traveled == 2);  // the head is the requester: no lookup message
  }
}

TEST_CASE("head consultation miss, then a 3-hop server fetch") {
  // node 0 heads the cell of requester 1; relays 2 and 3 are alone in theirs
  Engine e = still_engine(still_config(4, {280, 10}, 400, 100),
                          {{10, 60}, {10, 10}, {100, 10}, {190, 10}});
  World& w = e.world();
  REQUIRE(w.node(N(1)).head == N(0));
  const auto o = resolve_hybrid(N(1), D(1), w);
  CHECK(o.served_by == Level::Server);
  CHECK(count_kind(o, MessageKind::Lookup) == 1);
  CHECK(count_kind(o, MessageKind::Ack) == 1);
  CHECK(count_kind(o, MessageKind::Request) == 3);
  CHECK(o.control_messages == 5);
  CHECK(o.data_messages == 3);
}

TEST_CASE("a failed history fetch invalidates exactly that holder") {
  Engine e = line_engine();
  World& w = e.world();
  give(w, N(4), D(1), 100);
  w.node(N(0)).prereq.record(D(1), Holder{N(2), 2}, w.now);  // stale: 2 has nothing
  w.node(N(0)).prereq.record(D(1), Holder{N(4), 4}, w.now);
  MemoryTrace trace;
  const auto o = resolve_hybrid(N(0), D(1), w, &trace);
  CHECK(count_kind(o, MessageKind::Nack) == 2);
  const auto held = w.node(N(0)).prereq.lookup(D(1), w.now);
  CHECK(std::none_of(held.begin(), held.end(), [](const Holder& h) { return h.node == N(2); }));
  CHECK(std::any_of(held.begin(), held.end(), [](const Holder& h) { return h.node == N(4); }));
  const bool traced = std::any_of(trace.records.begin(), trace.records.end(), [](const auto& r) {
    return r["event"] == "prereq" && r["op"] == "invalidate";
  });
  CHECK(traced);
}

TEST_CASE("cold caches: Hybrid costs NC plus the head consultations") {
  SimConfig cfg;
  cfg.seed = 5;
  Engine e(cfg);
  for (const auto& [id, n] : e.world().nodes) {
    World a = e.world();
    World b = e.world();
    const auto h = resolve_hybrid(id, D(3), a);
    const auto n_out = resolve_nc(id, D(3), b);
    CHECK(h.served_by == n_out.served_by);
    if (!h.succeeded()) continue;
    const int consult = count_kind(h, MessageKind::Lookup) + count_kind(h, MessageKind::Ack);
    CHECK(h.hops_traveled == n_out.hops_traveled + consult);
    CHECK(h.data_messages == n_out.data_messages);
  }
}

TEST_CASE("properties over random frozen worlds") {
  for (std::uint64_t seed = 100; seed < 300; ++seed) {
    const World base = random_snapshot(seed);
    RngStream pick(seed, 77);
    std::vector<NodeId> live;
    for (const auto& [id, n] : base.nodes)
      if (n.alive) live.push_back(id);
    const NodeId req = live[static_cast<std::size_t>(pick.uniform_int(0, static_cast<std::int64_t>(live.size()) - 1))];
    const DataId d{static_cast<std::uint32_t>(pick.uniform_int(0, static_cast<std::int64_t>(base.catalog.size()) - 1))};

    World nc = base, hbh = base, hyb = base;
    const auto o_nc = resolve_nc(req, d, nc);
    const auto o_hbh = resolve_hop_by_hop(req, d, hbh);
    const auto o_hyb = resolve_hybrid(req, d, hyb);
    CAPTURE(seed);

    CHECK(o_hbh.hops_traveled <= o_nc.hops_traveled);

    const Oracle oracle(base, 100.0);
    const auto p = oracle.predict_hybrid(req, d);
    CHECK(o_hyb.served_by == p.level);
    CHECK(o_hyb.serving_node == p.node);

    for (const auto* o : {&o_nc, &o_hbh, &o_hyb}) {
      CHECK(o->hops_traveled == o->control_messages + o->data_messages);
      if (!o->succeeded() || *o->serving_node == base.server) continue;
      // never served from an expired copy
      CHECK(base.node(*o->serving_node).cache.holds_valid(d, base.now));
    }
  }
}
