#include <vector>

#include "doctest.h"
#include "proxy6/protocol.hpp"

using namespace proxy6;
using namespace proxy6::addr;
using namespace proxy6::proto;

TEST_CASE("select_proxy picks the lowest configured neighbor") {
  std::vector<NeighborInfo> nbrs{{7, false}, {3, true}, {9, true}};
  CHECK(select_proxy(nbrs) == 3);

  std::vector<NeighborInfo> none{{7, false}, {3, false}};
  CHECK_FALSE(select_proxy(none).has_value());

  CHECK_FALSE(select_proxy({}).has_value());
}

TEST_CASE("a configured controller serves consecutive requests from its ranges") {
  NodeState ctl;
  configure_controller(ctl, default_prefix());
  CHECK(ctl.role == NodeRole::LocalController);
  REQUIRE(ctl.configured());
  CHECK(to_dotted_decimal(ctl.address->id) == "0.0.0.0.0.0.0.1");

  auto r1 = serve_request(ctl);
  REQUIRE(r1.assigned.has_value());
  CHECK(to_dotted_decimal(r1.assigned->id) == "1.0.0.0.0.0.0.1");
  auto r2 = serve_request(ctl);
  REQUIRE(r2.assigned.has_value());
  CHECK(to_dotted_decimal(r2.assigned->id) == "2.0.0.0.0.0.0.1");
  CHECK(ctl.alloc.count == 2);
}

TEST_CASE("an exhausted controller denies instead of escalating") {
  NodeState ctl;
  configure_controller(ctl, default_prefix());
  ctl.alloc = AllocationState{255, 255};
  auto r = serve_request(ctl);
  CHECK(r.deny);
  CHECK_FALSE(r.assigned.has_value());
  CHECK_FALSE(r.escalate_to.has_value());
}

TEST_CASE("an exhausted device escalates to the node that issued its address") {
  NodeState dev;
  CHECK(accept_assignment(dev,
                          Ipv6Address{default_prefix(),
                                      identifier_from_dotted("3.7.0.0.0.0.0.2")}));
  dev.alloc = AllocationState{255, 1};
  auto r = serve_request(dev);
  REQUIRE(r.escalate_to.has_value());
  CHECK(*r.escalate_to == identifier_from_dotted("3.0.0.0.0.0.0.2"));
  CHECK_FALSE(r.deny);

  // A leaf has no range of its own at all, so it escalates immediately.
  NodeState leaf;
  CHECK(accept_assignment(leaf,
                          Ipv6Address{default_prefix(),
                                      identifier_from_dotted("1.2.3.4.5.6.7.9")}));
  auto rl = serve_request(leaf);
  REQUIRE(rl.escalate_to.has_value());
  CHECK(*rl.escalate_to == identifier_from_dotted("1.2.3.4.5.6.0.9"));
}

TEST_CASE("duplicate assignment replies leave the first assignment in place") {
  NodeState dev;
  const Ipv6Address first{default_prefix(), identifier_from_dotted("1.0.0.0.0.0.0.1")};
  const Ipv6Address second{default_prefix(), identifier_from_dotted("2.0.0.0.0.0.0.1")};
  CHECK(accept_assignment(dev, first));
  CHECK_FALSE(accept_assignment(dev, second));
  CHECK(dev.address == first);
  CHECK(dev.role == NodeRole::ConfiguredDevice);
}

TEST_CASE("an unconfigured node refuses to serve") {
  NodeState dev;
  auto r = serve_request(dev);
  CHECK(r.deny);
}
