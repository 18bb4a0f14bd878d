#include <set>

#include "doctest.h"
#include "proxy6/baselines.hpp"

using namespace proxy6;
using namespace proxy6::addr;
using namespace proxy6::baseline;

TEST_CASE("tentative draws are deterministic per seed and bounded by the space") {
  Rng a(99), b(99);
  DadConfig cfg{1024, 5};
  for (int i = 0; i < 100; ++i) {
    const DeviceIdentifier x = draw_tentative(a, cfg);
    const DeviceIdentifier y = draw_tentative(b, cfg);
    CHECK(x == y);
    CHECK(x.to_u64() >= 1);
    CHECK(x.to_u64() <= 1024);
  }
}

TEST_CASE("a small space collides quickly and the full space rarely") {
  Rng rng(7);
  DadConfig tiny{8, 5};
  std::set<uint64_t> seen;
  bool collided = false;
  for (int i = 0; i < 64 && !collided; ++i)
    collided = !seen.insert(draw_tentative(rng, tiny).to_u64()).second;
  CHECK(collided);

  DadConfig full{0, 5};
  std::set<uint64_t> wide;
  for (int i = 0; i < 1000; ++i)
    CHECK(wide.insert(draw_tentative(rng, full).to_u64()).second);
}

TEST_CASE("the lease server hands out sequential identifiers") {
  DhcpServerState srv;
  auto a = srv.assign(10);
  auto b = srv.assign(11);
  auto c = srv.assign(12);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  REQUIRE(c.has_value());
  CHECK(to_dotted_decimal(*a) == "0.0.0.0.0.0.0.1");
  CHECK(to_dotted_decimal(*b) == "0.0.0.0.0.0.0.2");
  CHECK(to_dotted_decimal(*c) == "0.0.0.0.0.0.0.3");
  CHECK(srv.table.size() == 3);
  CHECK(srv.table.at(2) == 11);
}

TEST_CASE("the lease server refuses once its pool is spent") {
  DhcpServerState srv;
  srv.pool = 2;
  CHECK(srv.assign(1).has_value());
  CHECK(srv.assign(2).has_value());
  CHECK_FALSE(srv.assign(3).has_value());
  CHECK_FALSE(srv.assign(4).has_value());
  CHECK(srv.table.size() == 2);
}
