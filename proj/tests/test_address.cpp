#include <array>
#include <cstdint>
#include <string>

#include "doctest.h"
#include "proxy6/address.hpp"
#include "proxy6/rng.hpp"

using namespace proxy6;
using namespace proxy6::addr;

namespace {

Ipv6Address addr_from_groups(const std::array<unsigned, 8>& g) {
  std::array<uint8_t, 16> by{};
  for (int i = 0; i < 8; ++i) {
    by[2 * i] = static_cast<uint8_t>(g[static_cast<size_t>(i)] >> 8);
    by[2 * i + 1] = static_cast<uint8_t>(g[static_cast<size_t>(i)] & 0xff);
  }
  return Ipv6Address::from_bytes(by);
}

}  // namespace

TEST_CASE("hex formatting compresses the longest zero run") {
  const Ipv6Address a =
      addr_from_groups({0x2031, 0x0000, 0x130f, 0x0000, 0x0000, 0x09c0, 0x876a, 0x130b});
  CHECK(format_hex(a) == "2031:0:130f::9c0:876a:130b");
  CHECK(parse_hex("2031:0:130f::9c0:876a:130b") == a);
  CHECK(parse_hex("2031:0000:130f:0000:0000:09c0:876a:130b") == a);
  CHECK(parse_hex("2031:0:130F::9C0:876A:130B") == a);  // case-insensitive
}

TEST_CASE("hex formatting compresses even a single zero group") {
  const Ipv6Address a = addr_from_groups({1, 0, 2, 3, 4, 5, 6, 7});
  CHECK(format_hex(a) == "1::2:3:4:5:6:7");
  CHECK(parse_hex("1::2:3:4:5:6:7") == a);
}

TEST_CASE("hex formatting picks the leftmost run on ties") {
  const Ipv6Address a = addr_from_groups({0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(format_hex(a) == "::1:0:1:0:1:0:1");
  CHECK(parse_hex(format_hex(a)) == a);
}

TEST_CASE("hex formatting handles run at either end and the all-zero address") {
  CHECK(format_hex(addr_from_groups({0, 0, 0, 1, 2, 3, 4, 5})) == "::1:2:3:4:5");
  CHECK(format_hex(addr_from_groups({1, 2, 3, 4, 5, 0, 0, 0})) == "1:2:3:4:5::");
  CHECK(format_hex(addr_from_groups({0, 0, 0, 0, 0, 0, 0, 0})) == "::");
  CHECK(format_hex(addr_from_groups({0, 0, 0, 0, 0, 0, 0, 1})) == "::1");
  const Ipv6Address one = parse_hex("::1");
  std::array<uint8_t, 16> expect{};
  expect[15] = 1;
  CHECK(one.bytes() == expect);
  CHECK(parse_hex("::") == addr_from_groups({0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(format_hex(addr_from_groups({0, 0, 1, 0, 0, 0, 2, 0})) == "0:0:1::2:0");
}

TEST_CASE("hex parsing rejects malformed inputs") {
  CHECK_THROWS_AS(parse_hex("1::2::3"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex("12345::"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex("1:2:3:4:5:6:7:8:9"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex("1:2:3:4:5:6:7"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex("1:2:3:4:5:6:7::8"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex("g::1"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex(""), MalformedAddress);
  CHECK_THROWS_AS(parse_hex(":::"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex("1:2:3:4:5:6:7:8:"), MalformedAddress);
  CHECK_THROWS_AS(parse_hex(":1:2:3:4:5:6:7:8"), MalformedAddress);
}

TEST_CASE("hex round-trips over seeded random addresses") {
  Rng rng(20260816);
  for (int iter = 0; iter < 1000; ++iter) {
    std::array<uint8_t, 16> by{};
    for (auto& b : by) b = static_cast<uint8_t>(rng.next_below(256));
    // Zero a random span so compression paths are exercised often.
    const uint64_t start = rng.next_below(8);
    const uint64_t len = rng.next_below(9 - start);
    for (uint64_t gidx = start; gidx < start + len; ++gidx) {
      by[2 * gidx] = 0;
      by[2 * gidx + 1] = 0;
    }
    const Ipv6Address a = Ipv6Address::from_bytes(by);
    const std::string text = format_hex(a);
    CHECK(parse_hex(text) == a);
    CHECK(format_hex(parse_hex(text)) == text);
  }
}

TEST_CASE("dotted decimal round-trips identifiers and addresses") {
  CHECK(to_dotted_decimal(DeviceIdentifier::local_controller()) == "0.0.0.0.0.0.0.1");
  CHECK(identifier_from_dotted("0.0.0.0.0.0.0.1") == DeviceIdentifier::local_controller());
  CHECK(identifier_from_dotted("3.7.0.0.0.0.0.2").to_u64() == 0x0307000000000002ULL);

  const Ipv6Address a{default_prefix(), DeviceIdentifier::from_u64(9)};
  CHECK(to_dotted_decimal(a) == "206.223.12.184.139.163.138.46.0.0.0.0.0.0.0.9");
  CHECK(from_dotted_decimal(default_prefix(), "0.0.0.0.0.0.0.9") == a);
  CHECK(from_dotted_decimal(default_prefix(),
                            "206.223.12.184.139.163.138.46.0.0.0.0.0.0.0.9") == a);

  Rng rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    DeviceIdentifier id = DeviceIdentifier::from_u64(rng.next_u64());
    CHECK(identifier_from_dotted(to_dotted_decimal(id)) == id);
  }
}

TEST_CASE("dotted decimal rejects malformed inputs") {
  CHECK_THROWS_AS(identifier_from_dotted("0.0.0.0.0.0.0.256"), MalformedAddress);
  CHECK_THROWS_AS(identifier_from_dotted("0.0.0.0.0.0.1"), MalformedAddress);
  CHECK_THROWS_AS(identifier_from_dotted("0.0.0.0.0.0.0.1.2"), MalformedAddress);
  CHECK_THROWS_AS(identifier_from_dotted("1..2.3.4.5.6.7"), MalformedAddress);
  CHECK_THROWS_AS(identifier_from_dotted("a.b.c.d.e.f.g.h"), MalformedAddress);
  CHECK_THROWS_AS(identifier_from_dotted("1234.0.0.0.0.0.0.0"), MalformedAddress);
  CHECK_THROWS_AS(identifier_from_dotted(""), MalformedAddress);
  CHECK_THROWS_AS(from_dotted_decimal(default_prefix(), "1.2.3"), MalformedAddress);
  CHECK_THROWS_AS(from_dotted_decimal(default_prefix(), "0.0.0.0.0.0.0.-1"),
                  MalformedAddress);
}

TEST_CASE("identifier predicates classify shapes") {
  CHECK(is_local_controller(DeviceIdentifier::local_controller()));
  CHECK_FALSE(is_local_controller(DeviceIdentifier::from_u64(2)));
  CHECK(is_reserved(DeviceIdentifier::from_u64(~0ULL)));
  CHECK_FALSE(is_reserved(DeviceIdentifier::from_u64(~0ULL) , 3));
  CHECK(is_reserved(identifier_from_dotted("3.3.3.3.3.3.3.3"), 3));

  CHECK(fill_position(DeviceIdentifier::local_controller()) == 7);
  CHECK(fill_position(identifier_from_dotted("3.7.0.0.0.0.0.2")) == 5);
  CHECK(fill_position(identifier_from_dotted("1.2.3.4.5.6.7.9")) == 0);

  CHECK(is_assignable(identifier_from_dotted("3.7.0.0.0.0.0.2")));
  CHECK(is_assignable(DeviceIdentifier::local_controller()));
  CHECK_FALSE(is_assignable(identifier_from_dotted("0.0.0.0.0.0.0.0")));
  CHECK_FALSE(is_assignable(identifier_from_dotted("3.0.7.0.0.0.0.2")));  // gap in run
  CHECK_FALSE(is_assignable(identifier_from_dotted("0.7.0.0.0.0.0.2")));  // run not at top
  CHECK_FALSE(is_assignable(DeviceIdentifier::from_u64(~0ULL)));          // reserved
  CHECK_FALSE(is_assignable(identifier_from_dotted("4.0.0.0.0.0.0.1"), 3));
}
