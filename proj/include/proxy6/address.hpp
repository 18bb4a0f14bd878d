#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace proxy6::addr {

struct MalformedAddress : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidIdentifier : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Largest value an identifier octet may take. 255 in production; tests
// instantiate small radixes (e.g. 3) to enumerate the full allocation tree.
inline constexpr int kOctetMax = 255;

// Lower eight octets of an address: the device identifier. Stored
// most-significant first (wire order). octet(k) addresses position k, where
// position 7 is the most significant identifier octet and position 0 the
// least; dotted-decimal output prints position 7 first.
struct DeviceIdentifier {
  std::array<uint8_t, 8> bytes{};

  constexpr uint8_t octet(int k) const { return bytes[7 - k]; }
  constexpr void set_octet(int k, uint8_t v) { bytes[7 - k] = v; }

  constexpr uint64_t to_u64() const {
    uint64_t v = 0;
    for (uint8_t b : bytes) v = v << 8 | b;
    return v;
  }
  static constexpr DeviceIdentifier from_u64(uint64_t v) {
    DeviceIdentifier id;
    for (int i = 7; i >= 0; --i) {
      id.bytes[i] = static_cast<uint8_t>(v & 0xff);
      v >>= 8;
    }
    return id;
  }

  // The local controller's identifier: position 0 is 1, the rest 0.
  static constexpr DeviceIdentifier local_controller() { return from_u64(1); }

  auto operator<=>(const DeviceIdentifier&) const = default;
};

// Upper eight octets of an address, assigned per domain by the global
// controller. Opaque here: allocation happens entirely in the identifier.
struct NetworkPrefix {
  std::array<uint8_t, 8> bytes{};
  auto operator<=>(const NetworkPrefix&) const = default;
};

// Domain prefix used by the simulator when none is specified.
NetworkPrefix default_prefix();

struct Ipv6Address {
  NetworkPrefix prefix;
  DeviceIdentifier id;

  std::array<uint8_t, 16> bytes() const;
  static Ipv6Address from_bytes(const std::array<uint8_t, 16>&);

  auto operator<=>(const Ipv6Address&) const = default;
};

// --- identifier structure ---------------------------------------------------

// Position (7..1) of the octet a node fills when generating child
// identifiers: the highest zero octet among positions 7..1. Returns 0 when
// every one of those positions is nonzero (the identifier is a leaf of the
// allocation tree and cannot generate).
int fill_position(const DeviceIdentifier&);

// All octets equal to octet_max. Reserved; never assigned to a device.
bool is_reserved(const DeviceIdentifier&, int octet_max = kOctetMax);

bool is_local_controller(const DeviceIdentifier&);

// True when the identifier can appear as an assigned address: least octet
// >= 1, the nonzero octets among positions 7..1 form one contiguous run
// starting at position 7, every octet <= octet_max, and not reserved.
bool is_assignable(const DeviceIdentifier&, int octet_max = kOctetMax);

// --- text formats -----------------------------------------------------------

// Canonical hexadecimal form: eight 16-bit groups, lowercase, leading zeros
// dropped, the single longest run of zero groups (length >= 1; leftmost on
// ties) compressed to "::".
std::string format_hex(const Ipv6Address&);

// Accepts full and "::"-compressed forms, case-insensitive. Throws
// MalformedAddress on more than one "::", wrong group count, groups longer
// than four digits, or non-hex characters.
Ipv6Address parse_hex(std::string_view);

// Dotted decimal: 16 period-separated octet values for an address, 8 for a
// bare identifier, most significant first.
std::string to_dotted_decimal(const Ipv6Address&);
std::string to_dotted_decimal(const DeviceIdentifier&);
DeviceIdentifier identifier_from_dotted(std::string_view);

// Parses either a bare 8-octet identifier (combined with the given prefix)
// or a full 16-octet address.
Ipv6Address from_dotted_decimal(const NetworkPrefix&, std::string_view);

}  // namespace proxy6::addr
