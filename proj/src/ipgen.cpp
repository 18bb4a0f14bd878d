#include "proxy6/ipgen.hpp"

#include <stdexcept>

namespace proxy6::addr {

namespace {

void check_octets(const DeviceIdentifier& id, int octet_max) {
  for (int k = 0; k < 8; ++k) {
    if (id.octet(k) > octet_max) {
      throw InvalidIdentifier("identifier octet exceeds radix");
    }
  }
}

void check_state(const AllocationState& st, int octet_max) {
  if (st.count < 0 || st.count > octet_max) {
    throw std::invalid_argument("allocation count out of range");
  }
  if (st.count1 < 1 || st.count1 > octet_max) {
    throw std::invalid_argument("allocation count1 out of range");
  }
}

}  // namespace

std::optional<Generated> generate_address(const Ipv6Address& self,
                                          const AllocationState& state,
                                          int octet_max) {
  const DeviceIdentifier& id = self.id;
  if (id.octet(0) == 0) {
    throw InvalidIdentifier("identifier least octet must be nonzero");
  }
  if (is_reserved(id, octet_max)) {
    throw InvalidIdentifier("reserved identifier cannot issue addresses");
  }
  check_octets(id, octet_max);
  check_state(state, octet_max);

  if (is_local_controller(id)) {
    // First range: j.0.0.0.0.0.0.1 for j = 1..octet_max.
    if (state.count < octet_max) {
      AllocationState st = state;
      st.count += 1;
      DeviceIdentifier child = id;
      child.set_octet(7, static_cast<uint8_t>(st.count));
      return Generated{Ipv6Address{self.prefix, child}, st};
    }
    // Second range: 0.0.0.0.0.0.0.i for i = 2..octet_max.
    if (state.count1 < octet_max) {
      AllocationState st = state;
      st.count1 += 1;
      DeviceIdentifier child{};
      child.set_octet(0, static_cast<uint8_t>(st.count1));
      return Generated{Ipv6Address{self.prefix, child}, st};
    }
    return std::nullopt;
  }

  const int k = fill_position(id);
  if (k == 0) {
    return std::nullopt;  // every position filled: leaf node
  }
  int j = state.count + 1;
  while (j <= octet_max) {
    DeviceIdentifier child = id;
    child.set_octet(k, static_cast<uint8_t>(j));
    if (!is_reserved(child, octet_max)) {
      AllocationState st = state;
      st.count = j;
      return Generated{Ipv6Address{self.prefix, child}, st};
    }
    ++j;  // reserved identifier: skip this index
  }
  return std::nullopt;
}

std::optional<DeviceIdentifier> parent_of(const DeviceIdentifier& id,
                                          int octet_max) {
  if (!is_assignable(id, octet_max)) {
    throw InvalidIdentifier("identifier is not an assignable address");
  }
  if (is_local_controller(id)) {
    return std::nullopt;
  }
  if (id.octet(7) == 0) {
    // Controller second range: 0.0.0.0.0.0.0.i with i >= 2.
    return DeviceIdentifier::local_controller();
  }
  // The issuer zeroed-out octet is the lowest position of the nonzero run.
  const int fill = fill_position(id);
  const int m = (fill == 0) ? 1 : fill + 1;
  DeviceIdentifier parent = id;
  parent.set_octet(m, 0);
  return parent;
}

uint64_t remaining_capacity(const Ipv6Address& self, const AllocationState& state,
                            int octet_max) {
  const DeviceIdentifier& id = self.id;
  if (id.octet(0) == 0) {
    throw InvalidIdentifier("identifier least octet must be nonzero");
  }
  if (is_reserved(id, octet_max)) {
    throw InvalidIdentifier("reserved identifier cannot issue addresses");
  }
  check_octets(id, octet_max);
  check_state(state, octet_max);

  if (is_local_controller(id)) {
    return static_cast<uint64_t>(octet_max - state.count) +
           static_cast<uint64_t>(octet_max - state.count1);
  }
  const int k = fill_position(id);
  if (k == 0) {
    return 0;
  }
  uint64_t cap = static_cast<uint64_t>(octet_max - state.count);
  if (cap > 0) {
    DeviceIdentifier last = id;
    last.set_octet(k, static_cast<uint8_t>(octet_max));
    if (is_reserved(last, octet_max)) {
      cap -= 1;  // the top index would land on the reserved identifier
    }
  }
  return cap;
}

}  // namespace proxy6::addr
