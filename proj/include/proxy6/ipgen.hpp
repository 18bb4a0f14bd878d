#pragma once

#include <cstdint>
#include <optional>

#include "proxy6/address.hpp"

namespace proxy6::addr {

// Per-node allocation bookkeeping. `count` is the index of the last child
// issued at the node's fill position (0 = nothing issued yet). `count1` is
// meaningful only on the local controller: the last index issued in its
// second range, the one that varies the least-significant octet. It starts
// at 1 because the controller itself holds identifier ...0.1.
struct AllocationState {
  int count = 0;
  int count1 = 1;

  auto operator<=>(const AllocationState&) const = default;
};

struct Generated {
  Ipv6Address address;
  AllocationState state;
};

// Issues the next child address of `self`, or nullopt when the node's range
// is exhausted. The controller fills position 7 for indices 1..octet_max,
// then position 0 for indices 2..octet_max. Every other node fills its fill
// position (highest zero octet among positions 7..1); a node with no zero
// octet there is a leaf and always returns nullopt. An index whose result
// would be the reserved all-octet_max identifier is skipped.
//
// Accepts any identifier with least octet >= 1 that is not reserved; strict
// run-shape validation is parent_of's job (assigned addresses always pass
// both).
std::optional<Generated> generate_address(const Ipv6Address& self,
                                          const AllocationState& state,
                                          int octet_max = kOctetMax);

// The identifier of the node that issued `id`: the lowest octet of the run
// is zeroed; identifiers of the form ...0.i (i >= 2) came from the local
// controller; the controller itself has no parent (nullopt). Throws
// InvalidIdentifier when `id` is not an assignable identifier.
std::optional<DeviceIdentifier> parent_of(const DeviceIdentifier& id,
                                          int octet_max = kOctetMax);

// Number of addresses `self` can still issue from the given state.
uint64_t remaining_capacity(const Ipv6Address& self, const AllocationState& state,
                            int octet_max = kOctetMax);

}  // namespace proxy6::addr
