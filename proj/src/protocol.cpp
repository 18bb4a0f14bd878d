#include "proxy6/protocol.hpp"

namespace proxy6::proto {

std::optional<NodeId> select_proxy(std::span<const NeighborInfo> neighbors) {
  std::optional<NodeId> best;
  for (const NeighborInfo& nbr : neighbors) {
    if (!nbr.configured) continue;
    if (!best || nbr.id < *best) best = nbr.id;
  }
  return best;
}

ServeResult serve_request(NodeState& self, int octet_max) {
  ServeResult result;
  if (!self.address) {
    result.deny = true;  // unconfigured nodes cannot serve; callers prevent this
    return result;
  }
  auto generated = addr::generate_address(*self.address, self.alloc, octet_max);
  if (generated) {
    self.alloc = generated->state;
    result.assigned = generated->address;
    return result;
  }
  if (self.role == NodeRole::LocalController || self.role == NodeRole::GlobalController) {
    result.deny = true;  // the controller has no one left to escalate to
    return result;
  }
  result.escalate_to = addr::parent_of(self.address->id, octet_max);
  return result;
}

bool accept_assignment(NodeState& self, const Ipv6Address& address) {
  if (self.address) {
    return false;  // duplicate reply: first assignment wins
  }
  self.address = address;
  self.role = NodeRole::ConfiguredDevice;
  self.alloc = addr::AllocationState{};
  return true;
}

void configure_controller(NodeState& self, const NetworkPrefix& prefix) {
  self.address = Ipv6Address{prefix, DeviceIdentifier::local_controller()};
  self.role = NodeRole::LocalController;
  self.alloc = addr::AllocationState{};
}

}  // namespace proxy6::proto
