#pragma once

#include <optional>
#include <span>

#include "proxy6/address.hpp"
#include "proxy6/ipgen.hpp"
#include "proxy6/types.hpp"

namespace proxy6::proto {

using addr::DeviceIdentifier;
using addr::Ipv6Address;
using addr::kOctetMax;
using addr::NetworkPrefix;

enum class NodeRole { Unconfigured, ConfiguredDevice, LocalController, GlobalController };

struct NeighborInfo {
  NodeId id = 0;
  bool configured = false;
};

struct NodeState {
  NodeRole role = NodeRole::Unconfigured;
  std::optional<Ipv6Address> address;
  addr::AllocationState alloc;

  bool configured() const { return address.has_value(); }
};

// Wire payloads for the address assignment exchange.
struct AddrRequest {
  NodeId requester = 0;
};

struct AddrReply {
  Ipv6Address assigned;
};

struct AddrDeny {};

struct EscalateRequest {
  NodeId requester = 0;
};

// A joining node asks the configured neighbor with the lowest node id.
std::optional<NodeId> select_proxy(std::span<const NeighborInfo> neighbors);

struct ServeResult {
  std::optional<Ipv6Address> assigned;           // granted from own range
  std::optional<DeviceIdentifier> escalate_to;   // forward to this ancestor
  bool deny = false;                             // no range anywhere: refuse
};

// Handles an address request at a configured node. Either issues from the
// node's own range (advancing its allocation state), or names the ancestor
// the request escalates to, or denies when the node is the controller and
// both its ranges are spent.
ServeResult serve_request(NodeState& self, int octet_max = kOctetMax);

// Accepts an assignment reply; returns false (no state change) when the
// node is already configured, so duplicate replies are harmless.
bool accept_assignment(NodeState& self, const Ipv6Address& address);

// Installs the controller identity on the node that starts the network.
void configure_controller(NodeState& self, const NetworkPrefix& prefix);

}  // namespace proxy6::proto
