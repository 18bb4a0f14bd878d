#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "proxy6/address.hpp"
#include "proxy6/rng.hpp"
#include "proxy6/types.hpp"

namespace proxy6::baseline {

// Duplicate-address-detection scheme: pick a random identifier, flood a
// probe, claim it if no holder answers within the wait window.
struct DadConfig {
  uint64_t space = 0;   // candidate pool size; 0 means the full 64-bit space
  int max_retries = 5;  // attempts before the join is abandoned
};

// Tentative identifiers are drawn uniformly; a bounded space makes
// collisions observable at simulation scale.
addr::DeviceIdentifier draw_tentative(Rng& rng, const DadConfig& cfg);

struct DadNodeState {
  bool configured = false;
  addr::DeviceIdentifier id;
  int attempt = 0;
};

// Centralized-server scheme: one server hands out identifiers sequentially
// and keeps a table enforcing uniqueness by construction.
struct DhcpServerState {
  uint64_t cursor = 0;   // last identifier value issued
  uint64_t pool = 0;     // maximum number of leases; 0 means unbounded
  std::map<uint64_t, NodeId> table;

  // Next lease for `who`, or nullopt when the pool is spent.
  std::optional<addr::DeviceIdentifier> assign(NodeId who);
};

}  // namespace proxy6::baseline
