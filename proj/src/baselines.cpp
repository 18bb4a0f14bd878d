#include "proxy6/baselines.hpp"

#include <stdexcept>

namespace proxy6::baseline {

addr::DeviceIdentifier draw_tentative(Rng& rng, const DadConfig& cfg) {
  uint64_t value;
  if (cfg.space == 0) {
    value = rng.next_u64();
  } else {
    value = 1 + rng.next_below(cfg.space);  // avoid the all-zero identifier
  }
  return addr::DeviceIdentifier::from_u64(value);
}

std::optional<addr::DeviceIdentifier> DhcpServerState::assign(NodeId who) {
  if (pool != 0 && table.size() >= pool) {
    return std::nullopt;
  }
  cursor += 1;
  auto [it, inserted] = table.emplace(cursor, who);
  if (!inserted) {
    throw std::logic_error("server lease table already holds this identifier");
  }
  (void)it;
  return addr::DeviceIdentifier::from_u64(cursor);
}

}  // namespace proxy6::baseline
