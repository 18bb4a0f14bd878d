#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "proxy6/types.hpp"

namespace proxy6::net {

class TopologyUnsatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected connected graph with adjacency lists kept sorted by node id.
struct Topology {
  std::vector<std::vector<NodeId>> adj;
  int64_t links = 0;
  int diameter = 0;
  bool diameter_exact = true;

  int n() const { return static_cast<int>(adj.size()); }
  const std::vector<NodeId>& neighbors(NodeId v) const { return adj[v]; }

  // Builds from an explicit edge list; deduplicates, rejects self loops,
  // out-of-range endpoints, and disconnected graphs.
  static Topology from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges);
};

enum class TopologyKind { Grid, RandomGeometric, Tree };

struct TopologyParams {
  TopologyKind kind = TopologyKind::Grid;
  int rows = 0;           // Grid
  int cols = 0;           // Grid
  int n = 0;              // RandomGeometric
  double radius = 0.0;    // RandomGeometric
  std::vector<int> levels;  // Tree: children per node at each depth

  bool operator==(const TopologyParams&) const = default;
};

// Deterministic construction from (params, seed). Grid and Tree ignore the
// seed. RandomGeometric retries with derived seeds a bounded number of times
// until the sample is connected, then throws TopologyUnsatisfiable.
Topology build_topology(const TopologyParams& params, uint64_t seed);

// Hop distances from `origin` to every node (-1 marks unreachable).
std::vector<int> bfs_dist(const Topology& topo, NodeId origin);

}  // namespace proxy6::net
