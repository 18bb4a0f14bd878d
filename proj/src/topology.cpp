#include "proxy6/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <set>
#include <unordered_map>

#include "proxy6/rng.hpp"

namespace proxy6::net {

namespace {

bool is_connected(const Topology& topo) {
  if (topo.n() == 0) return false;
  const std::vector<int> dist = bfs_dist(topo, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

// Exact diameter by all-pairs BFS; affordable up to a few thousand nodes.
int diameter_exact(const Topology& topo) {
  int best = 0;
  for (NodeId v = 0; v < topo.n(); ++v) {
    const std::vector<int> dist = bfs_dist(topo, v);
    best = std::max(best, *std::max_element(dist.begin(), dist.end()));
  }
  return best;
}

// Double-sweep lower bound: BFS from node 0, then from the farthest node
// found. Exact on trees, a tight estimate elsewhere.
int diameter_double_sweep(const Topology& topo) {
  std::vector<int> dist = bfs_dist(topo, 0);
  NodeId far = static_cast<NodeId>(
      std::max_element(dist.begin(), dist.end()) - dist.begin());
  dist = bfs_dist(topo, far);
  return *std::max_element(dist.begin(), dist.end());
}

void finish(Topology& topo) {
  for (auto& nbrs : topo.adj) {
    std::sort(nbrs.begin(), nbrs.end());
  }
  if (!is_connected(topo)) {
    throw TopologyUnsatisfiable("graph is not connected");
  }
  if (topo.n() <= 5000) {
    topo.diameter = diameter_exact(topo);
    topo.diameter_exact = true;
  } else {
    topo.diameter = diameter_double_sweep(topo);
    topo.diameter_exact = false;
  }
}

Topology build_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw TopologyUnsatisfiable("grid dimensions must be positive");
  }
  Topology topo;
  topo.adj.resize(static_cast<size_t>(rows) * cols);
  auto at = [cols](int r, int c) { return static_cast<NodeId>(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        topo.adj[at(r, c)].push_back(at(r, c + 1));
        topo.adj[at(r, c + 1)].push_back(at(r, c));
        topo.links++;
      }
      if (r + 1 < rows) {
        topo.adj[at(r, c)].push_back(at(r + 1, c));
        topo.adj[at(r + 1, c)].push_back(at(r, c));
        topo.links++;
      }
    }
  }
  finish(topo);
  return topo;
}

// levels[i] = number of children attached to every node at depth i.
// Nodes are numbered in breadth-first order starting from the root (0).
Topology build_tree(const std::vector<int>& levels) {
  for (int width : levels) {
    if (width < 1) {
      throw TopologyUnsatisfiable("tree level widths must be positive");
    }
  }
  Topology topo;
  topo.adj.resize(1);
  std::vector<NodeId> frontier{0};
  for (int width : levels) {
    std::vector<NodeId> next;
    next.reserve(frontier.size() * static_cast<size_t>(width));
    for (NodeId parent : frontier) {
      for (int i = 0; i < width; ++i) {
        const NodeId child = static_cast<NodeId>(topo.adj.size());
        topo.adj.emplace_back();
        topo.adj[parent].push_back(child);
        topo.adj[child].push_back(parent);
        topo.links++;
        next.push_back(child);
      }
    }
    frontier = std::move(next);
  }
  finish(topo);
  return topo;
}

// Uniform points in the unit square; edge when euclidean distance <= radius.
// Neighbor search buckets points into radius-sized cells so construction
// stays near-linear for the node counts the acceptance runs use.
Topology sample_geometric(int n, double radius, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n), ys(n);
  for (int v = 0; v < n; ++v) {
    xs[v] = rng.next_unit();
    ys[v] = rng.next_unit();
  }
  Topology topo;
  topo.adj.resize(n);
  const double cell = radius;
  auto key = [cell](double x, double y) {
    const int64_t gx = static_cast<int64_t>(std::floor(x / cell));
    const int64_t gy = static_cast<int64_t>(std::floor(y / cell));
    return (static_cast<uint64_t>(gx) << 32) ^ static_cast<uint32_t>(gy);
  };
  std::unordered_map<uint64_t, std::vector<NodeId>> grid;
  grid.reserve(static_cast<size_t>(n) * 2);
  const double r2 = radius * radius;
  for (NodeId v = 0; v < n; ++v) {
    const int64_t gx = static_cast<int64_t>(std::floor(xs[v] / cell));
    const int64_t gy = static_cast<int64_t>(std::floor(ys[v] / cell));
    for (int64_t dx = -1; dx <= 1; ++dx) {
      for (int64_t dy = -1; dy <= 1; ++dy) {
        const uint64_t k = (static_cast<uint64_t>(gx + dx) << 32) ^
                           static_cast<uint32_t>(gy + dy);
        auto it = grid.find(k);
        if (it == grid.end()) continue;
        for (NodeId u : it->second) {
          const double ddx = xs[v] - xs[u];
          const double ddy = ys[v] - ys[u];
          if (ddx * ddx + ddy * ddy <= r2) {
            topo.adj[v].push_back(u);
            topo.adj[u].push_back(v);
            topo.links++;
          }
        }
      }
    }
    grid[key(xs[v], ys[v])].push_back(v);
  }
  return topo;
}

Topology build_geometric(int n, double radius, uint64_t seed) {
  if (n < 1 || radius <= 0.0) {
    throw TopologyUnsatisfiable("geometric graph needs n >= 1 and radius > 0");
  }
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const uint64_t s = Rng::mix(Rng::mix(seed, kStreamTopology),
                                static_cast<uint64_t>(attempt));
    Topology topo = sample_geometric(n, radius, s);
    bool connected = true;
    try {
      finish(topo);
    } catch (const TopologyUnsatisfiable&) {
      connected = false;
    }
    if (connected) return topo;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "no connected geometric graph after %d attempts (n=%d, r=%g)",
                kMaxAttempts, n, radius);
  throw TopologyUnsatisfiable(buf);
}

}  // namespace

Topology Topology::from_edges(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  if (n < 1) {
    throw TopologyUnsatisfiable("graph needs at least one node");
  }
  Topology topo;
  topo.adj.resize(n);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw TopologyUnsatisfiable("edge endpoint out of range");
    }
    if (a == b) {
      throw TopologyUnsatisfiable("self loops are not allowed");
    }
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    topo.adj[a].push_back(b);
    topo.adj[b].push_back(a);
    topo.links++;
  }
  finish(topo);
  return topo;
}

Topology build_topology(const TopologyParams& params, uint64_t seed) {
  switch (params.kind) {
    case TopologyKind::Grid:
      return build_grid(params.rows, params.cols);
    case TopologyKind::Tree:
      return build_tree(params.levels);
    case TopologyKind::RandomGeometric:
      return build_geometric(params.n, params.radius, seed);
  }
  throw TopologyUnsatisfiable("unknown topology kind");
}

std::vector<int> bfs_dist(const Topology& topo, NodeId origin) {
  std::vector<int> dist(topo.n(), -1);
  std::queue<NodeId> queue;
  dist[origin] = 0;
  queue.push(origin);
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop();
    for (NodeId u : topo.adj[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push(u);
      }
    }
  }
  return dist;
}

}  // namespace proxy6::net
