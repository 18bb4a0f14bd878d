#include <cstdlib>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "proxy6/sim.hpp"
#include "proxy6/topology.hpp"

using namespace proxy6;
using namespace proxy6::net;
using namespace proxy6::sim;

namespace {

Topology make_grid(int rows, int cols) {
  TopologyParams p;
  p.kind = TopologyKind::Grid;
  p.rows = rows;
  p.cols = cols;
  return build_topology(p, 1);
}

Topology make_geometric(int n, double radius, uint64_t seed) {
  TopologyParams p;
  p.kind = TopologyKind::RandomGeometric;
  p.n = n;
  p.radius = radius;
  return build_topology(p, seed);
}

// Spine-plus-fan tree: a single chain of depth-1..depth-(d-1) nodes ending in
// a fan of leaves, so the graph diameter is exactly `depth`.
Topology make_spine(int depth, int fan) {
  TopologyParams p;
  p.kind = TopologyKind::Tree;
  p.levels.assign(static_cast<size_t>(depth) - 1, 1);
  p.levels.push_back(fan);
  return build_topology(p, 1);
}

bool same_records(const std::vector<JoinRecord>& a, const std::vector<JoinRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].join != b[i].join || a[i].node != b[i].node ||
        a[i].messages != b[i].messages || a[i].latency != b[i].latency ||
        a[i].escalations != b[i].escalations || a[i].retries != b[i].retries ||
        a[i].outcome != b[i].outcome)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scheme and order names round-trip") {
  for (Scheme s : {Scheme::Proposed, Scheme::Dad, Scheme::Dhcp})
    CHECK(scheme_from_name(scheme_name(s)) == s);
  for (JoinOrder o : {JoinOrder::Bfs, JoinOrder::Id, JoinOrder::Random})
    CHECK(join_order_from_name(join_order_name(o)) == o);
  CHECK_FALSE(scheme_from_name("nope").has_value());
  CHECK_FALSE(join_order_from_name("nope").has_value());
}

TEST_CASE("a lossless flood costs exactly the closed-form transmission count") {
  const Topology path5 = make_grid(1, 5);
  const Topology k4 = Topology::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const Topology grid10 = make_grid(10, 10);

  for (const Topology* topo : {&path5, &k4, &grid10}) {
    const FloodProbeResult r = flood_probe(*topo, 0, 0.0, 1);
    CHECK(r.transmissions == proxy6::testing::flood_traversals(*topo, 0));
    CHECK(r.reached == topo->n() - 1);
    CHECK(r.lost == 0);
  }
  CHECK(flood_probe(path5, 0, 0.0, 1).transmissions == 4);
  CHECK(flood_probe(k4, 0, 0.0, 1).transmissions == 9);
  CHECK(flood_probe(grid10, 0, 0.0, 1).transmissions == 261);
  CHECK(flood_probe(path5, 3, 0.0, 1).transmissions == 4);
}

TEST_CASE("a fully lossy flood stops at the origin") {
  const Topology grid10 = make_grid(10, 10);
  const FloodProbeResult r = flood_probe(grid10, 0, 1.0, 1);
  CHECK(r.transmissions == 2);  // the corner's two links
  CHECK(r.lost == 2);
  CHECK(r.reached == 0);
}

TEST_CASE("grid joins cost two messages plus two per escalation") {
  const Topology topo = make_grid(10, 10);
  RunSpec spec;
  spec.retry_interval = 64;  // park retries so the raw exchange cost is visible
  const RunMetrics m = run_scenario(topo, spec);

  CHECK(m.joins == 99);
  CHECK(m.configured == 99);
  CHECK(m.duplicates == 0);
  CHECK(m.violations == 0);
  CHECK(m.failures == 0);
  CHECK(m.floods == 0);
  CHECK(m.retries == 0);
  CHECK(m.escalations == 64);  // every join beyond range depth escalates once
  CHECK(m.lost == 0);
  CHECK(m.sent == m.delivered);

  int64_t total = 0;
  for (const JoinRecord& r : m.per_join) {
    CHECK(r.outcome == JoinOutcome::Configured);
    CHECK(r.messages == 2 + 2 * r.escalations);
    CHECK(r.latency == 2 + 2 * r.escalations);
    total += r.messages;
  }
  CHECK(total == m.messages_total);
  CHECK(m.messages.mean == doctest::Approx(326.0 / 99).epsilon(1e-12));
}

TEST_CASE("grid run digest matches the frozen golden row") {
  const Topology topo = make_grid(10, 10);
  const RunSpec spec;  // defaults: seed 1, lossless, serial joins
  const RunMetrics m = run_scenario(topo, spec);
  const std::string got =
      csv_header() + "\n" + csv_row("proposed", topo.n(), topo.links, topo.diameter, spec.seed, m) + "\n";

  const std::string path =
      std::string(PROXY6_SOURCE_DIR) + "/tests/golden/grid10_proposed_seed1.csv";
  if (std::getenv("PROXY6_WRITE_GOLDEN") != nullptr) {
    std::ofstream out(path, std::ios::binary);
    out << got;
  }
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(got == want);
}

TEST_CASE("equal specs reproduce byte-identical metrics; seeds change them") {
  const Topology topo = make_grid(10, 10);
  RunSpec spec;
  spec.loss_rate = 0.15;
  spec.concurrency = 3;
  spec.seed = 9;
  const RunMetrics a = run_scenario(topo, spec);
  const RunMetrics b = run_scenario(topo, spec);
  CHECK(csv_row("proposed", 100, 180, 18, spec.seed, a) ==
        csv_row("proposed", 100, 180, 18, spec.seed, b));
  CHECK(same_records(a.per_join, b.per_join));
  CHECK(a.sent == b.sent);
  CHECK(a.lost == b.lost);

  spec.seed = 10;
  const RunMetrics c = run_scenario(topo, spec);
  const bool differs = a.sent != c.sent || a.messages_total != c.messages_total ||
                       a.latency.mean != c.latency.mean;
  CHECK(differs);
}

TEST_CASE("a joiner with no configured neighbor waits without spending traffic") {
  const Topology path5 = make_grid(1, 5);
  RunSpec spec;
  spec.concurrency = 4;
  spec.join_order = JoinOrder::Id;
  const RunMetrics m = run_scenario(path5, spec);

  CHECK(m.configured == 4);
  CHECK(m.failures == 0);
  CHECK(m.retries == 6);  // nodes 2, 3, 4 idle through 1, 2, and 3 windows
  CHECK(m.floods == 0);
  for (const JoinRecord& r : m.per_join) {
    CHECK(r.messages == 2);  // waiting costs time but no messages
    CHECK(r.latency == 2);   // measured from the first transmission
  }
}

TEST_CASE("on a spine tree, direct grants complete in exactly one round trip") {
  const Topology topo = make_spine(10, 100);
  REQUIRE(topo.diameter == 10);
  RunSpec spec;
  spec.retry_interval = 64;
  const RunMetrics m = run_scenario(topo, spec);
  CHECK(m.configured == topo.n() - 1);
  int direct = 0;
  for (const JoinRecord& r : m.per_join) {
    if (r.escalations == 0) {
      CHECK(r.latency == 2);
      ++direct;
    } else {
      CHECK(r.latency == 2 + 2 * r.escalations);
    }
  }
  CHECK(direct == 7);  // one grant per identifier octet depth
}

TEST_CASE("the detection scheme waits out exactly one diameter round trip") {
  const Topology topo = make_spine(10, 100);
  RunSpec spec;
  spec.scheme = Scheme::Dad;
  const RunMetrics m = run_scenario(topo, spec);
  CHECK(m.joins == topo.n());  // with no allocator, every node joins
  CHECK(m.configured == topo.n());
  CHECK(m.duplicates == 0);
  for (const JoinRecord& r : m.per_join) CHECK(r.latency == 2 * topo.diameter);
  CHECK(m.latency.mean == 2.0 * topo.diameter);
  CHECK(m.floods == topo.n());
}

TEST_CASE("probe answers force redraws, and a spent space fails the join") {
  const Topology path5 = make_grid(1, 5);
  RunSpec spec;
  spec.scheme = Scheme::Dad;
  spec.dad_space = 1;  // every draw yields the same identifier
  const RunMetrics m = run_scenario(path5, spec);

  CHECK(m.joins == 5);
  CHECK(m.configured == 1);  // the first claimant keeps it
  CHECK(m.duplicates == 0);  // answered probes always block the duplicate
  CHECK(m.failures == 4);
  CHECK(m.retries == 20);  // four joins exhaust five attempts each
  CHECK(m.floods == 21);
}

TEST_CASE("total loss silences every answer and duplicates appear") {
  const Topology path5 = make_grid(1, 5);
  RunSpec spec;
  spec.scheme = Scheme::Dad;
  spec.dad_space = 1;
  spec.loss_rate = 1.0;
  const RunMetrics m = run_scenario(path5, spec);
  CHECK(m.configured == 5);
  CHECK(m.duplicates == 4);  // everyone claims the same identifier
  CHECK(m.sent == m.lost);
  CHECK(m.delivered == 0);
}

TEST_CASE("detection floods dominate its per-join cost") {
  const Topology grid10 = make_grid(10, 10);
  RunSpec spec;
  spec.scheme = Scheme::Dad;
  const RunMetrics m = run_scenario(grid10, spec);
  CHECK(m.configured == 100);
  CHECK(m.duplicates == 0);
  CHECK(m.floods == 100);
  for (const JoinRecord& r : m.per_join) {
    CHECK(r.messages == 261);  // one full flood, no answers
    CHECK(r.latency == 36);
  }
}

TEST_CASE("the lease server answers over the shortest path") {
  const Topology path5 = make_grid(1, 5);
  RunSpec spec;
  spec.scheme = Scheme::Dhcp;
  const RunMetrics m = run_scenario(path5, spec);
  CHECK(m.configured == 4);
  CHECK(m.duplicates == 0);
  CHECK(m.floods == 4);
  CHECK(m.retries == 0);
  std::vector<int64_t> latencies;
  for (const JoinRecord& r : m.per_join) latencies.push_back(r.latency);
  CHECK(latencies == std::vector<int64_t>{2, 4, 6, 8});
  std::vector<int64_t> messages;
  for (const JoinRecord& r : m.per_join) messages.push_back(r.messages);
  CHECK(messages == std::vector<int64_t>{5, 6, 7, 8});
}

TEST_CASE("a spent lease pool denies later joiners") {
  const Topology path5 = make_grid(1, 5);
  RunSpec spec;
  spec.scheme = Scheme::Dhcp;
  spec.dhcp_pool = 2;
  const RunMetrics m = run_scenario(path5, spec);
  CHECK(m.configured == 2);
  CHECK(m.failures == 2);
  CHECK(m.duplicates == 0);
  int denied = 0;
  for (const JoinRecord& r : m.per_join)
    if (r.outcome == JoinOutcome::Denied) ++denied;
  CHECK(denied == 2);
}

TEST_CASE("loss plus concurrency still never duplicates an allocation") {
  const Topology topo = make_geometric(80, 0.25, 3);
  RunSpec spec;
  spec.loss_rate = 0.2;
  spec.concurrency = 4;
  spec.seed = 3;
  const RunMetrics m = run_scenario(topo, spec);
  CHECK(m.joins == 79);
  CHECK(m.duplicates == 0);
  CHECK(m.violations == 0);
  CHECK(m.floods == 0);
  CHECK(m.sent == m.delivered + m.lost);
  CHECK(m.configured + m.failures == m.joins);
}

TEST_CASE("an exhausted event budget reports non-quiescence") {
  const Topology grid10 = make_grid(10, 10);
  RunSpec spec;
  spec.event_budget = 10;
  CHECK_THROWS_AS(run_scenario(grid10, spec), NonQuiescent);
}

TEST_CASE("degenerate topologies run cleanly") {
  const Topology one = make_grid(1, 1);
  RunSpec spec;
  const RunMetrics alloc = run_scenario(one, spec);
  CHECK(alloc.joins == 0);
  CHECK(alloc.messages_total == 0);

  spec.scheme = Scheme::Dad;
  const RunMetrics dad = run_scenario(one, spec);
  CHECK(dad.joins == 1);
  CHECK(dad.configured == 1);
  CHECK(dad.per_join.at(0).latency == 0);  // zero-diameter wait expires at once
}

TEST_CASE("out-of-range run parameters are rejected") {
  const Topology path5 = make_grid(1, 5);
  RunSpec spec;
  spec.loss_rate = 1.5;
  CHECK_THROWS_AS(run_scenario(path5, spec), std::invalid_argument);
  spec = RunSpec{};
  spec.root = 99;
  CHECK_THROWS_AS(run_scenario(path5, spec), std::invalid_argument);
  spec = RunSpec{};
  spec.concurrency = 0;
  CHECK_THROWS_AS(run_scenario(path5, spec), std::invalid_argument);
  spec = RunSpec{};
  spec.retry_limit = 0;
  CHECK_THROWS_AS(run_scenario(path5, spec), std::invalid_argument);
}
