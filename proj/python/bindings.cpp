// Python bindings for the allocation core: address text formats, identifier
// tree operations, topology builders, and the simulation driver.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "proxy6/address.hpp"
#include "proxy6/ipgen.hpp"
#include "proxy6/metrics.hpp"
#include "proxy6/scenario.hpp"
#include "proxy6/sim.hpp"
#include "proxy6/topology.hpp"

namespace py = pybind11;
using namespace proxy6;

namespace {

// Accepts either hexadecimal (contains ':') or dotted-decimal text; bare
// 8-octet identifiers get the default prefix.
addr::Ipv6Address address_from_text(const std::string& text) {
  if (text.find(':') != std::string::npos) return addr::parse_hex(text);
  return addr::from_dotted_decimal(addr::default_prefix(), text);
}

sim::Scheme scheme_from_text(const std::string& name) {
  if (auto s = sim::scheme_from_name(name)) return *s;
  throw std::invalid_argument("unknown scheme: " + name);
}

sim::JoinOrder order_from_text(const std::string& name) {
  if (auto o = sim::join_order_from_name(name)) return *o;
  throw std::invalid_argument("unknown join order: " + name);
}

py::dict metrics_to_dict(const sim::RunMetrics& m, bool per_join) {
  py::dict d;
  d["joins"] = m.joins;
  d["configured"] = m.configured;
  d["duplicates"] = m.duplicates;
  d["violations"] = m.violations;
  d["failures"] = m.failures;
  d["messages_total"] = m.messages_total;
  d["floods"] = m.floods;
  d["sent"] = m.sent;
  d["delivered"] = m.delivered;
  d["lost"] = m.lost;
  d["escalations"] = m.escalations;
  d["retries"] = m.retries;
  d["messages_mean"] = m.messages.mean;
  d["messages_median"] = m.messages.median;
  d["messages_p95"] = m.messages.p95;
  d["latency_mean"] = m.latency.mean;
  d["latency_median"] = m.latency.median;
  d["latency_p95"] = m.latency.p95;
  if (per_join) {
    py::list records;
    for (const sim::JoinRecord& r : m.per_join) {
      py::dict rec;
      rec["node"] = r.node;
      rec["messages"] = r.messages;
      rec["latency"] = r.latency;
      rec["escalations"] = r.escalations;
      rec["retries"] = r.retries;
      switch (r.outcome) {
        case sim::JoinOutcome::Pending: rec["outcome"] = "pending"; break;
        case sim::JoinOutcome::Configured: rec["outcome"] = "configured"; break;
        case sim::JoinOutcome::Timeout: rec["outcome"] = "timeout"; break;
        case sim::JoinOutcome::Denied: rec["outcome"] = "denied"; break;
      }
      records.append(std::move(rec));
    }
    d["per_join"] = std::move(records);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stateless distributed IPv6 address allocation: core operations";

  py::register_exception<addr::MalformedAddress>(m, "MalformedAddress",
                                                 PyExc_ValueError);
  py::register_exception<addr::InvalidIdentifier>(m, "InvalidIdentifier",
                                                  PyExc_ValueError);
  py::register_exception<net::TopologyUnsatisfiable>(m, "TopologyUnsatisfiable",
                                                     PyExc_ValueError);
  py::register_exception<cfg::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<sim::NonQuiescent>(m, "NonQuiescent", PyExc_RuntimeError);

  // --- address text formats ---
  m.def(
      "canonical_hex",
      [](const std::string& text) { return addr::format_hex(address_from_text(text)); },
      py::arg("text"),
      "Canonical compressed hexadecimal form of an address given in hex or "
      "dotted-decimal text.");
  m.def(
      "to_dotted",
      [](const std::string& text) {
        return addr::to_dotted_decimal(address_from_text(text));
      },
      py::arg("text"), "Dotted-decimal form (16 octets) of an address.");

  // --- identifier tree operations ---
  m.def(
      "fill_position",
      [](const std::string& identifier) {
        return addr::fill_position(addr::identifier_from_dotted(identifier));
      },
      py::arg("identifier"),
      "Octet position (7..1) this identifier fills when generating children; "
      "0 marks a leaf.");
  m.def(
      "is_assignable",
      [](const std::string& identifier, int radix) {
        return addr::is_assignable(addr::identifier_from_dotted(identifier), radix);
      },
      py::arg("identifier"), py::arg("radix") = addr::kOctetMax,
      "Whether the identifier can appear as an assigned address.");
  m.def(
      "parent_of",
      [](const std::string& identifier, int radix) -> std::optional<std::string> {
        const auto p = addr::parent_of(addr::identifier_from_dotted(identifier), radix);
        if (!p) return std::nullopt;
        return addr::to_dotted_decimal(*p);
      },
      py::arg("identifier"), py::arg("radix") = addr::kOctetMax,
      "Identifier of the node that issued this one; None for the local "
      "controller.");
  m.def(
      "next_address",
      [](const std::string& identifier, int count, int count1,
         int radix) -> std::optional<std::tuple<std::string, int, int>> {
        const addr::AllocationState st{count, count1};
        const addr::Ipv6Address self{addr::default_prefix(),
                                     addr::identifier_from_dotted(identifier)};
        const auto g = addr::generate_address(self, st, radix);
        if (!g) return std::nullopt;
        return std::make_tuple(addr::to_dotted_decimal(g->address.id), g->state.count,
                               g->state.count1);
      },
      py::arg("identifier"), py::arg("count") = 0, py::arg("count1") = 1,
      py::arg("radix") = addr::kOctetMax,
      "Next child identifier issued from the given allocation state, as "
      "(identifier, count, count1); None when exhausted.");
  m.def(
      "remaining_capacity",
      [](const std::string& identifier, int count, int count1, int radix) {
        const addr::AllocationState st{count, count1};
        const addr::Ipv6Address self{addr::default_prefix(),
                                     addr::identifier_from_dotted(identifier)};
        return addr::remaining_capacity(self, st, radix);
      },
      py::arg("identifier"), py::arg("count") = 0, py::arg("count1") = 1,
      py::arg("radix") = addr::kOctetMax,
      "Addresses this node can still issue from the given state.");

  // --- topologies ---
  py::class_<net::Topology>(m, "Topology")
      .def_property_readonly("n", &net::Topology::n)
      .def_readonly("links", &net::Topology::links)
      .def_readonly("diameter", &net::Topology::diameter)
      .def_readonly("diameter_exact", &net::Topology::diameter_exact)
      .def(
          "neighbors",
          [](const net::Topology& t, NodeId v) {
            if (v < 0 || v >= t.n()) throw std::out_of_range("node out of range");
            return t.neighbors(v);
          },
          py::arg("node"))
      .def("__repr__", [](const net::Topology& t) {
        return "<Topology n=" + std::to_string(t.n()) +
               " links=" + std::to_string(t.links) +
               " diameter=" + std::to_string(t.diameter) + ">";
      });

  m.def(
      "grid",
      [](int rows, int cols) {
        net::TopologyParams p;
        p.kind = net::TopologyKind::Grid;
        p.rows = rows;
        p.cols = cols;
        return net::build_topology(p, 1);
      },
      py::arg("rows"), py::arg("cols"), "Row-major 4-connected grid.");
  m.def(
      "tree",
      [](const std::vector<int>& levels) {
        net::TopologyParams p;
        p.kind = net::TopologyKind::Tree;
        p.levels = levels;
        return net::build_topology(p, 1);
      },
      py::arg("levels"), "Tree with the given children-per-node count at each depth.");
  m.def(
      "random_geometric",
      [](int n, double radius, uint64_t seed) {
        net::TopologyParams p;
        p.kind = net::TopologyKind::RandomGeometric;
        p.n = n;
        p.radius = radius;
        return net::build_topology(p, seed);
      },
      py::arg("n"), py::arg("radius"), py::arg("seed") = 1,
      "Connected random geometric graph on the unit square.");
  m.def(
      "from_edges",
      [](int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
        return net::Topology::from_edges(n, edges);
      },
      py::arg("n"), py::arg("edges"), "Topology from an explicit edge list.");

  // --- simulation ---
  m.def(
      "run",
      [](const net::Topology& topo, const std::string& scheme, uint64_t seed,
         double loss_rate, int joins, const std::string& join_order, int concurrency,
         int retry_interval, int retry_limit, uint64_t dad_space, uint64_t dhcp_pool,
         uint64_t event_budget, NodeId root, bool per_join) {
        sim::RunSpec spec;
        spec.scheme = scheme_from_text(scheme);
        spec.seed = seed;
        spec.loss_rate = loss_rate;
        spec.joins = joins;
        spec.join_order = order_from_text(join_order);
        spec.concurrency = concurrency;
        spec.retry_interval = retry_interval;
        spec.retry_limit = retry_limit;
        spec.dad_space = dad_space;
        spec.dhcp_pool = dhcp_pool;
        spec.event_budget = event_budget;
        spec.root = root;
        const sim::RunMetrics metrics = sim::run_scenario(topo, spec);
        return metrics_to_dict(metrics, per_join);
      },
      py::arg("topology"), py::arg("scheme") = "proposed", py::arg("seed") = 1,
      py::arg("loss_rate") = 0.0, py::arg("joins") = -1, py::arg("join_order") = "bfs",
      py::arg("concurrency") = 1, py::arg("retry_interval") = 4,
      py::arg("retry_limit") = 5, py::arg("dad_space") = 0, py::arg("dhcp_pool") = 0,
      py::arg("event_budget") = 10000000, py::arg("root") = 0,
      py::arg("per_join") = false,
      "Runs one addressing scheme over the topology and returns its metrics.");

  m.def(
      "execute_config",
      [](const std::string& text, int jobs) {
        const cfg::ScenarioSet set = cfg::parse_config_text(text);
        cfg::Overrides ov;
        ov.jobs = jobs;
        const auto rows = cfg::execute(set, ov);
        py::dict out;
        out["csv"] = cfg::render_rows_csv(rows);
        out["summary"] = cfg::render_summary_json(rows);
        return out;
      },
      py::arg("text"), py::arg("jobs") = 1,
      "Parses a scenario config (JSON text), runs every row, and returns the "
      "rendered metrics CSV and summary JSON.");
}
