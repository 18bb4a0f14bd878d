#include "proxy6/sim.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <unordered_map>
#include <variant>
#include <vector>

#include "proxy6/address.hpp"
#include "proxy6/baselines.hpp"
#include "proxy6/ipgen.hpp"
#include "proxy6/protocol.hpp"
#include "proxy6/rng.hpp"

namespace proxy6::sim {

using addr::DeviceIdentifier;
using addr::default_prefix;
using addr::InvalidIdentifier;
using addr::Ipv6Address;
using addr::is_assignable;

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Proposed: return "proposed";
    case Scheme::Dad: return "dad";
    case Scheme::Dhcp: return "dhcp";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
  if (name == "proposed") return Scheme::Proposed;
  if (name == "dad") return Scheme::Dad;
  if (name == "dhcp") return Scheme::Dhcp;
  return std::nullopt;
}

std::string join_order_name(JoinOrder order) {
  switch (order) {
    case JoinOrder::Bfs: return "bfs";
    case JoinOrder::Id: return "id";
    case JoinOrder::Random: return "random";
  }
  return "unknown";
}

std::optional<JoinOrder> join_order_from_name(const std::string& name) {
  if (name == "bfs") return JoinOrder::Bfs;
  if (name == "id") return JoinOrder::Id;
  if (name == "random") return JoinOrder::Random;
  return std::nullopt;
}

namespace {

// Baseline wire payloads (the proposed-scheme payloads live in protocol.hpp).
struct DapProbe {
  DeviceIdentifier tentative;
  NodeId prober = -1;
  int attempt = 0;
};
struct Acn {
  DeviceIdentifier tentative;
  int attempt = 0;
};
struct DhcpDiscover {
  NodeId joiner = -1;
  int attempt = 0;
};
struct DhcpOffer {
  Ipv6Address assigned;
};
struct DhcpDeny {};

using Payload = std::variant<proto::AddrRequest, proto::AddrReply, proto::AddrDeny,
                             proto::EscalateRequest, DapProbe, Acn, DhcpDiscover,
                             DhcpOffer, DhcpDeny>;

struct Message {
  JoinId join = -1;
  Payload payload;
  std::vector<NodeId> route;  // unicast chain; carries the full relay history
  size_t hop = 0;             // index in route of the node being travelled to
  int64_t flood = -1;         // flood instance id; -1 for unicast
  NodeId from = -1;           // previous hop, used for flood fan-out
};

enum class EventKind { JoinStart, Deliver, TimerArm, TimerFire };

struct Event {
  int64_t time = 0;
  uint64_t seq = 0;
  EventKind kind = EventKind::Deliver;
  NodeId at = -1;
  JoinId join = -1;
  int timer_kind = 0;
  int epoch = 0;
  Message msg;
};

// Equal-time events run in scheduling order; TimerFire events are re-queued
// at fire time so every same-tick delivery is processed before the timer's
// decision (deliveries for tick T are always scheduled before T starts).
struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

class Engine;

class Driver {
 public:
  virtual ~Driver() = default;
  virtual void init() = 0;
  virtual void start_join(JoinId join, NodeId node) = 0;
  virtual void deliver(NodeId at, const Message& msg) = 0;
  virtual void on_timer(NodeId at, JoinId join, int kind, int epoch) = 0;
};

class Engine {
 public:
  Engine(const net::Topology& topo, const RunSpec& spec)
      : topo_(topo), spec_(spec), loss_rng_(Rng::mix(spec.seed, kStreamLoss)) {}

  void set_driver(Driver* driver) { driver_ = driver; }
  const net::Topology& topo() const { return topo_; }
  const RunSpec& spec() const { return spec_; }
  int64_t now() const { return now_; }

  RunMetrics run() {
    driver_->init();
    queue_joins();
    drain();
    if (completed_ != static_cast<int>(joiners_.size())) {
      throw NonQuiescent("event queue drained with unresolved joins");
    }
    metrics_.finalize();
    return std::move(metrics_);
  }

  RunMetrics run_single_flood(NodeId origin) {
    flood(origin, DapProbe{}, -1);
    drain();
    return std::move(metrics_);
  }

  // --- address registry and metrics, used by drivers ---

  void register_holder(NodeId node, const DeviceIdentifier& id) {
    holders_.emplace(id.to_u64(), node);
  }

  std::optional<NodeId> holder_of(const DeviceIdentifier& id) const {
    auto it = holders_.find(id.to_u64());
    if (it == holders_.end()) return std::nullopt;
    return it->second;
  }

  // Structural audit of every issued address: it must be assignable and its
  // byte-derived parent must be the issuer.
  void note_issued(const DeviceIdentifier& issuer, const DeviceIdentifier& child) {
    bool ok = false;
    try {
      if (is_assignable(child)) {
        auto parent = addr::parent_of(child);
        ok = parent.has_value() && *parent == issuer;
      }
    } catch (const InvalidIdentifier&) {
      ok = false;
    }
    if (!ok) metrics_.violations++;
  }

  void join_configured(JoinId join, NodeId node, const DeviceIdentifier& id) {
    JoinRecord& rec = metrics_.per_join[join];
    if (rec.outcome != JoinOutcome::Pending) return;
    rec.outcome = JoinOutcome::Configured;
    rec.latency = join_start_[join] >= 0 ? now_ - join_start_[join] : 0;
    if (!holders_.emplace(id.to_u64(), node).second) {
      metrics_.duplicates++;  // another node already holds this identifier
    }
    finish_join();
  }

  void join_failed(JoinId join, JoinOutcome outcome) {
    JoinRecord& rec = metrics_.per_join[join];
    if (rec.outcome != JoinOutcome::Pending) return;
    rec.outcome = outcome;
    finish_join();
  }

  void count_escalation(JoinId join) { metrics_.per_join[join].escalations++; }
  void count_retry(JoinId join) { metrics_.per_join[join].retries++; }

  // --- transport, used by drivers ---

  // Relays a message along an explicit node chain, starting with the
  // transmission route[start] -> route[start+1]; only the final node gets a
  // deliver callback. Consecutive chain entries are unit-cost hops.
  void unicast(std::vector<NodeId> route, size_t start, Payload payload, JoinId join) {
    if (route.size() < 2 || start + 1 >= route.size()) {
      throw std::logic_error("unicast route must have a hop to travel");
    }
    Message m;
    m.join = join;
    m.payload = std::move(payload);
    m.route = std::move(route);
    m.hop = start + 1;
    const NodeId from = m.route[start];
    const NodeId to = m.route[m.hop];
    transmit(from, to, std::move(m));
  }

  // Duplicate-suppressed flood: every node forwards the first copy it
  // receives to all neighbors except the arrival link.
  void flood(NodeId origin, Payload payload, JoinId join) {
    metrics_.floods++;
    const int64_t id = next_flood_++;
    FloodState& st = floods_[id];
    st.seen.assign(topo_.n(), false);
    st.seen[origin] = true;
    forward_flood(origin, -1, id, payload, join);
    auto it = floods_.find(id);
    if (it != floods_.end() && it->second.outstanding == 0) floods_.erase(it);
  }

  void set_timer(NodeId at, JoinId join, int64_t delay, int kind, int epoch) {
    Event ev;
    ev.time = now_ + delay;
    ev.kind = EventKind::TimerArm;
    ev.at = at;
    ev.join = join;
    ev.timer_kind = kind;
    ev.epoch = epoch;
    push(std::move(ev));
  }

  // Shortest path between two distinct nodes, endpoints included. Parent
  // trees are cached per source (the server / a conflict holder).
  std::vector<NodeId> path_between(NodeId from, NodeId to) {
    const std::vector<NodeId>& parent = bfs_parents(from);
    std::vector<NodeId> path;
    for (NodeId v = to; v != from; v = parent[v]) path.push_back(v);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  struct FloodState {
    std::vector<bool> seen;
    int64_t outstanding = 0;  // copies in flight; state erased at zero
  };

  void push(Event ev) {
    ev.seq = seq_++;
    heap_.push_back(std::move(ev));
    std::push_heap(heap_.begin(), heap_.end(), EventAfter{});
  }

  Event pop() {
    std::pop_heap(heap_.begin(), heap_.end(), EventAfter{});
    Event ev = std::move(heap_.back());
    heap_.pop_back();
    return ev;
  }

  void transmit(NodeId from, NodeId to, Message m) {
    (void)from;
    metrics_.sent++;
    metrics_.messages_total++;
    if (m.join >= 0) {
      metrics_.per_join[m.join].messages++;
      if (join_start_[m.join] < 0) join_start_[m.join] = now_;
    }
    if (spec_.loss_rate > 0.0 && loss_rng_.next_unit() < spec_.loss_rate) {
      metrics_.lost++;
      return;
    }
    if (m.flood >= 0) floods_[m.flood].outstanding++;
    Event ev;
    ev.time = now_ + 1;
    ev.kind = EventKind::Deliver;
    ev.at = to;
    ev.join = m.join;
    ev.msg = std::move(m);
    push(std::move(ev));
  }

  void forward_flood(NodeId at, NodeId arrival, int64_t id, const Payload& payload,
                     JoinId join) {
    for (NodeId nbr : topo_.neighbors(at)) {
      if (nbr == arrival) continue;
      Message m;
      m.join = join;
      m.payload = payload;
      m.flood = id;
      m.from = at;
      transmit(at, nbr, std::move(m));
    }
  }

  void process_deliver(Event& ev) {
    metrics_.delivered++;
    Message& m = ev.msg;
    if (m.flood >= 0) {
      auto it = floods_.find(m.flood);
      FloodState& st = it->second;
      st.outstanding--;
      if (!st.seen[ev.at]) {
        st.seen[ev.at] = true;
        driver_->deliver(ev.at, m);
        forward_flood(ev.at, m.from, m.flood, m.payload, m.join);
      }
      if (st.outstanding == 0) floods_.erase(it);
      return;
    }
    if (m.hop + 1 == m.route.size()) {
      driver_->deliver(ev.at, m);
      return;
    }
    m.hop++;
    const NodeId next = m.route[m.hop];
    transmit(ev.at, next, std::move(m));
  }

  void drain() {
    uint64_t processed = 0;
    while (!heap_.empty()) {
      if (++processed > spec_.event_budget) {
        throw NonQuiescent("event budget exceeded before quiescence");
      }
      Event ev = pop();
      now_ = ev.time;
      switch (ev.kind) {
        case EventKind::JoinStart:
          driver_->start_join(ev.join, ev.at);
          break;
        case EventKind::Deliver:
          process_deliver(ev);
          break;
        case EventKind::TimerArm: {
          Event fire = std::move(ev);
          fire.kind = EventKind::TimerFire;
          push(std::move(fire));
          break;
        }
        case EventKind::TimerFire:
          driver_->on_timer(ev.at, ev.join, ev.timer_kind, ev.epoch);
          break;
      }
    }
  }

  std::vector<NodeId> build_join_order() const {
    std::vector<NodeId> order;
    order.reserve(topo_.n());
    if (spec_.join_order == JoinOrder::Bfs) {
      std::vector<char> seen(topo_.n(), 0);
      std::queue<NodeId> queue;
      seen[spec_.root] = 1;
      queue.push(spec_.root);
      order.push_back(spec_.root);
      while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop();
        for (NodeId u : topo_.neighbors(v)) {
          if (!seen[u]) {
            seen[u] = 1;
            queue.push(u);
            order.push_back(u);
          }
        }
      }
    } else {
      for (NodeId v = 0; v < topo_.n(); ++v) order.push_back(v);
      if (spec_.join_order == JoinOrder::Random) {
        Rng rng(Rng::mix(spec_.seed, kStreamOrder));
        for (size_t i = order.size(); i > 1; --i) {
          const size_t k = static_cast<size_t>(rng.next_below(i));
          std::swap(order[i - 1], order[k]);
        }
      }
    }
    if (spec_.scheme != Scheme::Dad) {
      order.erase(std::remove(order.begin(), order.end(), spec_.root), order.end());
    }
    if (spec_.joins >= 0 && order.size() > static_cast<size_t>(spec_.joins)) {
      order.resize(spec_.joins);
    }
    return order;
  }

  void queue_joins() {
    joiners_ = build_join_order();
    metrics_.per_join.resize(joiners_.size());
    join_start_.assign(joiners_.size(), -1);
    for (size_t j = 0; j < joiners_.size(); ++j) {
      metrics_.per_join[j].join = static_cast<JoinId>(j);
      metrics_.per_join[j].node = joiners_[j];
    }
    for (int i = 0; i < spec_.concurrency; ++i) dispatch_next();
  }

  void dispatch_next() {
    if (next_join_ >= static_cast<JoinId>(joiners_.size())) return;
    const JoinId j = next_join_++;
    Event ev;
    ev.time = now_;
    ev.kind = EventKind::JoinStart;
    ev.at = joiners_[j];
    ev.join = j;
    push(std::move(ev));
  }

  void finish_join() {
    completed_++;
    dispatch_next();
  }

  const std::vector<NodeId>& bfs_parents(NodeId src) {
    auto it = parent_cache_.find(src);
    if (it != parent_cache_.end()) return it->second;
    std::vector<NodeId> parent(topo_.n(), -1);
    std::queue<NodeId> queue;
    parent[src] = src;
    queue.push(src);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop();
      for (NodeId u : topo_.neighbors(v)) {
        if (parent[u] < 0) {
          parent[u] = v;
          queue.push(u);
        }
      }
    }
    return parent_cache_.emplace(src, std::move(parent)).first->second;
  }

  const net::Topology& topo_;
  RunSpec spec_;
  Driver* driver_ = nullptr;

  std::vector<Event> heap_;
  uint64_t seq_ = 0;
  int64_t now_ = 0;

  RunMetrics metrics_;
  std::vector<int64_t> join_start_;
  std::vector<NodeId> joiners_;
  JoinId next_join_ = 0;
  int completed_ = 0;

  std::unordered_map<uint64_t, NodeId> holders_;
  std::unordered_map<int64_t, FloodState> floods_;
  int64_t next_flood_ = 0;
  Rng loss_rng_;
  std::unordered_map<NodeId, std::vector<NodeId>> parent_cache_;
};

// ---------------------------------------------------------------------------
// Proposed scheme driver: join via a configured neighbor, escalation along
// allocation-tree edges, reply retracing the chain. No floods, ever.

class ProposedDriver : public Driver {
 public:
  explicit ProposedDriver(Engine& eng) : eng_(eng), nodes_(eng.topo().n()) {}

  void init() override {
    PN& root = nodes_[eng_.spec().root];
    proto::configure_controller(root.st, default_prefix());
    eng_.register_holder(eng_.spec().root, root.st.address->id);
  }

  void start_join(JoinId join, NodeId node) override {
    nodes_[node].join = join;
    attempt(join, node);
  }

  void deliver(NodeId at, const Message& m) override {
    if (const auto* req = std::get_if<proto::AddrRequest>(&m.payload)) {
      serve(at, m, req->requester);
      return;
    }
    if (const auto* esc = std::get_if<proto::EscalateRequest>(&m.payload)) {
      serve(at, m, esc->requester);
      return;
    }
    if (const auto* rep = std::get_if<proto::AddrReply>(&m.payload)) {
      PN& pn = nodes_[at];
      if (pn.done) return;  // gave up earlier; the late grant leaks
      if (!proto::accept_assignment(pn.st, rep->assigned)) return;
      pn.done = true;
      pn.epoch++;
      eng_.join_configured(pn.join, at, rep->assigned.id);
      return;
    }
    if (std::get_if<proto::AddrDeny>(&m.payload)) {
      PN& pn = nodes_[at];
      if (pn.done) return;
      pn.done = true;
      pn.epoch++;
      eng_.join_failed(pn.join, JoinOutcome::Denied);
      return;
    }
  }

  void on_timer(NodeId at, JoinId join, int kind, int epoch) override {
    if (kind != kRetryTimer) return;
    PN& pn = nodes_[at];
    if (pn.done || pn.st.configured() || epoch != pn.epoch) return;
    eng_.count_retry(join);
    attempt(join, at);
  }

 private:
  struct PN {
    proto::NodeState st;
    JoinId join = -1;
    int epoch = 0;
    int attempts = 0;
    bool done = false;
  };
  static constexpr int kRetryTimer = 1;

  void attempt(JoinId join, NodeId node) {
    PN& pn = nodes_[node];
    if (pn.attempts >= eng_.spec().retry_limit) {
      pn.done = true;
      eng_.join_failed(join, JoinOutcome::Timeout);
      return;
    }
    pn.attempts++;
    pn.epoch++;
    std::vector<proto::NeighborInfo> nbrs;
    nbrs.reserve(eng_.topo().neighbors(node).size());
    for (NodeId u : eng_.topo().neighbors(node)) {
      nbrs.push_back({u, nodes_[u].st.configured()});
    }
    const auto proxy = proto::select_proxy(nbrs);
    if (proxy) {
      eng_.unicast({node, *proxy}, 0, proto::AddrRequest{node}, join);
    }
    // No configured neighbor yet: wait silently and retry on the timer.
    eng_.set_timer(node, join, eng_.spec().retry_interval, kRetryTimer, pn.epoch);
  }

  void serve(NodeId at, const Message& m, NodeId requester) {
    PN& pn = nodes_[at];
    proto::ServeResult res = proto::serve_request(pn.st);
    if (res.assigned) {
      eng_.note_issued(pn.st.address->id, res.assigned->id);
      std::vector<NodeId> back(m.route.rbegin(), m.route.rend());
      eng_.unicast(std::move(back), 0, proto::AddrReply{*res.assigned}, m.join);
      return;
    }
    if (res.escalate_to) {
      const auto holder = eng_.holder_of(*res.escalate_to);
      if (holder) {
        eng_.count_escalation(m.join);
        std::vector<NodeId> chain = m.route;
        chain.push_back(*holder);
        const size_t start = chain.size() - 2;
        eng_.unicast(std::move(chain), start, proto::EscalateRequest{requester},
                     m.join);
        return;
      }
      // Unreachable for well-formed runs: every allocation parent is held.
    }
    std::vector<NodeId> back(m.route.rbegin(), m.route.rend());
    eng_.unicast(std::move(back), 0, proto::AddrDeny{}, m.join);
  }

  Engine& eng_;
  std::vector<PN> nodes_;
};

// ---------------------------------------------------------------------------
// Duplicate-address-detection driver: random tentative identifier, probe
// flood, wait 2·t·d, configure unless a conflict notice arrived.

class DadDriver : public Driver {
 public:
  explicit DadDriver(Engine& eng) : eng_(eng), nodes_(eng.topo().n()) {}

  void init() override {}

  void start_join(JoinId join, NodeId node) override {
    DN& dn = nodes_[node];
    dn.join = join;
    dn.rng.emplace(Rng::mix(Rng::mix(eng_.spec().seed, kStreamTentative),
                            static_cast<uint64_t>(node)));
    probe(join, node);
  }

  void deliver(NodeId at, const Message& m) override {
    if (const auto* probe_msg = std::get_if<DapProbe>(&m.payload)) {
      const DN& dn = nodes_[at];
      if (dn.configured && dn.id == probe_msg->tentative) {
        eng_.unicast(eng_.path_between(at, probe_msg->prober), 0,
                     Acn{probe_msg->tentative, probe_msg->attempt}, m.join);
      }
      return;
    }
    if (const auto* acn = std::get_if<Acn>(&m.payload)) {
      DN& dn = nodes_[at];
      if (dn.done || dn.configured) return;
      if (acn->attempt != dn.attempt || !(acn->tentative == dn.tentative)) {
        return;  // notice for an abandoned attempt
      }
      eng_.count_retry(dn.join);
      probe(dn.join, at);
      return;
    }
  }

  void on_timer(NodeId at, JoinId join, int kind, int epoch) override {
    if (kind != kWaitTimer) return;
    DN& dn = nodes_[at];
    if (dn.done || dn.configured || epoch != dn.epoch) return;
    dn.configured = true;
    dn.id = dn.tentative;
    dn.done = true;
    eng_.join_configured(join, at, dn.id);
  }

 private:
  struct DN {
    bool configured = false;
    DeviceIdentifier id;
    DeviceIdentifier tentative;
    JoinId join = -1;
    int attempt = 0;
    int epoch = 0;
    bool done = false;
    std::optional<Rng> rng;
  };
  static constexpr int kWaitTimer = 1;

  void probe(JoinId join, NodeId node) {
    DN& dn = nodes_[node];
    if (dn.attempt >= eng_.spec().retry_limit) {
      dn.done = true;
      eng_.join_failed(join, JoinOutcome::Timeout);
      return;
    }
    dn.attempt++;
    dn.epoch++;
    const baseline::DadConfig cfg{eng_.spec().dad_space, eng_.spec().retry_limit};
    dn.tentative = baseline::draw_tentative(*dn.rng, cfg);
    eng_.flood(node, DapProbe{dn.tentative, node, dn.attempt}, join);
    eng_.set_timer(node, join, 2 * static_cast<int64_t>(eng_.topo().diameter),
                   kWaitTimer, dn.epoch);
  }

  Engine& eng_;
  std::vector<DN> nodes_;
};

// ---------------------------------------------------------------------------
// Centralized-server driver: flooded discover, sequential lease, unicast
// offer along the shortest path back.

class DhcpDriver : public Driver {
 public:
  explicit DhcpDriver(Engine& eng) : eng_(eng), nodes_(eng.topo().n()) {}

  void init() override { server_.pool = eng_.spec().dhcp_pool; }

  void start_join(JoinId join, NodeId node) override {
    nodes_[node].join = join;
    discover(join, node);
  }

  void deliver(NodeId at, const Message& m) override {
    if (const auto* disc = std::get_if<DhcpDiscover>(&m.payload)) {
      if (at != eng_.spec().root) return;  // only the server reacts
      const auto id = server_.assign(disc->joiner);
      if (id) {
        eng_.unicast(eng_.path_between(at, disc->joiner), 0,
                     DhcpOffer{Ipv6Address{default_prefix(), *id}}, m.join);
      } else {
        eng_.unicast(eng_.path_between(at, disc->joiner), 0, DhcpDeny{}, m.join);
      }
      return;
    }
    if (const auto* offer = std::get_if<DhcpOffer>(&m.payload)) {
      JN& jn = nodes_[at];
      if (jn.done || jn.configured) return;  // duplicate offer: lease leaks
      jn.configured = true;
      jn.done = true;
      eng_.join_configured(jn.join, at, offer->assigned.id);
      return;
    }
    if (std::get_if<DhcpDeny>(&m.payload)) {
      JN& jn = nodes_[at];
      if (jn.done) return;
      jn.done = true;
      eng_.join_failed(jn.join, JoinOutcome::Denied);
      return;
    }
  }

  void on_timer(NodeId at, JoinId join, int kind, int epoch) override {
    if (kind != kRetryTimer) return;
    JN& jn = nodes_[at];
    if (jn.done || jn.configured || epoch != jn.epoch) return;
    eng_.count_retry(join);
    discover(join, at);
  }

 private:
  struct JN {
    JoinId join = -1;
    int attempt = 0;
    int epoch = 0;
    bool configured = false;
    bool done = false;
  };
  static constexpr int kRetryTimer = 1;

  void discover(JoinId join, NodeId node) {
    JN& jn = nodes_[node];
    if (jn.attempt >= eng_.spec().retry_limit) {
      jn.done = true;
      eng_.join_failed(join, JoinOutcome::Timeout);
      return;
    }
    jn.attempt++;
    jn.epoch++;
    eng_.flood(node, DhcpDiscover{node, jn.attempt}, join);
    // The round trip takes at most 2·d, so 2·d + 1 cannot fire spuriously.
    eng_.set_timer(node, join, 2 * static_cast<int64_t>(eng_.topo().diameter) + 1,
                   kRetryTimer, jn.epoch);
  }

  Engine& eng_;
  std::vector<JN> nodes_;
  baseline::DhcpServerState server_;
};

class ProbeDriver : public Driver {
 public:
  int64_t reached = 0;
  void init() override {}
  void start_join(JoinId, NodeId) override {}
  void deliver(NodeId, const Message&) override { reached++; }
  void on_timer(NodeId, JoinId, int, int) override {}
};

void validate_spec(const net::Topology& topo, const RunSpec& spec) {
  if (spec.root < 0 || spec.root >= topo.n()) {
    throw std::invalid_argument("root node out of range");
  }
  if (spec.loss_rate < 0.0 || spec.loss_rate > 1.0) {
    throw std::invalid_argument("loss rate outside [0, 1]");
  }
  if (spec.joins < -1) throw std::invalid_argument("joins must be >= -1");
  if (spec.concurrency < 1) throw std::invalid_argument("concurrency must be >= 1");
  if (spec.retry_interval < 1) {
    throw std::invalid_argument("retry interval must be >= 1");
  }
  if (spec.retry_limit < 1) throw std::invalid_argument("retry limit must be >= 1");
  if (spec.event_budget < 1) throw std::invalid_argument("event budget must be >= 1");
}

}  // namespace

RunMetrics run_scenario(const net::Topology& topo, const RunSpec& spec) {
  validate_spec(topo, spec);
  Engine eng(topo, spec);
  std::unique_ptr<Driver> driver;
  switch (spec.scheme) {
    case Scheme::Proposed:
      driver = std::make_unique<ProposedDriver>(eng);
      break;
    case Scheme::Dad:
      driver = std::make_unique<DadDriver>(eng);
      break;
    case Scheme::Dhcp:
      driver = std::make_unique<DhcpDriver>(eng);
      break;
  }
  eng.set_driver(driver.get());
  return eng.run();
}

FloodProbeResult flood_probe(const net::Topology& topo, NodeId origin,
                             double loss_rate, uint64_t seed) {
  RunSpec spec;
  spec.seed = seed;
  spec.loss_rate = loss_rate;
  spec.joins = 0;
  Engine eng(topo, spec);
  ProbeDriver driver;
  eng.set_driver(&driver);
  const RunMetrics m = eng.run_single_flood(origin);
  return FloodProbeResult{m.sent, driver.reached, m.lost};
}

}  // namespace proxy6::sim
