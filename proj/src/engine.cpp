#include "fogsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace fogsim {

namespace detail {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

using MsgPtr = std::shared_ptr<MessageInstance>;

struct Event {
  enum class Kind { SourceTick, ServiceTick, ChannelKick, LinkArrival, ServeComplete, PolicyTick };
  double time = 0;
  std::uint64_t seq = 0;
  Kind kind = Kind::SourceTick;
  int des = -1;
  int aux = -1;  // service-source rule index
  NodeId from = 0;
  NodeId to = 0;
  MsgPtr msg;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct Proc {
  int des = -1;
  ProcessKind kind = ProcessKind::Source;
  NodeId node = 0;
  std::string app;
  std::string module;          // servers and sinks
  std::string source_message;  // sources
  TemporalDistribution dist;   // sources and ticks
  RandomStream stream;
  bool alive = true;
  bool first_fire_done = false;

  // single-server FIFO state (servers and sinks)
  std::deque<MsgPtr> queue;
  bool busy = false;
  MsgPtr serving;
  std::uint64_t busy_event = 0;
  std::uint64_t tick_event = 0;
  std::map<int, std::uint64_t> service_tick_events;  // service-source rule -> pending event

  // policy bindings (PolicyTick / Custom processes)
  PlacementPolicy* placement = nullptr;
  PopulationPolicy* population = nullptr;
  CustomProcess* custom = nullptr;
};

struct Channel {
  NodeId from = 0;
  NodeId to = 0;
  double bw = 1;
  double pr = 0;
  std::deque<MsgPtr> queue;
  bool busy = false;
  MsgPtr in_service;
  std::uint64_t arrival_event = 0;
};

}  // namespace

class EngineImpl {
 public:
  // the engine owns its scenario copy so callers may pass temporaries
  explicit EngineImpl(Scenario scenario) : scenario_(std::move(scenario)), topo_(scenario_.topology) {
    for (const auto& dep : scenario_.apps) {
      validate(dep.app);
      if (!apps_.emplace(dep.app.name, &dep.app).second)
        fail("scenario: duplicate application name " + dep.app.name);
      placements_.push_back(dep.placement ? dep.placement->clone() : nullptr);
      populations_.push_back(dep.population ? dep.population->clone() : nullptr);
    }
    if (!scenario_.selection) fail("scenario: no selection policy");
    selection_ = scenario_.selection->clone();
    for (const auto& p : scenario_.processes) customs_.push_back(p->clone());
  }

  void initialize() {
    if (initialized_) return;
    initialized_ = true;
    Sim sim(*this);
    for (std::size_t i = 0; i < scenario_.apps.size(); ++i) {
      if (placements_[i]) placements_[i]->initial_allocation(sim, scenario_.apps[i].app.name);
    }
    for (std::size_t i = 0; i < scenario_.apps.size(); ++i) {
      if (populations_[i]) populations_[i]->initial_allocation(sim, scenario_.apps[i].app.name);
    }
    for (std::size_t i = 0; i < scenario_.apps.size(); ++i) {
      if (placements_[i] && placements_[i]->activation)
        add_policy_tick(*placements_[i]->activation, placements_[i].get(), nullptr, nullptr);
      if (populations_[i] && populations_[i]->activation)
        add_policy_tick(*populations_[i]->activation, nullptr, populations_[i].get(), nullptr);
    }
    for (const auto& c : customs_) add_policy_tick(c->activation, nullptr, nullptr, c.get());
  }

  ResultSet run(double until) {
    if (!(until > 0)) fail("run: until must be > 0");
    initialize();
    while (!events_.empty() && events_.top().time <= until) {
      Event ev = events_.top();
      events_.pop();
      if (cancelled_.erase(ev.seq)) continue;
      clock_ = ev.time;
      dispatch(ev);
    }
    clock_ = until;
    results_.end_time = until;
    results_.final_nodes = topo_.node_count();
    results_.final_links = topo_.link_count();
    return std::move(results_);
  }

  // ---- deployment API (Sim) ----

  int deploy_source(const std::string& app_name, NodeId node, const std::string& message,
                    const TemporalDistribution& dist) {
    const Application& app = app_ref(app_name);
    if (!topo_.has_node(node)) fail("deploy_source: unknown node " + std::to_string(node));
    if (std::find(app.source_messages.begin(), app.source_messages.end(), message) ==
        app.source_messages.end())
      fail("deploy_source: " + message + " is not a source message of " + app_name);
    dist.validate();
    Proc proc = make_proc(ProcessKind::Source, node, app_name);
    proc.source_message = message;
    proc.dist = dist;
    const int des = proc.des;
    const double delta = next_interval(dist, proc.stream, true);
    procs_.emplace(des, std::move(proc));
    sources_[app_name].insert(des);
    schedule_tick(des, Event::Kind::SourceTick, clock_ + delta);
    log_deployment(des, ProcessKind::Source, app_name, message, node, false);
    return des;
  }

  int deploy_module(const std::string& app_name, const std::string& module, NodeId node) {
    const Application& app = app_ref(app_name);
    const AppModule* mod = app.find_module(module);
    if (!mod) fail("deploy_module: unknown module " + module + " in " + app_name);
    if (mod->kind != ModuleKind::Module)
      fail("deploy_module: module " + module + " is not of MODULE kind");
    if (!topo_.has_node(node)) fail("deploy_module: unknown node " + std::to_string(node));
    if (!(topo_.node(node).ipt > 0))
      fail("deploy_module: node " + std::to_string(node) + " has no compute capacity (IPT)");
    Proc proc = make_proc(ProcessKind::ModuleServer, node, app_name);
    proc.module = module;
    const int des = proc.des;
    auto [it, _] = procs_.emplace(des, std::move(proc));
    replicas_[{app_name, module}][des] = node;
    // every replica runs its own periodic service sources
    for (std::size_t r = 0; r < app.service_sources.size(); ++r) {
      if (app.service_sources[r].module != module) continue;
      const double delta = next_interval(app.service_sources[r].distribution, it->second.stream, true);
      const std::uint64_t seq = schedule(Event{clock_ + delta, 0, Event::Kind::ServiceTick, des,
                                               static_cast<int>(r), 0, 0, nullptr});
      it->second.service_tick_events[static_cast<int>(r)] = seq;
    }
    log_deployment(des, ProcessKind::ModuleServer, app_name, module, node, false);
    return des;
  }

  int deploy_sink(const std::string& app_name, const std::string& module, NodeId node) {
    const Application& app = app_ref(app_name);
    const AppModule* mod = app.find_module(module);
    if (!mod) fail("deploy_sink: unknown module " + module + " in " + app_name);
    if (mod->kind != ModuleKind::Sink) fail("deploy_sink: module " + module + " is not of SINK kind");
    if (!topo_.has_node(node)) fail("deploy_sink: unknown node " + std::to_string(node));
    Proc proc = make_proc(ProcessKind::Sink, node, app_name);
    proc.module = module;
    const int des = proc.des;
    procs_.emplace(des, std::move(proc));
    replicas_[{app_name, module}][des] = node;
    log_deployment(des, ProcessKind::Sink, app_name, module, node, false);
    return des;
  }

  void stop_process(int des) {
    auto it = procs_.find(des);
    if (it == procs_.end()) fail("stop_process: unknown des id " + std::to_string(des));
    Proc& proc = it->second;
    if (!proc.alive) return;
    proc.alive = false;
    if (proc.tick_event) cancelled_.insert(proc.tick_event);
    for (const auto& [_, seq] : proc.service_tick_events) cancelled_.insert(seq);
    proc.service_tick_events.clear();
    // the in-service message (if any) completes; queued ones are discarded
    for (const MsgPtr& m : proc.queue)
      drop(m->id, DropReason::NodeRemoved,
           "destination undeployed des=" + std::to_string(des) + " module=" + proc.module);
    proc.queue.clear();
    deregister(proc);
    log_deployment(des, proc.kind, proc.app,
                   proc.kind == ProcessKind::Source ? proc.source_message : proc.module, proc.node,
                   true);
  }

  void fail_node(NodeId node) {
    if (!topo_.has_node(node)) fail("fail_node: unknown node " + std::to_string(node));
    FailureEvent fe;
    fe.time = clock_;
    fe.node = node;

    const std::vector<LinkKey> removed = topo_.remove_node(node);
    fe.links_removed = removed.size();

    // reroute set: (message, stranded-at node), in deterministic order
    std::vector<std::pair<MsgPtr, NodeId>> to_reroute;

    // channels over removed links: waiting messages are discarded; a message
    // in service toward the failed node turns back to its sender, one already
    // past it finishes the wire transit and revalidates on arrival
    std::vector<std::pair<NodeId, NodeId>> dirs;
    for (const LinkKey& key : removed) {
      dirs.emplace_back(key.u, key.v);
      dirs.emplace_back(key.v, key.u);
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& dir : dirs) {
      auto cit = channels_.find(dir);
      if (cit == channels_.end()) continue;
      Channel& ch = cit->second;
      for (const MsgPtr& m : ch.queue) {
        --network_buffer_;
        ++fe.dropped;
        drop(m->id, DropReason::LinkRemoved,
             "link (" + std::to_string(dir.first) + " " + std::to_string(dir.second) +
                 ") removed with node " + std::to_string(node));
      }
      if (ch.in_service && ch.to == node) {
        cancelled_.insert(ch.arrival_event);
        to_reroute.emplace_back(ch.in_service, ch.from);
      }
      channels_.erase(cit);
    }

    // processes hosted on the failed node
    for (auto& [des, proc] : procs_) {
      if (!proc.alive || proc.node != node) continue;
      if (proc.kind == ProcessKind::PolicyTick || proc.kind == ProcessKind::Custom) continue;
      proc.alive = false;
      if (proc.tick_event) cancelled_.insert(proc.tick_event);
      for (const auto& [_, seq] : proc.service_tick_events) cancelled_.insert(seq);
      proc.service_tick_events.clear();
      if (proc.busy) {
        cancelled_.insert(proc.busy_event);
        proc.busy = false;
        ++fe.dropped;
        drop(proc.serving ? proc.serving->id : -1, DropReason::NodeRemoved,
             "in service at removed node " + std::to_string(node) + " des=" + std::to_string(des));
        proc.serving.reset();
      }
      for (const MsgPtr& m : proc.queue) {
        ++fe.dropped;
        drop(m->id, DropReason::NodeRemoved,
             "queued at removed node " + std::to_string(node) + " des=" + std::to_string(des));
      }
      proc.queue.clear();
      deregister(proc);
      log_deployment(des, proc.kind, proc.app,
                     proc.kind == ProcessKind::Source ? proc.source_message : proc.module,
                     proc.node, true);
    }

    // messages waiting on live links whose remaining path crosses the node
    // are rerouted from where they stand
    for (auto& [dir, ch] : channels_) {
      if (ch.queue.empty()) continue;
      std::deque<MsgPtr> keep;
      for (MsgPtr& m : ch.queue) {
        if (remaining_path_contains(*m, node)) {
          --network_buffer_;
          to_reroute.emplace_back(std::move(m), dir.first);
        } else {
          keep.push_back(std::move(m));
        }
      }
      ch.queue.swap(keep);
    }

    for (auto& [msg, from] : to_reroute) {
      if (reroute_or_drop(msg, from, "node " + std::to_string(node) + " failed"))
        ++fe.rerouted;
      else
        ++fe.dropped;
    }

    results_.failures.push_back(fe);
    invalidate_dist_cache();
  }

  // ---- queries (Sim) ----

  std::vector<Replica> replicas(const std::string& app_name, const std::string& module) const {
    std::vector<Replica> out;
    auto it = replicas_.find({app_name, module});
    if (it == replicas_.end()) return out;
    for (const auto& [des, node] : it->second) out.push_back({des, node});
    return out;
  }

  std::vector<Sim::SourceInfo> sources(const std::string& app_name) const {
    std::vector<Sim::SourceInfo> out;
    auto it = sources_.find(app_name);
    if (it == sources_.end()) return out;
    for (int des : it->second) {
      const Proc& p = procs_.at(des);
      out.push_back({des, p.node, p.source_message, p.dist});
    }
    return out;
  }

  bool node_hosts_source(NodeId node) const {
    for (const auto& [_, ids] : sources_)
      for (int des : ids)
        if (procs_.at(des).node == node) return true;
    return false;
  }

  int hop_distance(NodeId from, NodeId to) {
    if (!topo_.has_node(from) || !topo_.has_node(to)) return -1;
    const auto& dist = dists_to(to);
    auto it = dist.find(from);
    return it == dist.end() ? -1 : it->second;
  }

  std::optional<std::vector<NodeId>> route_path(NodeId from, NodeId to) {
    if (!topo_.has_node(from) || !topo_.has_node(to)) return std::nullopt;
    if (from == to) return std::vector<NodeId>{from};
    const auto& dist = dists_to(to);
    auto it = dist.find(from);
    if (it == dist.end()) return std::nullopt;
    std::vector<NodeId> path{from};
    NodeId cur = from;
    int remaining = it->second;
    while (cur != to) {
      for (NodeId nb : topo_.neighbors(cur)) {
        auto nit = dist.find(nb);
        if (nit != dist.end() && nit->second == remaining - 1) {
          cur = nb;
          break;
        }
      }
      --remaining;
      path.push_back(cur);
    }
    return path;
  }

  std::optional<Route> peek_route(const std::string& app_name, const std::string& message,
                                  NodeId from, int src_des) {
    const Application& app = app_ref(app_name);
    const MessageType* mt = app.find_message(message);
    if (!mt) fail("peek_route: unknown message " + message + " in " + app_name);
    Sim sim(*this);
    return selection_->peek(sim, app_name, *mt, from, src_des);
  }

  const Application& app_ref(const std::string& name) const {
    auto it = apps_.find(name);
    if (it == apps_.end()) fail("unknown application " + name);
    return *it->second;
  }

  std::vector<std::string> app_names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : apps_) out.push_back(name);
    return out;
  }

  void note(const std::string& line) { results_.diagnostics.push_back(line); }

  void record_series(const std::string& series, double value) {
    results_.series[series].emplace_back(clock_, value);
  }

  double now() const { return clock_; }
  const TopologyGraph& topology() const { return topo_; }

 private:
  // ---- event plumbing ----

  std::uint64_t schedule(Event ev) {
    ev.seq = ++event_seq_;
    events_.push(std::move(ev));
    return event_seq_;
  }

  void schedule_tick(int des, Event::Kind kind, double t) {
    Event ev;
    ev.time = t;
    ev.kind = kind;
    ev.des = des;
    procs_.at(des).tick_event = schedule(std::move(ev));
  }

  Proc make_proc(ProcessKind kind, NodeId node, const std::string& app_name) {
    Proc proc;
    proc.des = next_des_++;
    proc.kind = kind;
    proc.node = node;
    proc.app = app_name;
    proc.stream = RandomStream::derive(scenario_.seed, static_cast<std::uint64_t>(proc.des));
    return proc;
  }

  void add_policy_tick(const TemporalDistribution& dist, PlacementPolicy* placement,
                       PopulationPolicy* population, CustomProcess* custom) {
    Proc proc = make_proc(custom ? ProcessKind::Custom : ProcessKind::PolicyTick, -1, "");
    proc.dist = dist;
    proc.placement = placement;
    proc.population = population;
    proc.custom = custom;
    const int des = proc.des;
    const double delta = next_interval(dist, proc.stream, true);
    procs_.emplace(des, std::move(proc));
    schedule_tick(des, Event::Kind::PolicyTick, clock_ + delta);
  }

  void deregister(const Proc& proc) {
    if (proc.kind == ProcessKind::Source) {
      auto it = sources_.find(proc.app);
      if (it != sources_.end()) it->second.erase(proc.des);
    } else if (proc.kind == ProcessKind::ModuleServer || proc.kind == ProcessKind::Sink) {
      auto it = replicas_.find({proc.app, proc.module});
      if (it != replicas_.end()) it->second.erase(proc.des);
    }
  }

  void log_deployment(int des, ProcessKind kind, const std::string& app, const std::string& what,
                      NodeId node, bool removed) {
    results_.deployments.push_back({clock_, des, kind, app, what, node, removed});
  }

  void drop(long long id, DropReason reason, const std::string& context) {
    results_.drops.push_back({id, reason, clock_, context});
  }

  // ---- dispatch ----

  void dispatch(const Event& ev) {
    switch (ev.kind) {
      case Event::Kind::SourceTick: on_source_tick(ev.des); break;
      case Event::Kind::ServiceTick: on_service_tick(ev.des, ev.aux); break;
      case Event::Kind::ChannelKick: on_channel_kick(ev.from, ev.to); break;
      case Event::Kind::LinkArrival: on_link_arrival(ev.msg, ev.from, ev.to); break;
      case Event::Kind::ServeComplete: on_serve_complete(ev.des, ev.msg); break;
      case Event::Kind::PolicyTick: on_policy_tick(ev.des); break;
    }
  }

  void on_source_tick(int des) {
    Proc& proc = procs_.at(des);
    if (!proc.alive) return;
    const Application& app = app_ref(proc.app);
    const MessageType& mt = *app.find_message(proc.source_message);
    emit_message(app, mt, next_msg_id_++, des, proc.node, true);
    schedule_tick(des, Event::Kind::SourceTick,
                  clock_ + next_interval(proc.dist, proc.stream, false));
  }

  void on_service_tick(int des, int rule_idx) {
    Proc& proc = procs_.at(des);
    if (!proc.alive) return;
    const Application& app = app_ref(proc.app);
    const ServiceSourceRule& rule = app.service_sources.at(rule_idx);
    const MessageType& mt = *app.find_message(rule.message_out);
    emit_message(app, mt, next_msg_id_++, des, proc.node, false);
    const double delta = next_interval(rule.distribution, proc.stream, false);
    const std::uint64_t seq =
        schedule(Event{clock_ + delta, 0, Event::Kind::ServiceTick, des, rule_idx, 0, 0, nullptr});
    proc.service_tick_events[rule_idx] = seq;
  }

  void on_policy_tick(int des) {
    Proc& proc = procs_.at(des);
    if (!proc.alive) return;
    Sim sim(*this);
    if (proc.placement) proc.placement->run(sim);
    if (proc.population) proc.population->run(sim);
    if (proc.custom) proc.custom->run(sim);
    Proc& again = procs_.at(des);  // deployments may rehash nothing, but be explicit
    schedule_tick(des, Event::Kind::PolicyTick,
                  clock_ + next_interval(again.dist, again.stream, false));
  }

  // ---- message flow ----

  /// Entry point for every emission: workload sources, service sources and
  /// derived messages. Broadcast messages fan out to every deployed replica
  /// of the destination module; anything else is routed by the selection
  /// policy.
  void emit_message(const Application& app, const MessageType& mt, long long id, int src_des,
                    NodeId from, bool raw_source) {
    if (mt.broadcast) {
      const auto reps = replicas(app.name, mt.dst_module);
      if (reps.empty()) {
        drop(id, DropReason::NoPath, "no deployed replica of " + mt.dst_module + " for broadcast " +
                                         mt.name);
        return;
      }
      for (const Replica& rep : reps) {
        auto path = route_path(from, rep.node);
        if (!path) {
          drop(id, DropReason::NoPath, "broadcast " + mt.name + " cannot reach node " +
                                           std::to_string(rep.node) + " from " +
                                           std::to_string(from));
          continue;
        }
        launch(make_message(app, mt, id, src_des, rep.des_id, std::move(*path), raw_source));
      }
      return;
    }
    Sim sim(*this);
    auto route = selection_->select(sim, app.name, mt, from, src_des);
    if (!route) {
      drop(id, DropReason::NoPath,
           "no route for " + mt.name + " from node " + std::to_string(from));
      return;
    }
    launch(make_message(app, mt, id, src_des, route->dst_des, std::move(route->path), raw_source));
  }

  MsgPtr make_message(const Application& app, const MessageType& mt, long long id, int src_des,
                      int dst_des, std::vector<NodeId> path, bool raw_source) {
    auto msg = std::make_shared<MessageInstance>();
    msg->id = id;
    msg->app = app.name;
    msg->type_name = mt.name;
    msg->src_des = src_des;
    msg->dst_des = dst_des;
    msg->path = std::move(path);
    msg->hop_index = 0;
    msg->bytes = mt.bytes;
    msg->instructions = mt.instructions;
    msg->time_emit = clock_;
    msg->path_generation = topo_.generation();
    msg->raw_source = raw_source;
    return msg;
  }

  void launch(MsgPtr msg) {
    if (msg->path.size() == 1) {
      deliver(std::move(msg));
    } else {
      enqueue_on_channel(std::move(msg));
    }
  }

  void enqueue_on_channel(MsgPtr msg) {
    const NodeId from = msg->path[msg->hop_index];
    const NodeId to = msg->path[msg->hop_index + 1];
    if (!topo_.has_link(from, to)) {
      if (!reroute_or_drop(msg, from, "stale path")) return;
      return;
    }
    Channel& ch = channel(from, to);
    msg->buffer_sample = network_buffer_;
    ++network_buffer_;
    ch.queue.push_back(std::move(msg));
    Event ev;
    ev.time = clock_;
    ev.kind = Event::Kind::ChannelKick;
    ev.from = from;
    ev.to = to;
    schedule(std::move(ev));
  }

  Channel& channel(NodeId from, NodeId to) {
    auto it = channels_.find({from, to});
    if (it == channels_.end()) {
      const LinkAttrs& attrs = topo_.link(from, to);
      Channel ch;
      ch.from = from;
      ch.to = to;
      ch.bw = attrs.bw;
      ch.pr = attrs.pr;
      it = channels_.emplace(std::make_pair(from, to), std::move(ch)).first;
    }
    return it->second;
  }

  void on_channel_kick(NodeId from, NodeId to) {
    auto it = channels_.find({from, to});
    if (it == channels_.end()) return;  // link went away with its queue
    Channel& ch = it->second;
    if (!ch.busy && !ch.queue.empty()) start_link_service(ch);
  }

  void start_link_service(Channel& ch) {
    MsgPtr msg = std::move(ch.queue.front());
    ch.queue.pop_front();
    --network_buffer_;
    const double latency = hop_latency(msg->bytes, ch.bw, ch.pr);
    LinkRecord rec;
    rec.id = msg->id;
    rec.src = ch.from;
    rec.dst = ch.to;
    rec.app = msg->app;
    rec.latency = latency;
    rec.message = msg->type_name;
    rec.ctime = clock_;
    rec.size = msg->bytes;
    rec.buffer = msg->buffer_sample;
    results_.link.push_back(std::move(rec));
    ch.busy = true;
    ch.in_service = msg;
    Event ev;
    ev.time = clock_ + latency;
    ev.kind = Event::Kind::LinkArrival;
    ev.from = ch.from;
    ev.to = ch.to;
    ev.msg = std::move(msg);
    ch.arrival_event = schedule(std::move(ev));
  }

  void on_link_arrival(const MsgPtr& msg, NodeId from, NodeId to) {
    auto it = channels_.find({from, to});
    if (it != channels_.end() && it->second.in_service == msg) {
      Channel& ch = it->second;
      ch.busy = false;
      ch.in_service.reset();
      if (!ch.queue.empty()) start_link_service(ch);
    }
    ++msg->hop_index;
    continue_route(msg);
  }

  void continue_route(const MsgPtr& msg) {
    const NodeId cur = msg->path[msg->hop_index];
    if (msg->path_generation != topo_.generation()) {
      if (!remaining_path_valid(*msg)) {
        reroute_or_drop(msg, cur, "path broken by topology change");
        return;
      }
      msg->path_generation = topo_.generation();
    }
    if (msg->hop_index + 1 == msg->path.size()) {
      deliver(msg);
    } else {
      enqueue_on_channel(msg);
    }
  }

  bool remaining_path_valid(const MessageInstance& msg) const {
    for (std::size_t i = msg.hop_index; i < msg.path.size(); ++i)
      if (!topo_.has_node(msg.path[i])) return false;
    for (std::size_t i = msg.hop_index; i + 1 < msg.path.size(); ++i)
      if (!topo_.has_link(msg.path[i], msg.path[i + 1])) return false;
    return true;
  }

  bool remaining_path_contains(const MessageInstance& msg, NodeId node) const {
    for (std::size_t i = msg.hop_index + 1; i < msg.path.size(); ++i)
      if (msg.path[i] == node) return true;
    return false;
  }

  /// Recomputes a route for a stranded message. Returns false when the
  /// message had to be dropped.
  bool reroute_or_drop(const MsgPtr& msg, NodeId from, const std::string& why) {
    Sim sim(*this);
    auto route = selection_->reroute(sim, *msg, from);
    if (!route || route->path.empty() || route->path.front() != from) {
      drop(msg->id, DropReason::NoPath,
           "no reroute for " + msg->type_name + " from node " + std::to_string(from) + " (" + why +
               ")");
      return false;
    }
    msg->path = std::move(route->path);
    msg->hop_index = 0;
    msg->dst_des = route->dst_des;
    msg->path_generation = topo_.generation();
    launch(msg);
    return true;
  }

  void deliver(const MsgPtr& msg) {
    auto it = procs_.find(msg->dst_des);
    if (it == procs_.end() || !it->second.alive) {
      reroute_or_drop(msg, msg->path.back(), "destination process gone");
      return;
    }
    Proc& proc = it->second;
    msg->time_reception = clock_;
    if (proc.busy) {
      proc.queue.push_back(msg);
    } else {
      start_service(proc, msg);
    }
  }

  void start_service(Proc& proc, const MsgPtr& msg) {
    msg->time_in = clock_;
    const double service =
        proc.kind == ProcessKind::Sink ? 0.0 : msg->instructions / topo_.node(proc.node).ipt;
    proc.busy = true;
    proc.serving = msg;
    Event ev;
    ev.time = clock_ + service;
    ev.kind = Event::Kind::ServeComplete;
    ev.des = proc.des;
    ev.msg = msg;
    proc.busy_event = schedule(std::move(ev));
  }

  void on_serve_complete(int des, const MsgPtr& msg) {
    Proc& proc = procs_.at(des);
    const Application& app = app_ref(proc.app);

    ComputeRecord rec;
    rec.id = msg->id;
    rec.type = proc.kind == ProcessKind::Sink ? "SINK_M" : "COMP_M";
    rec.app = msg->app;
    rec.module = proc.module;
    rec.message = msg->type_name;
    rec.des_src = msg->src_des;
    rec.des_dst = des;
    rec.topo_src = msg->path.front();
    rec.topo_dst = proc.node;
    rec.module_src = app.find_message(msg->type_name)->src_module;
    rec.time_in = msg->time_in;
    rec.time_out = clock_;
    rec.time_emit = msg->time_emit;
    rec.time_reception = msg->time_reception;
    // sink absorption of a raw workload-source message carries no service
    // value; everything else records time_out - time_in
    if (!(proc.kind == ProcessKind::Sink && msg->raw_source))
      rec.service = clock_ - msg->time_in;
    results_.compute.push_back(std::move(rec));

    proc.busy = false;
    proc.serving.reset();
    if (proc.alive && !proc.queue.empty()) {
      MsgPtr next = std::move(proc.queue.front());
      proc.queue.pop_front();
      start_service(proc, next);
    }

    if (proc.kind != ProcessKind::ModuleServer) return;
    const auto emitted = transmissions_for(app, proc.module, msg->type_name, proc.stream);
    for (const std::string& name : emitted) {
      const MessageType& mt = *app.find_message(name);
      emit_message(app, mt, msg->id, des, proc.node, false);
    }
  }

  // ---- shortest-path cache (keyed by target node) ----

  const std::map<NodeId, int>& dists_to(NodeId target) {
    auto it = dist_cache_.find(target);
    if (it != dist_cache_.end() && it->second.first == topo_.generation()) return it->second.second;
    auto dist = topo_.bfs_distances(target);
    auto& slot = dist_cache_[target];
    slot.first = topo_.generation();
    slot.second = std::move(dist);
    return slot.second;
  }

  void invalidate_dist_cache() { dist_cache_.clear(); }

 public:
  const Scenario scenario_;
  TopologyGraph topo_;
  std::map<std::string, const Application*> apps_;
  std::vector<std::shared_ptr<PlacementPolicy>> placements_;
  std::vector<std::shared_ptr<PopulationPolicy>> populations_;
  std::shared_ptr<SelectionPolicy> selection_;
  std::vector<std::shared_ptr<CustomProcess>> customs_;

  double clock_ = 0;
  bool initialized_ = false;
  std::uint64_t event_seq_ = 0;
  long long next_msg_id_ = 1;
  int next_des_ = 0;
  long long network_buffer_ = 0;

  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::unordered_set<std::uint64_t> cancelled_;
  std::map<int, Proc> procs_;
  std::map<std::pair<NodeId, NodeId>, Channel> channels_;
  std::map<std::pair<std::string, std::string>, std::map<int, NodeId>> replicas_;
  std::map<std::string, std::set<int>> sources_;
  std::map<NodeId, std::pair<std::uint64_t, std::map<NodeId, int>>> dist_cache_;

  ResultSet results_;
};

}  // namespace detail

// ---- Engine ----

Engine::Engine(const Scenario& scenario) : impl_(std::make_unique<detail::EngineImpl>(scenario)) {}
Engine::~Engine() = default;

void Engine::initialize() { impl_->initialize(); }

ResultSet Engine::run(double until) { return impl_->run(until); }

std::vector<Replica> Engine::replicas(const std::string& app, const std::string& module) const {
  return impl_->replicas(app, module);
}

std::vector<Replica> Engine::source_processes(const std::string& app) const {
  std::vector<Replica> out;
  for (const auto& s : impl_->sources(app)) out.push_back({s.des_id, s.node});
  return out;
}

// ---- Sim ----

double Sim::now() const { return engine_.now(); }
const TopologyGraph& Sim::topology() const { return engine_.topology(); }
const Application& Sim::app(const std::string& name) const { return engine_.app_ref(name); }

int Sim::deploy_source(const std::string& app, NodeId node, const std::string& message,
                       const TemporalDistribution& distribution) {
  return engine_.deploy_source(app, node, message, distribution);
}

int Sim::deploy_module(const std::string& app, const std::string& module, NodeId node) {
  return engine_.deploy_module(app, module, node);
}

int Sim::deploy_sink(const std::string& app, const std::string& module, NodeId node) {
  return engine_.deploy_sink(app, module, node);
}

void Sim::stop_process(int des_id) { engine_.stop_process(des_id); }
void Sim::fail_node(NodeId node) { engine_.fail_node(node); }

std::vector<Replica> Sim::replicas(const std::string& app, const std::string& module) const {
  return engine_.replicas(app, module);
}

std::vector<Sim::SourceInfo> Sim::sources(const std::string& app) const {
  return engine_.sources(app);
}

bool Sim::node_hosts_source(NodeId node) const { return engine_.node_hosts_source(node); }

std::vector<std::string> Sim::app_names() const { return engine_.app_names(); }

int Sim::hop_distance(NodeId from, NodeId to) const { return engine_.hop_distance(from, to); }

std::optional<std::vector<NodeId>> Sim::route_path(NodeId from, NodeId to) const {
  return engine_.route_path(from, to);
}

std::optional<Route> Sim::peek_route(const std::string& app, const std::string& message,
                                     NodeId from, int src_des) const {
  return engine_.peek_route(app, message, from, src_des);
}

void Sim::note(const std::string& line) { engine_.note(line); }
void Sim::record_series(const std::string& series, double value) {
  engine_.record_series(series, value);
}

ResultSet run_scenario(const Scenario& scenario, std::optional<double> until_override) {
  Engine engine(scenario);
  return engine.run(until_override.value_or(scenario.until));
}

}  // namespace fogsim
