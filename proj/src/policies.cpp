#include "fogsim/policies.hpp"

#include <algorithm>
#include <stdexcept>

#include "fogsim/engine.hpp"

namespace fogsim {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void deploy_by_kind(Sim& sim, const std::string& app_name, const std::string& module,
                    NodeId node) {
  const AppModule* mod = sim.app(app_name).find_module(module);
  if (!mod) fail("placement: unknown module " + module + " in " + app_name);
  switch (mod->kind) {
    case ModuleKind::Module:
      sim.deploy_module(app_name, module, node);
      break;
    case ModuleKind::Sink:
      sim.deploy_sink(app_name, module, node);
      break;
    case ModuleKind::Source:
      fail("placement: workload sources are deployed by population policies, not placements (" +
           module + ")");
  }
}

}  // namespace

std::optional<Route> SelectionPolicy::peek(Sim&, const std::string&, const MessageType&, NodeId,
                                           int) const {
  return std::nullopt;
}

std::optional<Route> SelectionPolicy::reroute(Sim& sim, const MessageInstance& msg, NodeId from) {
  const MessageType* mt = sim.app(msg.app).find_message(msg.type_name);
  if (!mt) return std::nullopt;
  return select(sim, msg.app, *mt, from, msg.src_des);
}

// ---- StaticPlacement ----

StaticPlacement::StaticPlacement(std::map<std::string, std::vector<NodeId>> assignments)
    : assignments_(std::move(assignments)) {
  name = "static";
}

void StaticPlacement::initial_allocation(Sim& sim, const std::string& app_name) {
  for (const auto& [module, nodes] : assignments_)
    for (NodeId node : nodes) deploy_by_kind(sim, app_name, module, node);
}

std::shared_ptr<PlacementPolicy> StaticPlacement::clone() const {
  return std::make_shared<StaticPlacement>(*this);
}

// ---- BetweennessPlacement ----

BetweennessPlacement::BetweennessPlacement(std::string module, std::size_t count)
    : module_(std::move(module)), count_(count) {
  name = "betweenness";
}

void BetweennessPlacement::initial_allocation(Sim& sim, const std::string& app_name) {
  const auto& topo = sim.topology();
  if (count_ > topo.node_count())
    fail("betweenness placement: " + std::to_string(count_) + " replicas exceed " +
         std::to_string(topo.node_count()) + " nodes");
  const auto scores = topo.betweenness_centrality();
  std::vector<std::pair<double, NodeId>> ranked;
  ranked.reserve(scores.size());
  for (const auto& [id, score] : scores) ranked.emplace_back(score, id);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // ties by lower node id
  });
  for (std::size_t i = 0; i < count_; ++i) deploy_by_kind(sim, app_name, module_, ranked[i].second);
}

std::shared_ptr<PlacementPolicy> BetweennessPlacement::clone() const {
  return std::make_shared<BetweennessPlacement>(*this);
}

// ---- StaticPopulation ----

StaticPopulation::StaticPopulation(std::vector<SinkControl> sinks,
                                   std::vector<SourceControl> sources)
    : sinks_(std::move(sinks)), sources_(std::move(sources)) {
  name = "static";
}

void StaticPopulation::initial_allocation(Sim& sim, const std::string& app_name) {
  for (const auto& s : sinks_)
    for (std::size_t i = 0; i < s.number; ++i) sim.deploy_sink(app_name, s.module, s.node);
  for (const auto& s : sources_)
    for (std::size_t i = 0; i < s.number; ++i)
      sim.deploy_source(app_name, s.node, s.message, s.distribution);
}

std::shared_ptr<PopulationPolicy> StaticPopulation::clone() const {
  return std::make_shared<StaticPopulation>(*this);
}

// ---- EvolutivePopulation ----

EvolutivePopulation::EvolutivePopulation(std::vector<NodeId> targets, TickDeployment per_tick,
                                         std::vector<SinkControl> init_sinks,
                                         std::vector<SourceControl> init_sources)
    : targets_(std::move(targets)),
      per_tick_(std::move(per_tick)),
      init_sinks_(std::move(init_sinks)),
      init_sources_(std::move(init_sources)) {
  name = "evolutive";
  if (per_tick_.kind != ProcessKind::Source && per_tick_.kind != ProcessKind::Sink)
    fail("evolutive population: per-tick deployment must be a source or a sink");
}

void EvolutivePopulation::initial_allocation(Sim& sim, const std::string& app_name) {
  app_name_ = app_name;
  for (const auto& s : init_sinks_)
    for (std::size_t i = 0; i < s.number; ++i) sim.deploy_sink(app_name, s.module, s.node);
  for (const auto& s : init_sources_)
    for (std::size_t i = 0; i < s.number; ++i)
      sim.deploy_source(app_name, s.node, s.message, s.distribution);
}

void EvolutivePopulation::run(Sim& sim) {
  while (next_ < targets_.size()) {
    const NodeId node = targets_[next_++];
    if (!sim.topology().has_node(node)) {
      sim.note("population " + name + ": target node " + std::to_string(node) + " is gone");
      continue;
    }
    if (per_tick_.kind == ProcessKind::Sink) {
      sim.deploy_sink(app_name_, per_tick_.module, node);
    } else {
      sim.deploy_source(app_name_, node, per_tick_.message, *per_tick_.distribution);
    }
    return;
  }
  sim.note("population " + name + ": target list exhausted");
}

std::shared_ptr<PopulationPolicy> EvolutivePopulation::clone() const {
  return std::make_shared<EvolutivePopulation>(*this);
}

// ---- ShortestPathSelection ----

namespace {

std::optional<Route> pick_nearest(Sim& sim, const std::string& app_name,
                                  const MessageType& message, NodeId src_node) {
  const auto reps = sim.replicas(app_name, message.dst_module);
  const Replica* best = nullptr;
  int best_dist = -1;
  for (const Replica& rep : reps) {
    const int d = sim.hop_distance(src_node, rep.node);
    if (d < 0) continue;
    // ties by lower node id, then lower des id (the replica list is already
    // des-ascending, so strict < keeps the first)
    if (!best || d < best_dist || (d == best_dist && rep.node < best->node)) {
      best = &rep;
      best_dist = d;
    }
  }
  if (!best) return std::nullopt;
  auto path = sim.route_path(src_node, best->node);
  if (!path) return std::nullopt;
  return Route{best->des_id, std::move(*path)};
}

}  // namespace

std::optional<Route> ShortestPathSelection::select(Sim& sim, const std::string& app_name,
                                                   const MessageType& message, NodeId src_node,
                                                   int) {
  return pick_nearest(sim, app_name, message, src_node);
}

std::optional<Route> ShortestPathSelection::peek(Sim& sim, const std::string& app_name,
                                                 const MessageType& message, NodeId src_node,
                                                 int) const {
  return pick_nearest(sim, app_name, message, src_node);
}

std::shared_ptr<SelectionPolicy> ShortestPathSelection::clone() const {
  return std::make_shared<ShortestPathSelection>(*this);
}

// ---- RoundRobinSelection ----

std::optional<Route> RoundRobinSelection::select(Sim& sim, const std::string& app_name,
                                                 const MessageType& message, NodeId src_node,
                                                 int src_des) {
  const auto reps = sim.replicas(app_name, message.dst_module);
  if (reps.empty()) return std::nullopt;
  std::size_t& counter = cursor_[{src_des, message.name}];
  const Replica& rep = reps[counter % reps.size()];
  ++counter;
  auto path = sim.route_path(src_node, rep.node);
  if (!path) return std::nullopt;
  return Route{rep.des_id, std::move(*path)};
}

std::optional<Route> RoundRobinSelection::peek(Sim& sim, const std::string& app_name,
                                               const MessageType& message, NodeId src_node,
                                               int src_des) const {
  const auto reps = sim.replicas(app_name, message.dst_module);
  if (reps.empty()) return std::nullopt;
  auto it = cursor_.find({src_des, message.name});
  const std::size_t counter = it == cursor_.end() ? 0 : it->second;
  const Replica& rep = reps[counter % reps.size()];
  auto path = sim.route_path(src_node, rep.node);
  if (!path) return std::nullopt;
  return Route{rep.des_id, std::move(*path)};
}

std::shared_ptr<SelectionPolicy> RoundRobinSelection::clone() const {
  return std::make_shared<RoundRobinSelection>(*this);
}

// ---- FailureProcess ----

FailureProcess::FailureProcess(std::vector<NodeId> candidates, TemporalDistribution activation_,
                               Protect protect)
    : candidates_(std::move(candidates)), protect_(std::move(protect)) {
  name = "failure";
  activation = activation_;
}

void FailureProcess::run(Sim& sim) {
  while (next_ < candidates_.size()) {
    const NodeId node = candidates_[next_++];
    if (!sim.topology().has_node(node)) continue;
    const bool protected_node =
        protect_ ? protect_(sim, node) : sim.node_hosts_source(node);
    if (protected_node) {
      sim.note("failure process: node " + std::to_string(node) + " is protected; skipped");
      continue;
    }
    sim.fail_node(node);
    return;
  }
  sim.note("failure process: candidate list exhausted");
}

std::shared_ptr<CustomProcess> FailureProcess::clone() const {
  return std::make_shared<FailureProcess>(*this);
}

// ---- MovementProcess ----

MovementProcess::MovementProcess(TemporalDistribution activation_) {
  name = "movement";
  activation = activation_;
}

void MovementProcess::run(Sim& sim) {
  double total_distance = 0;
  for (const std::string& app_name : sim.app_names()) {
    const auto snapshot = sim.sources(app_name);
    for (const auto& src : snapshot) {
      const auto route = sim.peek_route(app_name, src.message, src.node, src.des_id);
      if (!route) {
        sim.note("movement: source des=" + std::to_string(src.des_id) + " on node " +
                 std::to_string(src.node) + " has no reachable receiver; stays");
        continue;
      }
      const std::size_t hops = route->path.size() - 1;
      if (hops == 0) continue;  // co-located with its receiver
      const NodeId next_node = route->path[1];
      sim.stop_process(src.des_id);
      sim.deploy_source(app_name, next_node, src.message, src.distribution);
      total_distance += static_cast<double>(hops - 1);
    }
  }
  sim.record_series("movement_total_distance", total_distance);
}

std::shared_ptr<CustomProcess> MovementProcess::clone() const {
  return std::make_shared<MovementProcess>(*this);
}

}  // namespace fogsim
