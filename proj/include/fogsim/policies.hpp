#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/application.hpp"
#include "fogsim/distributions.hpp"
#include "fogsim/sim_types.hpp"

namespace fogsim {

class Sim;  // capability-scoped engine handle, defined in engine.hpp

/// Maps application modules to topology nodes. initial_allocation runs
/// exactly once per application before any t=0 event; run fires on the
/// activation distribution when one is set.
///
/// Policies carry per-run state, so the engine clones them at run start;
/// custom implementations must provide a deep clone.
class PlacementPolicy {
 public:
  virtual ~PlacementPolicy() = default;
  virtual void initial_allocation(Sim& sim, const std::string& app_name) = 0;
  virtual void run(Sim& sim) { (void)sim; }
  virtual std::shared_ptr<PlacementPolicy> clone() const = 0;
  std::string name;
  std::optional<TemporalDistribution> activation;
};

/// Maps workload sources and sinks to topology nodes.
class PopulationPolicy {
 public:
  virtual ~PopulationPolicy() = default;
  virtual void initial_allocation(Sim& sim, const std::string& app_name) = 0;
  virtual void run(Sim& sim) { (void)sim; }
  virtual std::shared_ptr<PopulationPolicy> clone() const = 0;
  std::string name;
  std::optional<TemporalDistribution> activation;
};

/// Chooses the serving replica and the node path for every emitted message:
/// routing and orchestration in one step. `select` may advance internal
/// state (e.g. a round-robin cursor); `peek` must not.
class SelectionPolicy {
 public:
  virtual ~SelectionPolicy() = default;
  virtual std::optional<Route> select(Sim& sim, const std::string& app_name,
                                      const MessageType& message, NodeId src_node,
                                      int src_des) = 0;
  virtual std::optional<Route> peek(Sim& sim, const std::string& app_name,
                                    const MessageType& message, NodeId src_node,
                                    int src_des) const;
  /// Fresh route for a message stranded at `from` by a topology change.
  /// The default re-runs select.
  virtual std::optional<Route> reroute(Sim& sim, const MessageInstance& msg, NodeId from);
  virtual std::shared_ptr<SelectionPolicy> clone() const = 0;
  std::string name;
};

/// A scheduled function with full engine access; used for failure injection,
/// sender mobility and similar scenario machinery.
class CustomProcess {
 public:
  virtual ~CustomProcess() = default;
  virtual void run(Sim& sim) = 0;
  virtual std::shared_ptr<CustomProcess> clone() const = 0;
  /// Nodes this process may remove, for graph exports; empty by default.
  virtual std::vector<NodeId> failure_candidates() const { return {}; }
  std::string name;
  TemporalDistribution activation;
};

// ---- built-ins ----

/// Deploys each assigned module replica once at init; run is a no-op.
class StaticPlacement : public PlacementPolicy {
 public:
  /// assignments: module name -> nodes (one replica per listed node)
  explicit StaticPlacement(std::map<std::string, std::vector<NodeId>> assignments);
  void initial_allocation(Sim& sim, const std::string& app_name) override;
  std::shared_ptr<PlacementPolicy> clone() const override;

 private:
  std::map<std::string, std::vector<NodeId>> assignments_;
};

/// Deploys `count` replicas of one module on the top-betweenness nodes
/// (ties broken by lower node id).
class BetweennessPlacement : public PlacementPolicy {
 public:
  BetweennessPlacement(std::string module, std::size_t count);
  void initial_allocation(Sim& sim, const std::string& app_name) override;
  std::shared_ptr<PlacementPolicy> clone() const override;

 private:
  std::string module_;
  std::size_t count_;
};

struct SinkControl {
  std::string module;
  NodeId node = 0;
  std::size_t number = 1;  // duplicate sinks on the same entity
};

struct SourceControl {
  std::string message;
  NodeId node = 0;
  TemporalDistribution distribution;
  std::size_t number = 1;
};

/// Deploys all declared sinks and sources at init; run is a no-op.
class StaticPopulation : public PopulationPolicy {
 public:
  StaticPopulation(std::vector<SinkControl> sinks, std::vector<SourceControl> sources);
  void initial_allocation(Sim& sim, const std::string& app_name) override;
  std::shared_ptr<PopulationPolicy> clone() const override;

 private:
  std::vector<SinkControl> sinks_;
  std::vector<SourceControl> sources_;
};

/// Static part deployed at init; each activation tick deploys one more
/// source (or sink) on the next node of the target list. Exhausted targets
/// make the tick a logged no-op.
class EvolutivePopulation : public PopulationPolicy {
 public:
  struct TickDeployment {
    ProcessKind kind = ProcessKind::Source;  // Source or Sink
    std::string module;                      // sink module (kind Sink)
    std::string message;                     // source message (kind Source)
    std::optional<TemporalDistribution> distribution;  // source distribution
  };

  EvolutivePopulation(std::vector<NodeId> targets, TickDeployment per_tick,
                      std::vector<SinkControl> init_sinks, std::vector<SourceControl> init_sources);
  void initial_allocation(Sim& sim, const std::string& app_name) override;
  void run(Sim& sim) override;
  std::shared_ptr<PopulationPolicy> clone() const override;

 private:
  std::vector<NodeId> targets_;
  TickDeployment per_tick_;
  std::vector<SinkControl> init_sinks_;
  std::vector<SourceControl> init_sources_;
  std::size_t next_ = 0;
  std::string app_name_;
};

/// Minimal-hop replica, ties by (node id, des id); the path is the
/// lexicographically smallest shortest path.
class ShortestPathSelection : public SelectionPolicy {
 public:
  std::optional<Route> select(Sim& sim, const std::string& app_name, const MessageType& message,
                              NodeId src_node, int src_des) override;
  std::optional<Route> peek(Sim& sim, const std::string& app_name, const MessageType& message,
                            NodeId src_node, int src_des) const override;
  std::shared_ptr<SelectionPolicy> clone() const override;
};

/// Cycles through replica des-ids in ascending order, independently per
/// (source des, message type); the path is the shortest path to the chosen
/// replica. The cycle re-derives over survivors when replicas disappear.
class RoundRobinSelection : public SelectionPolicy {
 public:
  std::optional<Route> select(Sim& sim, const std::string& app_name, const MessageType& message,
                              NodeId src_node, int src_des) override;
  std::optional<Route> peek(Sim& sim, const std::string& app_name, const MessageType& message,
                            NodeId src_node, int src_des) const override;
  std::shared_ptr<SelectionPolicy> clone() const override;

 private:
  std::map<std::pair<int, std::string>, std::size_t> cursor_;
};

/// Removes the next candidate node at each activation tick. Protected nodes
/// (by default, nodes currently hosting a workload source) are skipped.
class FailureProcess : public CustomProcess {
 public:
  using Protect = std::function<bool(Sim&, NodeId)>;
  FailureProcess(std::vector<NodeId> candidates, TemporalDistribution activation,
                 Protect protect = nullptr);
  void run(Sim& sim) override;
  std::shared_ptr<CustomProcess> clone() const override;
  std::vector<NodeId> failure_candidates() const override { return candidates_; }

 private:
  std::vector<NodeId> candidates_;
  Protect protect_;
  std::size_t next_ = 0;
};

/// Moves every workload source one hop along the shortest path toward the
/// replica its message would currently be routed to. Sources already
/// co-located (or disconnected) stay put. Appends the total remaining hop
/// distance to the "movement_total_distance" result series each tick.
class MovementProcess : public CustomProcess {
 public:
  explicit MovementProcess(TemporalDistribution activation);
  void run(Sim& sim) override;
  std::shared_ptr<CustomProcess> clone() const override;
};

}  // namespace fogsim
