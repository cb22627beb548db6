#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/results.hpp"
#include "fogsim/scenario.hpp"
#include "fogsim/sim_types.hpp"

namespace fogsim {

namespace detail {
class EngineImpl;
}

/// Per-hop transmission latency: bytes/BW + PR.
inline double hop_latency(double bytes, double bw, double pr) { return bytes / bw + pr; }

/// The discrete-event core. Strictly single-threaded per run; independent
/// runs may execute in parallel, one engine each, over a shared Scenario.
class Engine {
 public:
  explicit Engine(const Scenario& scenario);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Runs initial allocations and schedules the t=0 processes. Called
  /// implicitly by run(); exposed so tools can inspect the deployed state
  /// without running events.
  void initialize();

  /// Processes every event with timestamp <= until, in (time, insertion)
  /// order, and returns the full record set.
  ResultSet run(double until);

  /// Deployed state inspection (valid after initialize()).
  std::vector<Replica> replicas(const std::string& app, const std::string& module) const;
  std::vector<Replica> source_processes(const std::string& app) const;

 private:
  friend class Sim;
  std::unique_ptr<detail::EngineImpl> impl_;
};

/// Capability handle passed to policy callbacks. Valid only for the duration
/// of the callback; policies must not retain it across ticks.
class Sim {
 public:
  explicit Sim(detail::EngineImpl& engine) : engine_(engine) {}

  double now() const;
  const TopologyGraph& topology() const;
  const Application& app(const std::string& name) const;

  int deploy_source(const std::string& app, NodeId node, const std::string& message,
                    const TemporalDistribution& distribution);
  int deploy_module(const std::string& app, const std::string& module, NodeId node);
  int deploy_sink(const std::string& app, const std::string& module, NodeId node);
  /// Stops a process: no further firings; messages queued at an undeployed
  /// module server are discarded and logged.
  void stop_process(int des_id);
  void undeploy(int des_id) { stop_process(des_id); }
  void fail_node(NodeId node);

  /// Alive replicas of (app, module), ascending des id.
  std::vector<Replica> replicas(const std::string& app, const std::string& module) const;

  struct SourceInfo {
    int des_id = -1;
    NodeId node = 0;
    std::string message;
    TemporalDistribution distribution;
  };
  /// Alive workload sources of the app, ascending des id.
  std::vector<SourceInfo> sources(const std::string& app) const;

  /// True when any alive workload source is hosted on the node.
  bool node_hosts_source(NodeId node) const;

  /// Names of the deployed applications, sorted.
  std::vector<std::string> app_names() const;

  /// Hop distance between two live nodes; -1 when disconnected.
  int hop_distance(NodeId from, NodeId to) const;
  /// Lexicographically smallest shortest path between live nodes.
  std::optional<std::vector<NodeId>> route_path(NodeId from, NodeId to) const;
  /// What the selection policy would currently return, without advancing
  /// its state.
  std::optional<Route> peek_route(const std::string& app, const std::string& message,
                                  NodeId from, int src_des) const;

  /// Appends to the run diagnostics log.
  void note(const std::string& line);
  /// Appends (now, value) to a named result series.
  void record_series(const std::string& series, double value);

 private:
  detail::EngineImpl& engine_;
};

/// Convenience wrapper: one engine, one run.
ResultSet run_scenario(const Scenario& scenario, std::optional<double> until_override = {});

}  // namespace fogsim
