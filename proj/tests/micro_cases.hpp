#pragma once

// The five hand-built micro scenarios used for engine/oracle equivalence:
// each is expressed twice, as a fogsim::Scenario and as a MicroWorld for the
// independent simulator, with matching deployment order.

#include <string>
#include <vector>

#include "fogsim/scenario.hpp"
#include "micro_sim.hpp"

namespace fogsim::testing {

struct MicroCase {
  std::string name;
  Scenario scenario;
  MicroWorld world;
};

inline MicroCase micro_two_node_pipeline() {
  MicroCase c;
  c.name = "two_node_pipeline";
  c.scenario.seed = 11;
  c.scenario.until = 45;
  c.scenario.topology.add_node({0, 1.0, 1, {}});
  c.scenario.topology.add_node({1, 10.0, 1, {}});
  c.scenario.topology.add_link({0, 1, 100, 0.5, {}});

  AppDeployment dep;
  dep.app.name = "PIPE";
  dep.app.modules = {{"Gen", ModuleKind::Source, 0}, {"Work", ModuleKind::Module, 1}};
  dep.app.messages.emplace("M.Job", MessageType{"M.Job", "Gen", "Work", 20, 200, false});
  dep.app.source_messages = {"M.Job"};
  dep.app.rules = {{"Work", "M.Job", std::nullopt, TransmissionRule::Mode::Absorb, 1.0}};
  dep.placement = std::make_shared<StaticPlacement>(
      std::map<std::string, std::vector<NodeId>>{{"Work", {1}}});
  dep.population = std::make_shared<StaticPopulation>(
      std::vector<SinkControl>{},
      std::vector<SourceControl>{{"M.Job", 0, TemporalDistribution::deterministic(10), 1}});
  c.scenario.apps.push_back(std::move(dep));
  c.scenario.selection = std::make_shared<ShortestPathSelection>();

  c.world.app_name = "PIPE";
  c.world.node_ipt = {{0, 1.0}, {1, 10.0}};
  c.world.links = {{0, 1, 100, 0.5}};
  c.world.messages = {{"M.Job", {"M.Job", "Gen", "Work", 20, 200}}};
  c.world.rules = {{"Work", "M.Job", "", true, 1.0}};
  c.world.deploys = {{MicroWorld::Deploy::Module, "Work", 1, 0},
                     {MicroWorld::Deploy::Source, "M.Job", 0, 10}};
  c.world.until = 45;
  return c;
}

inline MicroCase micro_colocated_sink() {
  MicroCase c;
  c.name = "colocated_sink";
  c.scenario.seed = 12;
  c.scenario.until = 30;
  c.scenario.topology.add_node({0, 5.0, 1, {}});

  AppDeployment dep;
  dep.app.name = "LOCAL";
  dep.app.modules = {{"Gen", ModuleKind::Source, 0}, {"Drain", ModuleKind::Sink, 0}};
  dep.app.messages.emplace("M.Ping", MessageType{"M.Ping", "Gen", "Drain", 7, 3, false});
  dep.app.source_messages = {"M.Ping"};
  dep.population = std::make_shared<StaticPopulation>(
      std::vector<SinkControl>{{"Drain", 0, 1}},
      std::vector<SourceControl>{{"M.Ping", 0, TemporalDistribution::deterministic(7), 1}});
  c.scenario.apps.push_back(std::move(dep));
  c.scenario.selection = std::make_shared<ShortestPathSelection>();

  c.world.app_name = "LOCAL";
  c.world.node_ipt = {{0, 5.0}};
  c.world.messages = {{"M.Ping", {"M.Ping", "Gen", "Drain", 7, 3}}};
  c.world.deploys = {{MicroWorld::Deploy::Sink, "Drain", 0, 0},
                     {MicroWorld::Deploy::Source, "M.Ping", 0, 7}};
  c.world.until = 30;
  return c;
}

inline MicroCase micro_chain_transform() {
  MicroCase c;
  c.name = "chain_transform";
  c.scenario.seed = 13;
  c.scenario.until = 40;
  c.scenario.topology.add_node({0, 1.0, 1, {}});
  c.scenario.topology.add_node({1, 4.0, 1, {}});
  c.scenario.topology.add_node({2, 1.0, 1, {}});
  c.scenario.topology.add_link({0, 1, 50, 0.25, {}});
  c.scenario.topology.add_link({1, 2, 40, 1.0, {}});

  AppDeployment dep;
  dep.app.name = "CHAIN";
  dep.app.modules = {{"Gen", ModuleKind::Source, 0},
                     {"Proc", ModuleKind::Module, 1},
                     {"Drain", ModuleKind::Sink, 0}};
  dep.app.messages.emplace("M.Raw", MessageType{"M.Raw", "Gen", "Proc", 10, 100, false});
  dep.app.messages.emplace("M.Out", MessageType{"M.Out", "Proc", "Drain", 5, 80, false});
  dep.app.source_messages = {"M.Raw"};
  dep.app.rules = {{"Proc", "M.Raw", "M.Out", TransmissionRule::Mode::Fractional, 1.0}};
  dep.placement = std::make_shared<StaticPlacement>(
      std::map<std::string, std::vector<NodeId>>{{"Proc", {1}}});
  dep.population = std::make_shared<StaticPopulation>(
      std::vector<SinkControl>{{"Drain", 2, 1}},
      std::vector<SourceControl>{{"M.Raw", 0, TemporalDistribution::deterministic(12), 1}});
  c.scenario.apps.push_back(std::move(dep));
  c.scenario.selection = std::make_shared<ShortestPathSelection>();

  c.world.app_name = "CHAIN";
  c.world.node_ipt = {{0, 1.0}, {1, 4.0}, {2, 1.0}};
  c.world.links = {{0, 1, 50, 0.25}, {1, 2, 40, 1.0}};
  c.world.messages = {{"M.Raw", {"M.Raw", "Gen", "Proc", 10, 100}},
                      {"M.Out", {"M.Out", "Proc", "Drain", 5, 80}}};
  c.world.rules = {{"Proc", "M.Raw", "M.Out", false, 1.0}};
  c.world.deploys = {{MicroWorld::Deploy::Module, "Proc", 1, 0},
                     {MicroWorld::Deploy::Sink, "Drain", 2, 0},
                     {MicroWorld::Deploy::Source, "M.Raw", 0, 12}};
  c.world.until = 40;
  return c;
}

inline MicroCase micro_two_sources_fifo() {
  MicroCase c;
  c.name = "two_sources_fifo";
  c.scenario.seed = 14;
  c.scenario.until = 30;
  c.scenario.topology.add_node({0, 1.0, 1, {}});
  c.scenario.topology.add_node({1, 1.0, 1, {}});
  c.scenario.topology.add_link({0, 1, 100, 0, {}});

  AppDeployment dep;
  dep.app.name = "DUO";
  dep.app.modules = {{"Gen", ModuleKind::Source, 0}, {"Drain", ModuleKind::Sink, 0}};
  dep.app.messages.emplace("M.Data", MessageType{"M.Data", "Gen", "Drain", 1, 500, false});
  dep.app.source_messages = {"M.Data"};
  dep.population = std::make_shared<StaticPopulation>(
      std::vector<SinkControl>{{"Drain", 1, 1}},
      std::vector<SourceControl>{{"M.Data", 0, TemporalDistribution::deterministic(10), 2}});
  c.scenario.apps.push_back(std::move(dep));
  c.scenario.selection = std::make_shared<ShortestPathSelection>();

  c.world.app_name = "DUO";
  c.world.node_ipt = {{0, 1.0}, {1, 1.0}};
  c.world.links = {{0, 1, 100, 0}};
  c.world.messages = {{"M.Data", {"M.Data", "Gen", "Drain", 1, 500}}};
  c.world.deploys = {{MicroWorld::Deploy::Sink, "Drain", 1, 0},
                     {MicroWorld::Deploy::Source, "M.Data", 0, 10},
                     {MicroWorld::Deploy::Source, "M.Data", 0, 10}};
  c.world.until = 30;
  return c;
}

inline MicroCase micro_square_tiebreak() {
  MicroCase c;
  c.name = "square_tiebreak";
  c.scenario.seed = 15;
  c.scenario.until = 60;
  for (NodeId n = 0; n < 4; ++n) c.scenario.topology.add_node({n, 1.0, 1, {}});
  c.scenario.topology.add_link({0, 1, 10, 0.5, {}});
  c.scenario.topology.add_link({1, 2, 10, 0.5, {}});
  c.scenario.topology.add_link({2, 3, 10, 0.5, {}});
  c.scenario.topology.add_link({0, 3, 10, 0.5, {}});

  AppDeployment dep;
  dep.app.name = "SQUARE";
  dep.app.modules = {{"Gen", ModuleKind::Source, 0}, {"Drain", ModuleKind::Sink, 0}};
  dep.app.messages.emplace("M.Data", MessageType{"M.Data", "Gen", "Drain", 1, 30, false});
  dep.app.source_messages = {"M.Data"};
  dep.population = std::make_shared<StaticPopulation>(
      std::vector<SinkControl>{{"Drain", 2, 1}},
      std::vector<SourceControl>{{"M.Data", 0, TemporalDistribution::deterministic(20), 1}});
  c.scenario.apps.push_back(std::move(dep));
  c.scenario.selection = std::make_shared<ShortestPathSelection>();

  c.world.app_name = "SQUARE";
  c.world.node_ipt = {{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}};
  c.world.links = {{0, 1, 10, 0.5}, {1, 2, 10, 0.5}, {2, 3, 10, 0.5}, {0, 3, 10, 0.5}};
  c.world.messages = {{"M.Data", {"M.Data", "Gen", "Drain", 1, 30}}};
  c.world.deploys = {{MicroWorld::Deploy::Sink, "Drain", 2, 0},
                     {MicroWorld::Deploy::Source, "M.Data", 0, 20}};
  c.world.until = 60;
  return c;
}

inline std::vector<MicroCase> micro_cases() {
  return {micro_two_node_pipeline(), micro_colocated_sink(), micro_chain_transform(),
          micro_two_sources_fifo(), micro_square_tiebreak()};
}

}  // namespace fogsim::testing
