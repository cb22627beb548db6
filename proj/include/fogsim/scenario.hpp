#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fogsim/application.hpp"
#include "fogsim/policies.hpp"
#include "fogsim/topology.hpp"

namespace fogsim {

/// Load/validation failures carry a schema location; the CLI maps them to
/// exit code 1.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AppDeployment {
  Application app;
  std::shared_ptr<PlacementPolicy> placement;
  std::shared_ptr<PopulationPolicy> population;
};

/// The complete declarative input of one run. Immutable once built; the
/// engine clones the policies so the same Scenario can be run repeatedly
/// with identical results.
struct Scenario {
  std::uint64_t seed = 0;
  double until = 0;
  TopologyGraph topology;
  std::vector<AppDeployment> apps;
  std::shared_ptr<SelectionPolicy> selection;
  std::vector<std::shared_ptr<CustomProcess>> processes;
};

/// Parses and cross-validates the scenario JSON (see README for the full
/// schema). Errors carry a JSON-pointer-style location and the offending
/// names. `seed` and `until` are mandatory.
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

enum class EggPolicy { Cloud, Edge };

/// Three-level tree (cloud - proxy - gateways - client devices, one sensor
/// and one actuator node per client) running the five-module game pipeline.
/// The cloud policy puts every compute module on the cloud entity; the edge
/// policy puts Client/Calculator on each gateway and Coordinator on the
/// cloud. Numeric parameters (IPT, BW, PR) are calibrated constants.
Scenario preset_egg(int gateways, EggPolicy policy, std::uint64_t seed = 1, double until = 10000);

/// Euclidean random graph (400 nodes, 2242 links, PR=1), 100 senders on a
/// 10-unit period, one receiver on the top-betweenness node at start, one
/// more every 300 units from t=3000 (20 total), shortest-path selection.
Scenario preset_scaling(std::uint64_t seed = 5);

/// Same network and workload with all 20 receivers deployed at init, plus
/// exponential node failures (start 500, mean 100) over a pre-drawn
/// candidate list that excludes sender nodes.
Scenario preset_failures(std::uint64_t seed = 5);

/// Same network, 100 senders on a 100-unit period, all 20 receivers on the
/// top-betweenness node, round-robin selection, and a movement process that
/// walks every sender one hop toward its receiver every 400 units.
Scenario preset_mobility(std::uint64_t seed = 5);

/// Preset lookup by name ("egg", "scaling", "failures", "mobility") used by
/// the CLI; egg_* parameters are ignored by the other presets. Without a
/// seed, each preset keeps its calibrated default.
Scenario make_preset(const std::string& name, std::optional<std::uint64_t> seed, int egg_gateways,
                     EggPolicy egg_policy);

}  // namespace fogsim
