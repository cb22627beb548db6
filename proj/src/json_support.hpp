#pragma once

// Internal helpers shared by the loaders; not part of the public headers.

#include <string>

#include "json.hpp"

#include "fogsim/application.hpp"
#include "fogsim/distributions.hpp"
#include "fogsim/topology.hpp"

namespace fogsim {

/// distribution JSON: {"type":"deterministic|deterministic_start|exponential|
/// exponential_start","time":num,"start":num,"mean":num} with only the
/// relevant fields required.
TemporalDistribution distribution_from_json_value(const nlohmann::json& d, const std::string& where);

Application load_application_json(const nlohmann::json& doc);

TopologyGraph load_topology_json(const nlohmann::json& doc);

}  // namespace fogsim
