#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fogsim/topology.hpp"

namespace fogsim {

enum class ProcessKind { Source, ModuleServer, Sink, PolicyTick, Custom };

/// One message travelling the network. The id is assigned once at the
/// originating emission and inherited by every derived message, so a
/// partitioned application can be traced end to end.
struct MessageInstance {
  long long id = 0;
  std::string app;
  std::string type_name;
  int src_des = -1;
  int dst_des = -1;
  std::vector<NodeId> path;   // node sequence, path[0] = emitting node
  std::size_t hop_index = 0;  // node the message is currently at / departing
  double bytes = 0;
  double instructions = 0;
  double time_emit = 0;
  double time_reception = 0;
  double time_in = 0;
  std::uint64_t path_generation = 0;  // topology generation the path was computed at
  bool raw_source = false;            // emitted directly by a workload source
  long long buffer_sample = 0;        // network buffer gauge sampled at last enqueue
};

struct Replica {
  int des_id = -1;
  NodeId node = 0;
};

/// A selection decision: the serving replica and the node path to it.
struct Route {
  int dst_des = -1;
  std::vector<NodeId> path;
};

}  // namespace fogsim
