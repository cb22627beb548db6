#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/sim_types.hpp"

namespace fogsim {

/// One executed (or absorbed) message at a module. `service` is empty for
/// sink absorptions of raw workload-source messages, mirroring the None
/// convention of the record schema.
struct ComputeRecord {
  long long id = 0;
  std::string type;  // COMP_M or SINK_M
  std::string app;
  std::string module;
  std::string message;
  int des_src = -1;
  int des_dst = -1;
  NodeId topo_src = 0;
  NodeId topo_dst = 0;
  std::string module_src;
  std::optional<double> service;
  double time_in = 0;
  double time_out = 0;
  double time_emit = 0;
  double time_reception = 0;
};

/// One message crossing one link. `latency` is the size/BW + PR formula
/// value; `buffer` is the network-wide count of messages waiting for link
/// service, sampled when this message was enqueued.
struct LinkRecord {
  long long id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  std::string app;
  double latency = 0;
  std::string message;
  double ctime = 0;
  double size = 0;
  long long buffer = 0;
};

enum class DropReason { NoPath, NodeRemoved, LinkRemoved };

struct DropRecord {
  long long id = 0;
  DropReason reason = DropReason::NoPath;
  double ctime = 0;
  std::string context;
};

struct DeploymentEvent {
  double time = 0;
  int des_id = -1;
  ProcessKind kind = ProcessKind::Source;
  std::string app;
  std::string module;  // module name, or source message name for sources
  NodeId node = 0;
  bool removed = false;
};

struct FailureEvent {
  double time = 0;
  NodeId node = 0;
  std::size_t links_removed = 0;
  std::size_t rerouted = 0;
  std::size_t dropped = 0;
};

struct ResultSet {
  std::vector<ComputeRecord> compute;
  std::vector<LinkRecord> link;
  std::vector<DropRecord> drops;
  std::vector<DeploymentEvent> deployments;
  std::vector<FailureEvent> failures;
  /// Free-form per-process time series (e.g. total sender hop distance per
  /// movement tick), keyed by series name.
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::vector<std::string> diagnostics;
  double end_time = 0;
  std::size_t final_nodes = 0;
  std::size_t final_links = 0;
};

std::string drop_reason_name(DropReason r);
DropReason drop_reason_from_name(const std::string& s);

/// The five derived times of the record algebra. `response` and
/// `total_response` are built from the identities response = waiting +
/// service and total_response = latency + response, so both identities hold
/// bit-exactly on every record.
struct RecordTimes {
  double latency = 0;         // time_reception - time_emit
  double waiting = 0;         // time_in - time_reception
  double service = 0;         // time_out - time_in
  double response = 0;        // waiting + service
  double total_response = 0;  // latency + response
};

RecordTimes times(const ComputeRecord& rec);

struct SequenceLatency {
  double mean = 0;
  std::size_t complete = 0;
  std::size_t incomplete = 0;
};

/// End-to-end time along an ordered chain of message types sharing one
/// instance id: per id, the per-stage (latency + response) values are
/// summed; the mean runs over ids with every stage present.
SequenceLatency sequence_latency(const std::vector<ComputeRecord>& records,
                                 const std::vector<std::string>& sequence);

enum class ComputeMetric { Latency, Waiting, Service, Response, TotalResponse };
enum class Aggregate { Mean, Count, Max };

/// Fixed-width time buckets tiling [0, horizon); empty buckets stay empty.
struct MetricSeries {
  double window = 0;
  std::vector<std::optional<double>> values;
};

/// Compute records bucketed by time_in.
MetricSeries windowed(const std::vector<ComputeRecord>& records, ComputeMetric metric,
                      double window, double horizon, Aggregate agg = Aggregate::Mean);

/// Link-record buffer gauge bucketed by ctime; the saturation indicator.
MetricSeries saturation_series(const std::vector<LinkRecord>& records, double window,
                               double horizon, Aggregate agg = Aggregate::Max);

/// Writes compute.csv, link.csv and drop.csv under dir (created if needed),
/// with the exact documented headers. Returns the three file paths.
std::vector<std::string> write_csv(const ResultSet& results, const std::string& dir);

std::string compute_csv_text(const std::vector<ComputeRecord>& records);
std::string link_csv_text(const std::vector<LinkRecord>& records);
std::string drop_csv_text(const std::vector<DropRecord>& records);

std::vector<ComputeRecord> read_compute_csv(const std::string& path);
std::vector<LinkRecord> read_link_csv(const std::string& path);
std::vector<DropRecord> read_drop_csv(const std::string& path);

/// Timestamps and durations are printed with 9 fixed fractional digits so
/// golden files are platform-stable.
std::string format_time(double v);

}  // namespace fogsim
