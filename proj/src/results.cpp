#include "fogsim/results.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fogsim {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

constexpr const char* kComputeHeader =
    "id,type,app,module,message,DES.src,DES.dst,TOPO.src,TOPO.dst,module.src,"
    "service,time_in,time_out,time_emit,time_reception";
constexpr const char* kLinkHeader = "id,type,src,dst,app,latency,message,ctime,size,buffer";
constexpr const char* kDropHeader = "id,reason,ctime,context";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

}  // namespace

std::string format_time(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::NoPath: return "NO_PATH";
    case DropReason::NodeRemoved: return "NODE_REMOVED";
    case DropReason::LinkRemoved: return "LINK_REMOVED";
  }
  return "NO_PATH";
}

DropReason drop_reason_from_name(const std::string& s) {
  if (s == "NO_PATH") return DropReason::NoPath;
  if (s == "NODE_REMOVED") return DropReason::NodeRemoved;
  if (s == "LINK_REMOVED") return DropReason::LinkRemoved;
  fail("unknown drop reason: " + s);
}

RecordTimes times(const ComputeRecord& rec) {
  if (!(rec.time_emit <= rec.time_reception && rec.time_reception <= rec.time_in &&
        rec.time_in <= rec.time_out))
    fail("times: malformed record id " + std::to_string(rec.id) +
         " violates time_emit <= time_reception <= time_in <= time_out");
  RecordTimes t;
  t.latency = rec.time_reception - rec.time_emit;
  t.waiting = rec.time_in - rec.time_reception;
  t.service = rec.time_out - rec.time_in;
  t.response = t.waiting + t.service;
  t.total_response = t.latency + t.response;
  return t;
}

SequenceLatency sequence_latency(const std::vector<ComputeRecord>& records,
                                 const std::vector<std::string>& sequence) {
  if (sequence.empty()) fail("sequence_latency: empty sequence");
  std::map<std::string, std::size_t> stage_of;
  for (std::size_t i = 0; i < sequence.size(); ++i) stage_of[sequence[i]] = i;

  // earliest record per (id, stage)
  std::map<long long, std::vector<const ComputeRecord*>> by_id;
  bool seen_any = false;
  for (const auto& rec : records) {
    auto it = stage_of.find(rec.message);
    if (it == stage_of.end()) continue;
    seen_any = true;
    auto& stages = by_id[rec.id];
    stages.resize(sequence.size(), nullptr);
    const ComputeRecord*& slot = stages[it->second];
    if (!slot || rec.time_out < slot->time_out) slot = &rec;
  }
  if (!seen_any && !records.empty()) {
    // catch typos in sequence names up front
    std::map<std::string, bool> known;
    for (const auto& rec : records) known[rec.message] = true;
    bool any_known = false;
    for (const auto& name : sequence) any_known = any_known || known.count(name);
    if (!any_known) fail("sequence_latency: no record matches any sequence message");
  }

  SequenceLatency out;
  double total = 0;
  for (const auto& [id, stages] : by_id) {
    bool complete = true;
    double sum = 0;
    for (const ComputeRecord* rec : stages) {
      if (!rec) {
        complete = false;
        break;
      }
      const RecordTimes t = times(*rec);
      sum += t.latency + t.response;
    }
    if (complete) {
      ++out.complete;
      total += sum;
    } else {
      ++out.incomplete;
    }
  }
  out.mean = out.complete ? total / static_cast<double>(out.complete) : 0.0;
  return out;
}

namespace {

double metric_value(const ComputeRecord& rec, ComputeMetric metric) {
  const RecordTimes t = times(rec);
  switch (metric) {
    case ComputeMetric::Latency: return t.latency;
    case ComputeMetric::Waiting: return t.waiting;
    case ComputeMetric::Service: return t.service;
    case ComputeMetric::Response: return t.response;
    case ComputeMetric::TotalResponse: return t.total_response;
  }
  return 0;
}

struct BucketAcc {
  double sum = 0;
  double max = 0;
  std::size_t count = 0;
  void add(double v) {
    sum += v;
    max = count == 0 ? v : std::max(max, v);
    ++count;
  }
  double value(Aggregate agg) const {
    switch (agg) {
      case Aggregate::Mean: return sum / static_cast<double>(count);
      case Aggregate::Count: return static_cast<double>(count);
      case Aggregate::Max: return max;
    }
    return 0;
  }
};

MetricSeries from_buckets(const std::vector<BucketAcc>& buckets, double window, Aggregate agg) {
  MetricSeries out;
  out.window = window;
  out.values.resize(buckets.size());
  for (std::size_t i = 0; i < buckets.size(); ++i)
    if (buckets[i].count) out.values[i] = buckets[i].value(agg);
  return out;
}

std::size_t bucket_count(double window, double horizon) {
  if (!(window > 0)) fail("windowed: window must be > 0");
  if (!(horizon > 0)) return 0;
  return static_cast<std::size_t>(std::ceil(horizon / window));
}

}  // namespace

MetricSeries windowed(const std::vector<ComputeRecord>& records, ComputeMetric metric,
                      double window, double horizon, Aggregate agg) {
  std::vector<BucketAcc> buckets(bucket_count(window, horizon));
  for (const auto& rec : records) {
    if (rec.time_in < 0 || rec.time_in >= horizon) continue;
    const auto b = static_cast<std::size_t>(rec.time_in / window);
    if (b < buckets.size()) buckets[b].add(metric_value(rec, metric));
  }
  return from_buckets(buckets, window, agg);
}

MetricSeries saturation_series(const std::vector<LinkRecord>& records, double window,
                               double horizon, Aggregate agg) {
  std::vector<BucketAcc> buckets(bucket_count(window, horizon));
  for (const auto& rec : records) {
    if (rec.ctime < 0 || rec.ctime >= horizon) continue;
    const auto b = static_cast<std::size_t>(rec.ctime / window);
    if (b < buckets.size()) buckets[b].add(static_cast<double>(rec.buffer));
  }
  return from_buckets(buckets, window, agg);
}

std::string compute_csv_text(const std::vector<ComputeRecord>& records) {
  std::ostringstream out;
  out << kComputeHeader << '\n';
  for (const auto& r : records) {
    out << r.id << ',' << r.type << ',' << r.app << ',' << r.module << ',' << r.message << ','
        << r.des_src << ',' << r.des_dst << ',' << r.topo_src << ',' << r.topo_dst << ','
        << r.module_src << ',' << (r.service ? format_time(*r.service) : std::string()) << ','
        << format_time(r.time_in) << ',' << format_time(r.time_out) << ','
        << format_time(r.time_emit) << ',' << format_time(r.time_reception) << '\n';
  }
  return out.str();
}

std::string link_csv_text(const std::vector<LinkRecord>& records) {
  std::ostringstream out;
  out << kLinkHeader << '\n';
  for (const auto& r : records) {
    out << r.id << ",LINK," << r.src << ',' << r.dst << ',' << r.app << ','
        << format_time(r.latency) << ',' << r.message << ',' << format_time(r.ctime) << ','
        << format_time(r.size) << ',' << r.buffer << '\n';
  }
  return out.str();
}

std::string drop_csv_text(const std::vector<DropRecord>& records) {
  std::ostringstream out;
  out << kDropHeader << '\n';
  for (const auto& r : records) {
    out << r.id << ',' << drop_reason_name(r.reason) << ',' << format_time(r.ctime) << ','
        << r.context << '\n';
  }
  return out.str();
}

std::vector<std::string> write_csv(const ResultSet& results, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"compute.csv", compute_csv_text(results.compute)},
      {"link.csv", link_csv_text(results.link)},
      {"drop.csv", drop_csv_text(results.drops)},
  };
  std::vector<std::string> paths;
  for (const auto& [name, text] : files) {
    const auto path = (base / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path);
    out << text;
    if (!out) fail("write failed on " + path);
    paths.push_back(path);
  }
  return paths;
}

namespace {

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path,
                                                    const char* expected_header,
                                                    std::size_t expected_fields) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected_header) fail(path + ": unexpected header: " + line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != expected_fields)
      fail(path + ": expected " + std::to_string(expected_fields) + " fields, got " +
           std::to_string(fields.size()));
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

std::vector<ComputeRecord> read_compute_csv(const std::string& path) {
  std::vector<ComputeRecord> out;
  for (const auto& f : read_csv_rows(path, kComputeHeader, 15)) {
    ComputeRecord r;
    r.id = std::stoll(f[0]);
    r.type = f[1];
    r.app = f[2];
    r.module = f[3];
    r.message = f[4];
    r.des_src = std::stoi(f[5]);
    r.des_dst = std::stoi(f[6]);
    r.topo_src = std::stoi(f[7]);
    r.topo_dst = std::stoi(f[8]);
    r.module_src = f[9];
    if (!f[10].empty()) r.service = std::stod(f[10]);
    r.time_in = std::stod(f[11]);
    r.time_out = std::stod(f[12]);
    r.time_emit = std::stod(f[13]);
    r.time_reception = std::stod(f[14]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LinkRecord> read_link_csv(const std::string& path) {
  std::vector<LinkRecord> out;
  for (const auto& f : read_csv_rows(path, kLinkHeader, 10)) {
    if (f[1] != "LINK") fail(path + ": unexpected record type " + f[1]);
    LinkRecord r;
    r.id = std::stoll(f[0]);
    r.src = std::stoi(f[2]);
    r.dst = std::stoi(f[3]);
    r.app = f[4];
    r.latency = std::stod(f[5]);
    r.message = f[6];
    r.ctime = std::stod(f[7]);
    r.size = std::stod(f[8]);
    r.buffer = std::stoll(f[9]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DropRecord> read_drop_csv(const std::string& path) {
  std::vector<DropRecord> out;
  for (const auto& f : read_csv_rows(path, kDropHeader, 4)) {
    DropRecord r;
    r.id = std::stoll(f[0]);
    r.reason = drop_reason_from_name(f[1]);
    r.ctime = std::stod(f[2]);
    r.context = f[3];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fogsim
