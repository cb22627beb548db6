#include "fogsim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fogsim/engine.hpp"
#include "fogsim/results.hpp"
#include "fogsim/scenario.hpp"

namespace fogsim {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string scenario_path;
  std::string preset;
  int gateways = 4;
  std::string policy = "edge";
  std::optional<std::uint64_t> seed;
  std::optional<double> until;
  std::string output = "out";
  int replications = 1;
};

Scenario build_scenario(const std::string& scenario_path, const std::string& preset, int gateways,
                        const std::string& policy, std::optional<std::uint64_t> seed) {
  if (scenario_path.empty() == preset.empty())
    throw ScenarioError("exactly one of --scenario and --preset must be given");
  if (!scenario_path.empty()) {
    Scenario s = load_scenario_file(scenario_path);
    if (seed) s.seed = *seed;
    return s;
  }
  EggPolicy egg_policy;
  if (policy == "cloud") {
    egg_policy = EggPolicy::Cloud;
  } else if (policy == "edge") {
    egg_policy = EggPolicy::Edge;
  } else {
    throw ScenarioError("unknown policy '" + policy + "' (expected cloud or edge)");
  }
  return make_preset(preset, seed, gateways, egg_policy);
}

void write_manifest(const fs::path& dir, const Scenario& scenario, const ResultSet& results,
                    double wall_seconds) {
  json manifest;
  manifest["seed"] = scenario.seed;
  manifest["until"] = results.end_time;
  manifest["wall_time_seconds"] = wall_seconds;
  manifest["records"] = {{"compute", results.compute.size()},
                         {"link", results.link.size()},
                         {"drop", results.drops.size()}};
  manifest["final_nodes"] = results.final_nodes;
  manifest["final_links"] = results.final_links;
  manifest["failures"] = results.failures.size();
  for (const auto& [name, points] : results.series) {
    json arr = json::array();
    for (const auto& [t, v] : points) arr.push_back({t, v});
    manifest["series"][name] = arr;
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

int cmd_run(const RunConfig& config) {
  Scenario scenario =
      build_scenario(config.scenario_path, config.preset, config.gateways, config.policy,
                     config.seed);
  if (config.until) scenario.until = *config.until;
  if (config.replications < 1) throw ScenarioError("--replications must be >= 1");

  for (int rep = 0; rep < config.replications; ++rep) {
    Scenario current = scenario;
    fs::path dir(config.output);
    if (config.replications > 1) {
      // replication seeds are seed + index, so any single replication can be
      // reproduced with --seed
      current.seed = scenario.seed + static_cast<std::uint64_t>(rep);
      char name[32];
      std::snprintf(name, sizeof(name), "rep_%03d", rep);
      dir /= name;
    }
    const auto start = std::chrono::steady_clock::now();
    ResultSet results = run_scenario(current);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fs::create_directories(dir);
    write_csv(results, dir.string());
    write_manifest(dir, current, results, wall);
    std::cout << dir.string() << ": " << results.compute.size() << " compute records, "
              << results.link.size() << " link records, " << results.drops.size() << " drops\n";
  }
  return 0;
}

// ---- stats ----

struct Moments {
  double mean = 0, var = 0, min = 0, max = 0;
  std::size_t n = 0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = xs.size();
  if (xs.empty()) return m;
  m.min = *std::min_element(xs.begin(), xs.end());
  m.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.var = ss / static_cast<double>(xs.size() - 1);
  }
  return m;
}

std::vector<fs::path> replication_dirs(const fs::path& root) {
  std::vector<fs::path> dirs;
  if (fs::exists(root / "compute.csv")) {
    dirs.push_back(root);
    return dirs;
  }
  if (fs::is_directory(root)) {
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_directory() && fs::exists(entry.path() / "compute.csv"))
        dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

ComputeMetric metric_from_name(const std::string& name) {
  if (name == "latency") return ComputeMetric::Latency;
  if (name == "waiting") return ComputeMetric::Waiting;
  if (name == "service") return ComputeMetric::Service;
  if (name == "response") return ComputeMetric::Response;
  if (name == "total_response") return ComputeMetric::TotalResponse;
  throw ScenarioError("unknown metric '" + name + "'");
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_stats(const std::string& results_dir, const std::string& loop, double window,
              const std::string& metric_name) {
  const auto dirs = replication_dirs(results_dir);
  if (dirs.empty()) {
    std::cout << "no records found under " << results_dir << "\n";
    return 0;
  }

  std::vector<std::vector<ComputeRecord>> runs;
  std::size_t total_records = 0;
  for (const auto& dir : dirs) {
    runs.push_back(read_compute_csv((dir / "compute.csv").string()));
    total_records += runs.back().size();
  }
  std::cout << "replications: " << runs.size() << ", compute records: " << total_records << "\n";
  if (total_records == 0) {
    std::cout << "no records\n";
    return 0;
  }

  if (!loop.empty()) {
    const auto sequence = split_names(loop);
    std::vector<double> means;
    std::size_t complete = 0, incomplete = 0;
    for (const auto& run : runs) {
      const auto sl = sequence_latency(run, sequence);
      if (sl.complete) means.push_back(sl.mean);
      complete += sl.complete;
      incomplete += sl.incomplete;
    }
    const Moments m = moments(means);
    std::cout << "sequence " << loop << ": mean " << m.mean << " var " << m.var << " min " << m.min
              << " max " << m.max << " (complete " << complete << ", incomplete " << incomplete
              << ")\n";
  }

  const char* metric_names[] = {"latency", "waiting", "service", "response", "total_response"};
  const ComputeMetric metrics[] = {ComputeMetric::Latency, ComputeMetric::Waiting,
                                   ComputeMetric::Service, ComputeMetric::Response,
                                   ComputeMetric::TotalResponse};
  for (int i = 0; i < 5; ++i) {
    std::vector<double> per_run;
    for (const auto& run : runs) {
      if (run.empty()) continue;
      double sum = 0;
      for (const auto& rec : run) {
        const RecordTimes t = times(rec);
        switch (metrics[i]) {
          case ComputeMetric::Latency: sum += t.latency; break;
          case ComputeMetric::Waiting: sum += t.waiting; break;
          case ComputeMetric::Service: sum += t.service; break;
          case ComputeMetric::Response: sum += t.response; break;
          case ComputeMetric::TotalResponse: sum += t.total_response; break;
        }
      }
      per_run.push_back(sum / static_cast<double>(run.size()));
    }
    const Moments m = moments(per_run);
    std::cout << metric_names[i] << ": mean " << m.mean << " var " << m.var << " min " << m.min
              << " max " << m.max << "\n";
  }

  if (window > 0) {
    const auto& run = runs.front();
    if (runs.size() > 1)
      std::cerr << "windowed series uses the first replication only\n";
    double horizon = 0;
    for (const auto& rec : run) horizon = std::max(horizon, rec.time_in);
    horizon = (std::floor(horizon / window) + 1) * window;
    const auto series = windowed(run, metric_from_name(metric_name), window, horizon);
    std::cout << "window_start," << metric_name << "\n";
    for (std::size_t b = 0; b < series.values.size(); ++b) {
      std::cout << format_time(static_cast<double>(b) * window) << ",";
      if (series.values[b]) std::cout << format_time(*series.values[b]);
      std::cout << "\n";
    }
  }
  return 0;
}

// ---- export-graph ----

std::string attr_to_string(const AttrValue& v) {
  if (const auto* d = std::get_if<double>(&v)) {
    std::ostringstream out;
    out << *d;
    return out.str();
  }
  return std::get<std::string>(v);
}

int cmd_export_graph(const std::string& scenario_path, const std::string& preset, int gateways,
                     const std::string& policy, std::optional<std::uint64_t> seed,
                     const std::string& format, const std::string& output) {
  Scenario scenario = build_scenario(scenario_path, preset, gateways, policy, seed);

  // role annotations come from the deployed state, without running events
  Engine engine(scenario);
  engine.initialize();
  std::map<NodeId, std::set<std::string>> roles;
  for (const auto& dep : scenario.apps) {
    for (const auto& rep : engine.source_processes(dep.app.name)) roles[rep.node].insert("sender");
    for (const auto& mod : dep.app.modules) {
      if (mod.kind == ModuleKind::Source) continue;
      for (const auto& rep : engine.replicas(dep.app.name, mod.name))
        roles[rep.node].insert("receiver");
    }
  }
  for (const auto& proc : scenario.processes) {
    for (NodeId n : proc->failure_candidates()) roles[n].insert("failure-candidate");
  }

  std::ostringstream out;
  if (format == "dot") {
    out << "graph fogsim {\n";
    if (!scenario.topology.nodes().empty()) {
      const auto scores = scenario.topology.betweenness_centrality();
      for (const auto& [id, attrs] : scenario.topology.nodes()) {
        out << "  " << id << " [betweenness=\"" << scores.at(id) << "\"";
        auto rit = roles.find(id);
        if (rit != roles.end()) {
          out << " role=\"";
          bool first = true;
          for (const auto& r : rit->second) {
            if (!first) out << "+";
            out << r;
            first = false;
          }
          out << "\"";
        }
        for (const auto& [key, value] : attrs.custom)
          out << " " << key << "=\"" << attr_to_string(value) << "\"";
        out << "];\n";
      }
      for (const auto& [key, attrs] : scenario.topology.links())
        out << "  " << key.u << " -- " << key.v << " [bw=\"" << attrs.bw << "\" pr=\"" << attrs.pr
            << "\"];\n";
    }
    out << "}\n";
  } else if (format == "edgelist") {
    out << "# s d BW PR\n";
    for (const auto& [key, attrs] : scenario.topology.links())
      out << key.u << " " << key.v << " " << attrs.bw << " " << attrs.pr << "\n";
  } else {
    throw ScenarioError("unknown format '" + format + "' (expected dot or edgelist)");
  }

  if (output.empty() || output == "-") {
    std::cout << out.str();
  } else {
    std::ofstream file(output);
    if (!file) throw std::runtime_error("cannot write " + output);
    file << out.str();
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App cli{"deterministic discrete-event simulator for fog computing scenarios"};
  cli.require_subcommand(1);

  RunConfig run_config;
  std::uint64_t seed_value = 0;
  double until_value = 0;

  auto* run = cli.add_subcommand("run", "run a scenario or preset and write CSV results");
  run->add_option("--scenario", run_config.scenario_path, "scenario JSON file");
  run->add_option("--preset", run_config.preset, "preset name: egg, scaling, failures, mobility");
  run->add_option("--gateways", run_config.gateways, "egg preset: number of gateways");
  run->add_option("--policy", run_config.policy, "egg preset: cloud or edge");
  auto* run_seed = run->add_option("--seed", seed_value, "seed override");
  auto* run_until = run->add_option("--until", until_value, "simulated duration override");
  run->add_option("-o,--output", run_config.output, "output directory");
  run->add_option("--replications", run_config.replications, "number of seed-varied runs");

  std::string stats_dir;
  std::string stats_loop;
  double stats_window = 0;
  std::string stats_metric = "latency";
  auto* stats = cli.add_subcommand("stats", "post-simulation metrics over run results");
  stats->add_option("results", stats_dir, "results directory (a run or replication root)")
      ->required();
  stats->add_option("--loop", stats_loop, "comma-separated message sequence");
  stats->add_option("--window", stats_window, "bucket width for the windowed series");
  stats->add_option("--metric", stats_metric,
                    "windowed metric: latency, waiting, service, response, total_response");

  std::string export_scenario, export_preset, export_format = "dot", export_output = "-";
  int export_gateways = 4;
  std::string export_policy = "edge";
  std::uint64_t export_seed_value = 0;
  auto* exportg = cli.add_subcommand("export-graph", "export the topology with role annotations");
  exportg->add_option("--scenario", export_scenario, "scenario JSON file");
  exportg->add_option("--preset", export_preset, "preset name");
  exportg->add_option("--gateways", export_gateways, "egg preset: number of gateways");
  exportg->add_option("--policy", export_policy, "egg preset: cloud or edge");
  auto* export_seed = exportg->add_option("--seed", export_seed_value, "seed override");
  exportg->add_option("--format", export_format, "dot or edgelist");
  exportg->add_option("-o,--output", export_output, "output file ('-' for stdout)");

  std::string validate_path;
  auto* validate_cmd = cli.add_subcommand("validate", "validate a scenario file");
  validate_cmd->add_option("scenario", validate_path, "scenario JSON file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    cli.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (run_seed->count()) run_config.seed = seed_value;
      if (run_until->count()) run_config.until = until_value;
      return cmd_run(run_config);
    }
    if (stats->parsed()) return cmd_stats(stats_dir, stats_loop, stats_window, stats_metric);
    if (exportg->parsed()) {
      std::optional<std::uint64_t> seed;
      if (export_seed->count()) seed = export_seed_value;
      return cmd_export_graph(export_scenario, export_preset, export_gateways, export_policy, seed,
                              export_format, export_output);
    }
    if (validate_cmd->parsed()) {
      load_scenario_file(validate_path);
      std::cout << "OK\n";
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace fogsim
