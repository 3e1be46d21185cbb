// Copyright 2026 The mrtrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrtrace/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrtrace/cache_sim.h"
#include "mrtrace/compute_patterns.h"
#include "mrtrace/error.h"
#include "mrtrace/replay_sim.h"
#include "mrtrace/report.h"
#include "mrtrace/synthesis.h"
#include "mrtrace/temporal.h"
#include "mrtrace/trace.h"

namespace mrtrace {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t DefaultSeed() {
  const char* env = std::getenv("MRTRACE_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || env[0] == '-') {
    throw UsageError(std::string("MRTRACE_SEED is not an unsigned integer: ") +
                     env);
  }
  return v;
}

// Common trace input flags.
struct TraceInput {
  std::string path;
  std::string label;
  std::uint32_t machines = 1;

  void Register(CLI::App* app, const char* flag = "--trace") {
    app->add_option(flag, path, "trace file (.jsonl or .csv)")->required();
    app->add_option("--label", label, "workload label (default: file stem)");
    app->add_option("--machines", machines, "cluster machine count")
        ->check(CLI::PositiveNumber);
  }

  Trace Load() const {
    ParseOptions options;
    options.label =
        label.empty() ? std::filesystem::path(path).stem().string() : label;
    options.machine_count = machines;
    return ReadTraceFile(path, options);
  }
};

// Writes to a file atomically, or to the output stream when path is empty.
void Emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    WriteFileAtomic(path, content);
  }
}

SeriesDimension ParseDimension(const std::string& name) {
  static const std::map<std::string, SeriesDimension> kNames = {
      {"jobs", SeriesDimension::kJobsSubmitted},
      {"data", SeriesDimension::kDataSizeBytes},
      {"compute", SeriesDimension::kComputeTimeTaskSeconds},
      {"occupancy", SeriesDimension::kOccupancySlots}};
  return kNames.at(name);
}

std::string SimResultJson(const SimResult& r, const SimConfig& c,
                          std::size_t excluded) {
  json jobs = json::array();
  for (const auto& j : r.jobs) {
    jobs.push_back(
        {{"submit_seconds", Num(static_cast<double>(j.submit) / 1e6)},
         {"first_task_start_seconds",
          Num(static_cast<double>(j.first_task_start) / 1e6)},
         {"completion_seconds", Num(static_cast<double>(j.completion) / 1e6)}});
  }
  json doc = {
      {"tool", {{"name", "mrtrace"}, {"version", kToolVersion}}},
      {"operation", "simulate"},
      {"params",
       {{"nodes", c.nodes},
        {"map_slots_per_node", c.map_slots_per_node},
        {"reduce_slots_per_node", c.reduce_slots_per_node},
        {"scheduler", SchedulerName(c.scheduler)}}},
      {"result",
       {{"makespan_seconds", Num(r.makespan_seconds())},
        {"busy_map_slot_seconds", Num(r.busy_map_slot_seconds())},
        {"busy_reduce_slot_seconds", Num(r.busy_reduce_slot_seconds())},
        {"task_count", r.tasks.size()},
        {"excluded_jobs", excluded},
        {"jobs", std::move(jobs)}}}};
  return RenderJson(doc);
}

std::string SeriesTsv(const TimeSeries& s) {
  std::string out = "bucket_index\tvalue\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out += std::to_string(i) + '\t' + FormatNumber(s.values[i]) + '\n';
  }
  return out;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"MapReduce trace workload analysis", "mrtrace"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::optional<std::uint64_t> seed_flag;
  std::uint64_t seed_value = 0;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& v) { seed_flag = v; },
        "random seed (default 42, or MRTRACE_SEED)");
  };

  // analyze
  TraceInput analyze_in;
  AnalyzeOptions aopt;
  std::string analyze_out, analyze_plots;
  auto* analyze = app.add_subcommand("analyze", "run every applicable analysis");
  analyze_in.Register(analyze);
  analyze->add_option("--out", analyze_out, "report JSON path (default stdout)");
  analyze->add_option("--plots", analyze_plots, "directory for plot TSVs");
  analyze->add_option("--bucket-width", aopt.bucket_width, "seconds")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--k-max", aopt.k_max)->check(CLI::PositiveNumber);
  analyze->add_option("--elbow-threshold", aopt.elbow_threshold)
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--restarts", aopt.restarts)->check(CLI::PositiveNumber);
  analyze->add_option("--cluster-sample", aopt.cluster_sample,
                      "rows used for the elbow search (0 = all)");
  analyze->add_option("--name-cutoff", aopt.name_cutoff)
      ->check(CLI::Range(0.0, 1.0));
  analyze->add_option("--top-k", aopt.periodogram_top_k)
      ->check(CLI::PositiveNumber);
  add_seed(analyze);

  // burstiness
  TraceInput burst_in;
  std::string burst_out, burst_dim = "compute";
  std::int64_t burst_width = kHour;
  auto* burst = app.add_subcommand("burstiness", "percentile-to-median curve");
  burst_in.Register(burst);
  burst->add_option("--dimension", burst_dim)
      ->check(CLI::IsMember({"jobs", "data", "compute", "occupancy"}));
  burst->add_option("--bucket-width", burst_width)->check(CLI::PositiveNumber);
  burst->add_option("--out", burst_out, "TSV path (default stdout)");

  // cluster
  TraceInput cluster_in;
  ElbowOptions eopt;
  std::size_t fixed_k = 0;
  std::string cluster_out;
  auto* cluster = app.add_subcommand("cluster", "k-means job types");
  cluster_in.Register(cluster);
  cluster->add_option("--k", fixed_k, "fixed k (default: elbow)");
  cluster->add_option("--k-max", eopt.k_max)->check(CLI::PositiveNumber);
  cluster->add_option("--elbow-threshold", eopt.improvement_threshold)
      ->check(CLI::Range(0.0, 1.0));
  cluster->add_option("--restarts", eopt.restarts)->check(CLI::PositiveNumber);
  cluster->add_option("--out", cluster_out, "table path (default stdout)");
  add_seed(cluster);

  // names
  TraceInput names_in;
  std::string names_weighting = "jobs", names_out;
  double names_cutoff = 0.01;
  auto* names = app.add_subcommand("names", "first-word name breakdown");
  names_in.Register(names);
  names->add_option("--weighting", names_weighting)
      ->check(CLI::IsMember({"jobs", "io_bytes", "task_time"}));
  names->add_option("--cutoff", names_cutoff)->check(CLI::Range(0.0, 1.0));
  names->add_option("--out", names_out, "TSV path (default stdout)");

  // synthesize
  TraceInput synth_in;
  std::uint32_t target_machines = 0;
  std::optional<std::int64_t> target_span;
  std::int64_t window = kHour;
  std::string synth_mode = "sampled", synth_out, synth_plan;
  auto* synth = app.add_subcommand("synthesize", "scaled synthetic workload");
  synth_in.Register(synth);
  synth->add_option("--target-machines", target_machines)
      ->required()
      ->check(CLI::PositiveNumber);
  synth->add_option("--target-span", target_span, "seconds")
      ->check(CLI::PositiveNumber);
  synth->add_option("--window", window, "sampling window seconds")
      ->check(CLI::PositiveNumber);
  synth->add_option("--mode", synth_mode)
      ->check(CLI::IsMember({"sampled", "replay_scaled"}));
  synth->add_option("--out", synth_out, "synthetic jsonl (default stdout)");
  synth->add_option("--plan", synth_plan, "data pre-population TSV");
  add_seed(synth);

  // simulate
  TraceInput sim_in;
  SimConfig sim_config;
  std::string scheduler = "fifo", sim_out, sim_occupancy;
  std::int64_t sim_width = kHour;
  auto* sim = app.add_subcommand("simulate", "replay on a slot cluster");
  sim_in.Register(sim, "--workload");
  sim->add_option("--nodes", sim_config.nodes)->check(CLI::PositiveNumber);
  sim->add_option("--map-slots", sim_config.map_slots_per_node)
      ->check(CLI::PositiveNumber);
  sim->add_option("--reduce-slots", sim_config.reduce_slots_per_node)
      ->check(CLI::PositiveNumber);
  sim->add_option("--scheduler", scheduler)
      ->check(CLI::IsMember({"fifo", "fair"}));
  sim->add_option("--bucket-width", sim_width)->check(CLI::PositiveNumber);
  sim->add_option("--out", sim_out, "result JSON (default stdout)");
  sim->add_option("--occupancy", sim_occupancy, "occupancy TSV");

  // cachesim
  TraceInput cache_in;
  std::vector<std::uint64_t> capacities;
  std::vector<std::uint64_t> thresholds;
  std::string admission = "all", eviction = "lru", cache_out;
  double ttl = 0.0;
  auto* cache = app.add_subcommand("cachesim", "whole-file cache replay");
  cache_in.Register(cache);
  cache->add_option("--capacity", capacities, "bytes; several values sweep")
      ->required()
      ->check(CLI::PositiveNumber);
  cache->add_option("--admission", admission)
      ->check(CLI::IsMember({"all", "size_at_most"}));
  cache->add_option("--threshold", thresholds,
                    "admission size threshold(s) in bytes")
      ->check(CLI::PositiveNumber);
  cache->add_option("--eviction", eviction)
      ->check(CLI::IsMember({"lru", "idle_ttl"}));
  cache->add_option("--ttl", ttl, "idle seconds for idle_ttl");
  cache->add_option("--out", cache_out, "sweep TSV (default stdout)");

  try {
    app.parse(argc, argv);
    seed_value = seed_flag ? *seed_flag : DefaultSeed();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mrtrace: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "mrtrace: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*analyze) {
      aopt.seed = seed_value;
      const Trace trace = analyze_in.Load();
      AnalysisOutput result = AnalyzeTrace(trace, aopt);
      if (!analyze_plots.empty()) WritePlotFiles(analyze_plots, result.plots);
      Emit(analyze_out, RenderJson(result.report), out);
    } else if (*burst) {
      const Trace trace = burst_in.Load();
      const auto series =
          BucketTimeSeries(trace, ParseDimension(burst_dim), burst_width);
      const auto curve = ComputeBurstinessCurve(series);
      std::string tsv = "ratio\tpercentile\n";
      for (const auto& p : curve.points) {
        tsv += FormatNumber(p.ratio) + '\t' + std::to_string(p.percentile) +
               '\n';
      }
      Emit(burst_out, tsv, out);
    } else if (*cluster) {
      eopt.seed = seed_value;
      const Trace trace = cluster_in.Load();
      const auto matrix = JobFeatureVectors(trace);
      const ClusterModel model = fixed_k > 0
                                     ? KMeans(matrix, fixed_k, seed_value)
                                     : SelectK(matrix, eopt).best_model;
      Emit(cluster_out,
           RenderClusterTable(SummarizeClusters(trace, matrix, model)), out);
    } else if (*names) {
      const Trace trace = names_in.Load();
      const NameWeighting w = names_weighting == "jobs"
                                  ? NameWeighting::kJobs
                                  : names_weighting == "io_bytes"
                                        ? NameWeighting::kIoBytes
                                        : NameWeighting::kTaskTime;
      const auto b = ComputeNameBreakdown(trace, w, names_cutoff);
      std::string tsv = "first_word\tweight_fraction\n";
      for (const auto& e : b.entries) {
        tsv += e.first_word + '\t' + FormatNumber(e.weight_fraction) + '\n';
      }
      tsv += "<other>\t" + FormatNumber(b.other_fraction) + '\n';
      Emit(names_out, tsv, out);
    } else if (*synth) {
      const Trace trace = synth_in.Load();
      const WorkloadModel model = BuildWorkloadModel(trace, window);
      SynthesisOptions sopt;
      sopt.target_machine_count = target_machines;
      sopt.target_span = target_span;
      sopt.mode = synth_mode == "sampled" ? SynthesisMode::kSampled
                                          : SynthesisMode::kReplayScaled;
      sopt.seed = seed_value;
      const SyntheticWorkload workload = Synthesize(model, sopt);
      if (workload.jobs.empty()) {
        throw Error(ErrorCode::kEmptyWorkload, "synthesis produced no jobs");
      }
      std::string plan_tsv;
      if (!synth_plan.empty()) {
        std::ostringstream plan;
        WriteDataPlanTsv(DataPrepopulationPlan(workload), plan);
        plan_tsv = plan.str();
      }
      std::ostringstream jsonl;
      WriteJsonl(WorkloadToTrace(workload, trace.label() + "-synthetic"),
                 jsonl);
      if (!synth_plan.empty()) WriteFileAtomic(synth_plan, plan_tsv);
      Emit(synth_out, jsonl.str(), out);
    } else if (*sim) {
      sim_config.scheduler =
          scheduler == "fifo" ? Scheduler::kFifo : Scheduler::kFair;
      const Trace trace = sim_in.Load();
      std::size_t excluded = 0;
      const SyntheticWorkload workload = TraceToWorkload(trace, &excluded);
      if (workload.jobs.empty()) {
        throw Error(ErrorCode::kEmptyWorkload,
                    "no job carries every dimension needed to replay");
      }
      const SimResult result = Simulate(workload, sim_config);
      std::string occupancy;
      if (!sim_occupancy.empty()) {
        occupancy = SeriesTsv(SimOccupancySeries(result, sim_width));
        WriteFileAtomic(sim_occupancy, occupancy);
      }
      Emit(sim_out, SimResultJson(result, sim_config, excluded), out);
    } else if (*cache) {
      const Trace trace = cache_in.Load();
      const auto stream = AccessStream(trace);
      std::vector<CacheConfig> configs;
      const bool by_threshold =
          admission == "size_at_most" && thresholds.size() > 1;
      if (admission == "size_at_most" && thresholds.empty()) {
        throw UsageError("--admission size_at_most needs --threshold");
      }
      if (eviction == "idle_ttl" && !(ttl > 0.0)) {
        throw UsageError("--eviction idle_ttl needs a positive --ttl");
      }
      if (by_threshold && capacities.size() > 1) {
        throw UsageError("sweep either --capacity or --threshold, not both");
      }
      auto base = [&](std::uint64_t capacity, std::uint64_t threshold) {
        CacheConfig c;
        c.capacity_bytes = capacity;
        c.admission = admission == "all" ? Admission::kAll
                                         : Admission::kSizeAtMost;
        c.size_threshold = threshold;
        c.eviction = eviction == "lru" ? Eviction::kLru : Eviction::kIdleTtl;
        c.idle_ttl_seconds = ttl;
        return c;
      };
      const std::uint64_t first_threshold =
          thresholds.empty() ? 0 : thresholds.front();
      if (by_threshold) {
        for (auto t : thresholds) configs.push_back(base(capacities[0], t));
      } else {
        for (auto c : capacities) configs.push_back(base(c, first_threshold));
      }
      const auto reports = SweepCache(stream, configs);
      std::string tsv = std::string(by_threshold ? "threshold_bytes"
                                                 : "capacity_bytes") +
                        "\thit_rate_by_accesses\thit_rate_by_bytes\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        tsv += std::to_string(by_threshold ? configs[i].size_threshold
                                           : configs[i].capacity_bytes) +
               '\t' + FormatNumber(reports[i].hit_rate_by_accesses) + '\t' +
               FormatNumber(reports[i].hit_rate_by_bytes) + '\n';
      }
      Emit(cache_out, tsv, out);
    }
  } catch (const UsageError& e) {
    err << "mrtrace: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "mrtrace: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace mrtrace
