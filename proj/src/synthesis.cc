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

#include "mrtrace/synthesis.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <unordered_map>

#include "mrtrace/error.h"

namespace mrtrace {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t n) {
  return std::min<std::uint64_t>(
      n - 1, static_cast<std::uint64_t>(Uniform01(rng) *
                                        static_cast<double>(n)));
}

// Jobs eligible for synthesis carry every byte and task-time dimension plus
// duration. Task counts may be derived.
bool Complete(const JobRecord& r) {
  return r.input_bytes && r.shuffle_bytes && r.output_bytes && r.duration &&
         r.map_task_seconds && r.reduce_task_seconds;
}

std::uint64_t TaskCount(const std::optional<std::uint64_t>& tasks,
                        double task_seconds) {
  if (tasks) return *tasks;
  return task_seconds > 0.0 ? 1 : 0;
}

std::uint64_t ScaleBytes(std::uint64_t bytes, double factor) {
  return static_cast<std::uint64_t>(
      std::llroundl(static_cast<long double>(bytes) * factor));
}

std::uint64_t ScaleTasks(std::uint64_t tasks, double factor) {
  if (tasks == 0) return 0;
  const auto scaled = static_cast<std::uint64_t>(
      std::llroundl(static_cast<long double>(tasks) * factor));
  return std::max<std::uint64_t>(scaled, 1);
}

SyntheticJob FromRecord(const JobRecord& r, std::int64_t offset) {
  SyntheticJob job;
  job.submit_offset = offset;
  job.input_bytes = *r.input_bytes;
  job.shuffle_bytes = *r.shuffle_bytes;
  job.output_bytes = *r.output_bytes;
  job.map_task_seconds = *r.map_task_seconds;
  job.reduce_task_seconds = *r.reduce_task_seconds;
  job.map_tasks = TaskCount(r.map_tasks, job.map_task_seconds);
  job.reduce_tasks = TaskCount(r.reduce_tasks, job.reduce_task_seconds);
  job.source_job_id = r.job_id;
  job.duration = *r.duration;
  job.name = r.name;
  return job;
}

SyntheticJob ScaleJob(SyntheticJob job, double factor) {
  job.input_bytes = ScaleBytes(job.input_bytes, factor);
  job.shuffle_bytes = ScaleBytes(job.shuffle_bytes, factor);
  job.output_bytes = ScaleBytes(job.output_bytes, factor);
  job.map_tasks = ScaleTasks(job.map_tasks, factor);
  job.reduce_tasks = ScaleTasks(job.reduce_tasks, factor);
  job.map_task_seconds *= factor;
  job.reduce_task_seconds *= factor;
  return job;
}

}  // namespace

std::int64_t WorkloadModel::span_length() const {
  return source ? source->span().length() : 0;
}

std::size_t WorkloadModel::job_count() const {
  std::size_t n = 0;
  for (const auto& w : windows) n += w.members.size();
  return n;
}

WorkloadModel BuildWorkloadModel(const Trace& trace,
                                 std::int64_t window_width) {
  if (window_width <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "window width must be positive");
  }
  if (trace.empty()) throw Error(ErrorCode::kNoCompleteJobs, "empty trace");
  WorkloadModel model;
  model.source = &trace;
  model.source_label = trace.label();
  model.source_machine_count = trace.machine_count();
  model.window_width = window_width;

  const std::int64_t length = trace.span().length();
  const auto count =
      static_cast<std::size_t>((length + window_width - 1) / window_width);
  model.windows.resize(count);
  for (std::size_t w = 0; w < count; ++w) {
    const auto start = static_cast<std::int64_t>(w) * window_width;
    model.windows[w].start_offset = start;
    model.windows[w].width = std::min(window_width, length - start);
  }
  const auto& records = trace.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!Complete(r)) {
      ++model.excluded_count;
      continue;
    }
    if (!r.map_tasks || !r.reduce_tasks) ++model.derived_task_counts;
    const auto w = static_cast<std::size_t>((r.submit_time - trace.span().start) /
                                            window_width);
    model.windows[w].members.push_back(i);
  }
  if (model.job_count() == 0) {
    throw Error(ErrorCode::kNoCompleteJobs,
                "no job carries all six dimensions");
  }
  return model;
}

SyntheticWorkload Synthesize(const WorkloadModel& model,
                             const SynthesisOptions& options) {
  if (model.source == nullptr || model.job_count() == 0) {
    throw Error(ErrorCode::kNoCompleteJobs, "empty workload model");
  }
  if (options.target_machine_count == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "target machine count must be positive");
  }
  const std::int64_t source_span = model.span_length();
  const std::int64_t target_span = options.target_span.value_or(source_span);
  if (target_span <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "target span must be positive");
  }

  SyntheticWorkload out;
  out.target_machine_count = options.target_machine_count;
  out.scale_factor = static_cast<double>(options.target_machine_count) /
                     static_cast<double>(model.source_machine_count);
  out.seed = options.seed;
  const auto& records = model.source->records();
  const std::int64_t origin = model.source->span().start;

  if (options.mode == SynthesisMode::kReplayScaled) {
    if (target_span > source_span) {
      throw Error(ErrorCode::kSpanTooLong,
                  "target span exceeds the source span");
    }
    for (const auto& w : model.windows) {
      for (std::size_t i : w.members) {
        const std::int64_t offset = records[i].submit_time - origin;
        if (offset >= target_span) continue;
        out.jobs.push_back(
            ScaleJob(FromRecord(records[i], offset), out.scale_factor));
      }
    }
    return out;
  }

  // Windowed whole-job sampling. Each target window draws from the source
  // window at the same position (wrapping when the target is longer), with
  // an independent stream per window.
  const std::int64_t width = model.window_width;
  const auto target_windows =
      static_cast<std::size_t>((target_span + width - 1) / width);
  std::vector<std::vector<SyntheticJob>> per_window(target_windows);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t tw = 0; tw < static_cast<std::int64_t>(target_windows);
       ++tw) {
    const auto w = static_cast<std::size_t>(tw);
    const Window& src = model.windows[w % model.windows.size()];
    if (src.members.empty()) continue;
    std::mt19937_64 rng(SplitMix64(options.seed ^ SplitMix64(w)));
    const std::int64_t start = static_cast<std::int64_t>(w) * width;
    const std::int64_t covered = std::min(width, target_span - start);
    const double expected = static_cast<double>(src.members.size()) *
                            static_cast<double>(covered) /
                            static_cast<double>(src.width);
    auto count = static_cast<std::uint64_t>(std::floor(expected));
    const double remainder = expected - static_cast<double>(count);
    if (remainder > 0.0 && Uniform01(rng) < remainder) ++count;

    auto& jobs = per_window[w];
    jobs.reserve(count);
    for (std::uint64_t j = 0; j < count; ++j) {
      const std::size_t pick =
          src.members[UniformBelow(rng, src.members.size())];
      const auto offset = start + static_cast<std::int64_t>(UniformBelow(
                                      rng, static_cast<std::uint64_t>(covered)));
      jobs.push_back(ScaleJob(FromRecord(records[pick], offset),
                              out.scale_factor));
    }
    std::stable_sort(jobs.begin(), jobs.end(),
                     [](const SyntheticJob& a, const SyntheticJob& b) {
                       return a.submit_offset < b.submit_offset;
                     });
  }
  for (auto& jobs : per_window) {
    out.jobs.insert(out.jobs.end(), std::make_move_iterator(jobs.begin()),
                    std::make_move_iterator(jobs.end()));
  }
  return out;
}

SyntheticWorkload Rescale(const SyntheticWorkload& workload, double factor) {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be positive");
  }
  SyntheticWorkload out = workload;
  out.scale_factor *= factor;
  out.target_machine_count = static_cast<std::uint32_t>(std::max<long long>(
      1, std::llround(workload.target_machine_count * factor)));
  for (auto& job : out.jobs) job = ScaleJob(job, factor);
  return out;
}

std::string SyntheticInputPath(std::uint64_t source_job_id) {
  return "/synthetic/input/" + std::to_string(source_job_id);
}

std::string SyntheticOutputPath(std::size_t job_index) {
  return "/synthetic/output/" + std::to_string(job_index);
}

DataPlan DataPrepopulationPlan(const SyntheticWorkload& workload) {
  if (workload.jobs.empty()) {
    throw Error(ErrorCode::kEmptyWorkload, "no synthetic jobs to plan for");
  }
  DataPlan plan;
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (const auto& job : workload.jobs) {
    auto [it, inserted] = slot.emplace(job.source_job_id, plan.files.size());
    if (inserted) {
      plan.files.push_back(
          {SyntheticInputPath(job.source_job_id), job.input_bytes});
    } else {
      auto& f = plan.files[it->second];
      f.size_bytes = std::max(f.size_bytes, job.input_bytes);
    }
  }
  for (const auto& f : plan.files) plan.total_bytes += f.size_bytes;
  return plan;
}

void WriteDataPlanTsv(const DataPlan& plan, std::ostream& out) {
  out << "file_id\tsize_bytes\n";
  for (const auto& f : plan.files) out << f.file_id << '\t' << f.size_bytes << '\n';
}

Trace WorkloadToTrace(const SyntheticWorkload& workload,
                      const std::string& label) {
  std::vector<JobRecord> records;
  records.reserve(workload.jobs.size());
  for (std::size_t i = 0; i < workload.jobs.size(); ++i) {
    const auto& job = workload.jobs[i];
    JobRecord r;
    r.job_id = i + 1;
    r.name = job.name;
    r.submit_time = job.submit_offset;
    r.duration = job.duration;
    r.input_bytes = job.input_bytes;
    r.shuffle_bytes = job.shuffle_bytes;
    r.output_bytes = job.output_bytes;
    r.map_task_seconds = job.map_task_seconds;
    r.reduce_task_seconds = job.reduce_task_seconds;
    r.map_tasks = job.map_tasks;
    r.reduce_tasks = job.reduce_tasks;
    r.input_path_hash = HashPath(SyntheticInputPath(job.source_job_id));
    r.output_path_hash = HashPath(SyntheticOutputPath(i + 1));
    records.push_back(std::move(r));
  }
  return Trace(label, workload.target_machine_count, std::move(records));
}

SyntheticWorkload TraceToWorkload(const Trace& trace, std::size_t* excluded) {
  SyntheticWorkload out;
  out.target_machine_count = trace.machine_count();
  std::size_t dropped = 0;
  for (const auto& r : trace.records()) {
    if (!Complete(r)) {
      ++dropped;
      continue;
    }
    out.jobs.push_back(FromRecord(r, r.submit_time - trace.span().start));
  }
  if (excluded) *excluded = dropped;
  return out;
}

}  // namespace mrtrace
