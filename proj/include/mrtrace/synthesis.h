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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrtrace/trace.h"

namespace mrtrace {

struct Window {
  std::int64_t start_offset = 0;  // relative to the trace span start
  std::int64_t width = 0;         // last window may be narrower
  std::vector<std::size_t> members;  // indices into trace records
};

// Empirical model: the trace itself, partitioned into submit-time windows.
// Holds a non-owning pointer to the source trace, which must outlive it.
struct WorkloadModel {
  const Trace* source = nullptr;
  std::string source_label;
  std::uint32_t source_machine_count = 1;
  std::int64_t window_width = 3600;
  std::vector<Window> windows;
  std::size_t excluded_count = 0;
  // Included jobs whose task counts were absent and derived from task time.
  std::size_t derived_task_counts = 0;

  std::int64_t span_length() const;
  std::size_t job_count() const;
};

WorkloadModel BuildWorkloadModel(const Trace& trace,
                                 std::int64_t window_width = 3600);

struct SyntheticJob {
  std::int64_t submit_offset = 0;
  std::uint64_t input_bytes = 0;
  std::uint64_t shuffle_bytes = 0;
  std::uint64_t output_bytes = 0;
  std::uint64_t map_tasks = 0;
  std::uint64_t reduce_tasks = 0;
  double map_task_seconds = 0.0;
  double reduce_task_seconds = 0.0;
  std::uint64_t source_job_id = 0;
  double duration = 0.0;
  std::optional<std::string> name;

  bool operator==(const SyntheticJob&) const = default;
};

struct SyntheticWorkload {
  std::vector<SyntheticJob> jobs;
  std::uint32_t target_machine_count = 1;
  double scale_factor = 1.0;
  std::uint64_t seed = 0;
};

enum class SynthesisMode { kReplayScaled, kSampled };

struct SynthesisOptions {
  std::uint32_t target_machine_count = 1;
  std::optional<std::int64_t> target_span;  // defaults to the source span
  SynthesisMode mode = SynthesisMode::kSampled;
  std::uint64_t seed = 42;
};

SyntheticWorkload Synthesize(const WorkloadModel& model,
                             const SynthesisOptions& options);

// Rescales every byte and task metric of an existing synthetic workload.
SyntheticWorkload Rescale(const SyntheticWorkload& workload, double factor);

struct PlannedFile {
  std::string file_id;
  std::uint64_t size_bytes = 0;
};

struct DataPlan {
  std::vector<PlannedFile> files;
  std::uint64_t total_bytes = 0;
  // Shared-file access skew across synthetic jobs is not reproduced.
  bool access_skew_reproduced = false;
};

DataPlan DataPrepopulationPlan(const SyntheticWorkload& workload);
void WriteDataPlanTsv(const DataPlan& plan, std::ostream& out);

std::string SyntheticInputPath(std::uint64_t source_job_id);
std::string SyntheticOutputPath(std::size_t job_index);

// Canonical-schema view of a synthetic workload, so every analysis applies.
Trace WorkloadToTrace(const SyntheticWorkload& workload,
                      const std::string& label = "synthetic");
// Inverse direction for replay: jobs lacking task data are dropped and
// counted in `excluded`.
SyntheticWorkload TraceToWorkload(const Trace& trace,
                                  std::size_t* excluded = nullptr);

}  // namespace mrtrace
