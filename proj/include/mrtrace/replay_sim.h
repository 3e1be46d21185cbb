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
#include <vector>

#include "mrtrace/synthesis.h"
#include "mrtrace/temporal.h"

namespace mrtrace {

enum class Scheduler { kFifo, kFair };
const char* SchedulerName(Scheduler scheduler);

struct SimConfig {
  std::uint32_t nodes = 1;
  std::uint32_t map_slots_per_node = 1;
  std::uint32_t reduce_slots_per_node = 1;
  Scheduler scheduler = Scheduler::kFifo;

  std::uint64_t map_slots() const;
  std::uint64_t reduce_slots() const;
};

// Simulated time is integer microseconds.
using Micros = std::int64_t;
inline constexpr Micros kMicrosPerSecond = 1'000'000;

struct JobTiming {
  Micros submit = 0;
  Micros first_task_start = 0;
  Micros completion = 0;

  bool operator==(const JobTiming&) const = default;
};

enum class TaskKind : std::uint8_t { kMap, kReduce };

struct TaskInterval {
  Micros start = 0;
  Micros end = 0;
  std::uint32_t job = 0;
  TaskKind kind = TaskKind::kMap;

  bool operator==(const TaskInterval&) const = default;
};

struct SimResult {
  std::vector<JobTiming> jobs;
  std::vector<TaskInterval> tasks;  // in start order
  Micros makespan = 0;
  Micros busy_map_slot_micros = 0;
  Micros busy_reduce_slot_micros = 0;

  double makespan_seconds() const;
  double busy_map_slot_seconds() const;
  double busy_reduce_slot_seconds() const;
};

// Event-driven slot simulation. Each job expands into equal-length map tasks
// and reduce tasks; reduces wait for every map of the job. Throws
// kUnsortedWorkload if submit offsets decrease, kInvalidArgument on a zero
// slot count.
SimResult Simulate(const SyntheticWorkload& workload, const SimConfig& config);

// Average active slots per bucket from the exact task intervals.
TimeSeries SimOccupancySeries(const SimResult& result,
                              std::int64_t bucket_width = kHour);

// Splits `total` microseconds over `tasks` tasks; the first total % tasks
// tasks get one extra microsecond.
Micros TaskDuration(Micros total, std::uint64_t tasks, std::uint64_t index);

}  // namespace mrtrace
