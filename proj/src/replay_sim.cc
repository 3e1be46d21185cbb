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

#include "mrtrace/replay_sim.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <tuple>

#include "mrtrace/error.h"

namespace mrtrace {

const char* SchedulerName(Scheduler scheduler) {
  return scheduler == Scheduler::kFifo ? "fifo" : "fair";
}

std::uint64_t SimConfig::map_slots() const {
  return static_cast<std::uint64_t>(nodes) * map_slots_per_node;
}

std::uint64_t SimConfig::reduce_slots() const {
  return static_cast<std::uint64_t>(nodes) * reduce_slots_per_node;
}

double SimResult::makespan_seconds() const {
  return static_cast<double>(makespan) / kMicrosPerSecond;
}
double SimResult::busy_map_slot_seconds() const {
  return static_cast<double>(busy_map_slot_micros) / kMicrosPerSecond;
}
double SimResult::busy_reduce_slot_seconds() const {
  return static_cast<double>(busy_reduce_slot_micros) / kMicrosPerSecond;
}

Micros TaskDuration(Micros total, std::uint64_t tasks, std::uint64_t index) {
  const auto n = static_cast<Micros>(tasks);
  const Micros base = total / n;
  return base + (static_cast<Micros>(index) < total % n ? 1 : 0);
}

namespace {

Micros ToMicros(double seconds) {
  return static_cast<Micros>(std::llround(seconds * kMicrosPerSecond));
}

struct JobState {
  Micros submit = 0;
  Micros map_total = 0;
  Micros reduce_total = 0;
  std::uint64_t map_tasks = 0;
  std::uint64_t reduce_tasks = 0;
  std::uint64_t maps_launched = 0;
  std::uint64_t maps_done = 0;
  std::uint64_t reduces_launched = 0;
  std::uint64_t reduces_done = 0;
  std::uint64_t running_maps = 0;
  std::uint64_t running_reduces = 0;
  Micros first_start = -1;
  Micros completion = -1;
};

struct Completion {
  Micros time;
  std::uint32_t job;
  TaskKind kind;
  std::uint64_t task;

  bool operator>(const Completion& o) const {
    return std::tie(time, job, kind, task) >
           std::tie(o.time, o.job, o.kind, o.task);
  }
};

// Runnable jobs for one task kind. FIFO orders by submit position; fair
// orders by fewest running tasks of that kind, then submit position.
class RunQueue {
 public:
  explicit RunQueue(Scheduler scheduler) : scheduler_(scheduler) {}

  void Add(std::uint32_t job, std::uint64_t running) {
    set_.insert(Key(job, running));
  }
  void Remove(std::uint32_t job, std::uint64_t running) {
    set_.erase(Key(job, running));
  }
  void Update(std::uint32_t job, std::uint64_t old_running,
              std::uint64_t new_running) {
    if (scheduler_ == Scheduler::kFifo) return;
    auto it = set_.find(Key(job, old_running));
    if (it == set_.end()) return;
    set_.erase(it);
    set_.insert(Key(job, new_running));
  }
  bool empty() const { return set_.empty(); }
  std::uint32_t Front() const { return set_.begin()->second; }

 private:
  std::pair<std::uint64_t, std::uint32_t> Key(std::uint32_t job,
                                              std::uint64_t running) const {
    return {scheduler_ == Scheduler::kFair ? running : 0, job};
  }

  Scheduler scheduler_;
  std::set<std::pair<std::uint64_t, std::uint32_t>> set_;
};

}  // namespace

SimResult Simulate(const SyntheticWorkload& workload, const SimConfig& config) {
  if (config.nodes == 0 || config.map_slots_per_node == 0 ||
      config.reduce_slots_per_node == 0) {
    throw Error(ErrorCode::kInvalidArgument, "slot counts must be positive");
  }
  const auto& in = workload.jobs;
  for (std::size_t i = 1; i < in.size(); ++i) {
    if (in[i].submit_offset < in[i - 1].submit_offset) {
      throw Error(ErrorCode::kUnsortedWorkload,
                  "job " + std::to_string(i) + " submitted before job " +
                      std::to_string(i - 1));
    }
  }

  std::vector<JobState> jobs(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto& s = jobs[i];
    s.submit = static_cast<Micros>(in[i].submit_offset) * kMicrosPerSecond;
    s.map_tasks = in[i].map_tasks;
    s.reduce_tasks = in[i].reduce_tasks;
    s.map_total = s.map_tasks ? ToMicros(in[i].map_task_seconds) : 0;
    s.reduce_total = s.reduce_tasks ? ToMicros(in[i].reduce_task_seconds) : 0;
  }

  SimResult result;
  std::priority_queue<Completion, std::vector<Completion>, std::greater<>>
      pending;
  RunQueue map_queue(config.scheduler);
  RunQueue reduce_queue(config.scheduler);
  std::uint64_t free_maps = config.map_slots();
  std::uint64_t free_reduces = config.reduce_slots();
  std::size_t next_arrival = 0;

  auto finish_job = [&](JobState& s, Micros t) { s.completion = t; };

  auto launch = [&](std::uint32_t j, TaskKind kind, Micros t) {
    auto& s = jobs[j];
    if (s.first_start < 0) s.first_start = t;
    const bool map = kind == TaskKind::kMap;
    const std::uint64_t index = map ? s.maps_launched++ : s.reduces_launched++;
    const Micros d = map ? TaskDuration(s.map_total, s.map_tasks, index)
                         : TaskDuration(s.reduce_total, s.reduce_tasks, index);
    result.tasks.push_back({t, t + d, j, kind});
    (map ? result.busy_map_slot_micros : result.busy_reduce_slot_micros) += d;
    pending.push({t + d, j, kind, index});
    auto& queue = map ? map_queue : reduce_queue;
    auto& running = map ? s.running_maps : s.running_reduces;
    const std::uint64_t launched = map ? s.maps_launched : s.reduces_launched;
    const std::uint64_t total = map ? s.map_tasks : s.reduce_tasks;
    if (launched == total) {
      queue.Remove(j, running);
      ++running;
    } else {
      queue.Update(j, running, running + 1);
      ++running;
    }
  };

  auto dispatch = [&](Micros t) {
    while (free_maps > 0 && !map_queue.empty()) {
      launch(map_queue.Front(), TaskKind::kMap, t);
      --free_maps;
    }
    while (free_reduces > 0 && !reduce_queue.empty()) {
      launch(reduce_queue.Front(), TaskKind::kReduce, t);
      --free_reduces;
    }
  };

  while (next_arrival < jobs.size() || !pending.empty()) {
    Micros t = pending.empty() ? jobs[next_arrival].submit : pending.top().time;
    if (next_arrival < jobs.size()) t = std::min(t, jobs[next_arrival].submit);

    while (!pending.empty() && pending.top().time == t) {
      const Completion c = pending.top();
      pending.pop();
      auto& s = jobs[c.job];
      if (c.kind == TaskKind::kMap) {
        ++free_maps;
        map_queue.Update(c.job, s.running_maps, s.running_maps - 1);
        --s.running_maps;
        if (++s.maps_done == s.map_tasks) {
          if (s.reduce_tasks == 0) {
            finish_job(s, t);
          } else {
            reduce_queue.Add(c.job, s.running_reduces);
          }
        }
      } else {
        ++free_reduces;
        reduce_queue.Update(c.job, s.running_reduces, s.running_reduces - 1);
        --s.running_reduces;
        if (++s.reduces_done == s.reduce_tasks) finish_job(s, t);
      }
    }
    while (next_arrival < jobs.size() && jobs[next_arrival].submit == t) {
      const auto j = static_cast<std::uint32_t>(next_arrival++);
      auto& s = jobs[j];
      if (s.map_tasks == 0 && s.reduce_tasks == 0) {
        s.first_start = t;
        finish_job(s, t);
      } else if (s.map_tasks > 0) {
        map_queue.Add(j, 0);
      } else {
        reduce_queue.Add(j, 0);
      }
    }
    dispatch(t);
  }

  Micros first_submit = jobs.empty() ? 0 : jobs.front().submit;
  Micros last_completion = first_submit;
  result.jobs.reserve(jobs.size());
  for (const auto& s : jobs) {
    result.jobs.push_back({s.submit, s.first_start, s.completion});
    last_completion = std::max(last_completion, s.completion);
  }
  result.makespan = last_completion - first_submit;
  return result;
}

TimeSeries SimOccupancySeries(const SimResult& result,
                              std::int64_t bucket_width) {
  if (bucket_width <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "bucket width must be positive");
  }
  if (result.jobs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty simulation result");
  }
  const Micros width = bucket_width * kMicrosPerSecond;
  Micros last = 0;
  for (const auto& j : result.jobs) last = std::max(last, j.completion);
  for (const auto& t : result.tasks) last = std::max(last, t.end);
  const auto n = static_cast<std::size_t>(std::max<Micros>(
      1, (last + width - 1) / width));
  std::vector<Micros> busy(n, 0);
  for (const auto& t : result.tasks) {
    for (auto b = static_cast<std::size_t>(t.start / width);
         b < n && static_cast<Micros>(b) * width < t.end; ++b) {
      const Micros lo = std::max(t.start, static_cast<Micros>(b) * width);
      const Micros hi = std::min(t.end, static_cast<Micros>(b + 1) * width);
      if (hi > lo) busy[b] += hi - lo;
    }
  }
  TimeSeries series;
  series.bucket_width = bucket_width;
  series.start = 0;
  series.dimension = SeriesDimension::kOccupancySlots;
  series.values.resize(n);
  for (std::size_t b = 0; b < n; ++b) {
    series.values[b] =
        static_cast<double>(busy[b]) / static_cast<double>(width);
  }
  return series;
}

}  // namespace mrtrace
