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

#include "mrtrace/cache_sim.h"

#include <algorithm>
#include <list>
#include <unordered_map>

#include "mrtrace/error.h"

namespace mrtrace {

std::vector<AccessEvent> AccessStream(const Trace& trace) {
  std::unordered_map<std::uint64_t, std::uint64_t> known_size;
  auto note = [&](const std::optional<std::uint64_t>& digest,
                  const std::optional<std::uint64_t>& bytes) {
    if (digest && bytes) {
      auto& s = known_size[*digest];
      s = std::max(s, *bytes);
    }
  };
  for (const auto& r : trace.records()) {
    note(r.input_path_hash, r.input_bytes);
    note(r.output_path_hash, r.output_bytes);
  }
  // One size per file: the largest byte count seen for the digest.
  auto size_of = [&](std::uint64_t digest) {
    auto it = known_size.find(digest);
    return it == known_size.end() ? std::uint64_t{0} : it->second;
  };

  std::vector<AccessEvent> events;
  for (const auto& r : trace.records()) {
    const auto submit = static_cast<double>(r.submit_time);
    if (r.input_path_hash) {
      events.push_back({submit, *r.input_path_hash,
                        size_of(*r.input_path_hash),
                        AccessKind::kInputRead});
    }
    if (r.output_path_hash) {
      events.push_back({submit + r.duration.value_or(0.0),
                        *r.output_path_hash,
                        size_of(*r.output_path_hash),
                        AccessKind::kOutputWrite});
    }
  }
  if (events.empty()) {
    throw Error(ErrorCode::kNoData, "no job carries a path hash");
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const AccessEvent& a, const AccessEvent& b) {
                     return a.time < b.time;
                   });
  return events;
}

namespace {

class WholeFileCache {
 public:
  explicit WholeFileCache(const CacheConfig& config) : config_(config) {}

  void Replay(const AccessEvent& e, CacheReport& report) {
    if (config_.eviction == Eviction::kIdleTtl) ExpireIdle(e.time, report);

    auto it = index_.find(e.file_digest);
    if (e.kind == AccessKind::kInputRead) {
      ++report.accesses;
      report.accessed_bytes += e.file_size;
      if (it != index_.end() && it->second->size >= e.file_size) {
        ++report.hits;
        report.hit_bytes += e.file_size;
        resident_bytes_ -= it->second->size - e.file_size;
        it->second->size = e.file_size;
        it->second->last_access = e.time;
        recency_.splice(recency_.begin(), recency_, it->second);
        return;
      }
    }
    // Miss or write: the old copy (if any) is replaced by the new one.
    if (it != index_.end()) {
      resident_bytes_ -= it->second->size;
      recency_.erase(it->second);
      index_.erase(it);
    }
    if (config_.admission == Admission::kSizeAtMost &&
        e.file_size > config_.size_threshold) {
      return;
    }
    // A file that cannot fit even in an empty cache still flushes it, which
    // keeps lru contents a prefix of the recency order at every capacity.
    while (!recency_.empty() &&
           resident_bytes_ + e.file_size > config_.capacity_bytes) {
      EvictTail(report);
    }
    if (e.file_size > config_.capacity_bytes) return;
    recency_.push_front({e.file_digest, e.file_size, e.time});
    index_[e.file_digest] = recency_.begin();
    resident_bytes_ += e.file_size;
    report.peak_resident_bytes =
        std::max(report.peak_resident_bytes, resident_bytes_);
  }

 private:
  struct Entry {
    std::uint64_t digest;
    std::uint64_t size;
    double last_access;
  };

  // Least recently used is also least recently touched, so idle files sit at
  // the tail.
  void ExpireIdle(double now, CacheReport& report) {
    while (!recency_.empty() &&
           now - recency_.back().last_access > config_.idle_ttl_seconds) {
      EvictTail(report);
    }
  }

  void EvictTail(CacheReport& report) {
    const Entry& victim = recency_.back();
    resident_bytes_ -= victim.size;
    index_.erase(victim.digest);
    recency_.pop_back();
    ++report.evictions;
  }

  CacheConfig config_;
  std::list<Entry> recency_;  // most recent first
  std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index_;
  std::uint64_t resident_bytes_ = 0;
};

void CheckConfig(const CacheConfig& config) {
  if (config.capacity_bytes == 0) {
    throw Error(ErrorCode::kInvalidArgument, "capacity must be positive");
  }
  if (config.admission == Admission::kSizeAtMost &&
      config.size_threshold == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "size threshold must be positive");
  }
  if (config.eviction == Eviction::kIdleTtl &&
      !(config.idle_ttl_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "idle ttl must be positive");
  }
}

}  // namespace

CacheReport SimulateCache(const std::vector<AccessEvent>& stream,
                          const CacheConfig& config) {
  CheckConfig(config);
  for (std::size_t i = 1; i < stream.size(); ++i) {
    if (stream[i].time < stream[i - 1].time) {
      throw Error(ErrorCode::kUnsortedStream,
                  "event " + std::to_string(i) + " precedes its predecessor");
    }
  }
  CacheReport report;
  WholeFileCache cache(config);
  for (const auto& e : stream) cache.Replay(e, report);
  if (report.accesses > 0) {
    report.hit_rate_by_accesses = static_cast<double>(report.hits) /
                                  static_cast<double>(report.accesses);
  }
  if (report.accessed_bytes > 0) {
    report.hit_rate_by_bytes = static_cast<double>(report.hit_bytes) /
                               static_cast<double>(report.accessed_bytes);
  }
  return report;
}

std::vector<CacheReport> SweepCache(const std::vector<AccessEvent>& stream,
                                    const std::vector<CacheConfig>& configs) {
  for (const auto& c : configs) CheckConfig(c);
  std::vector<CacheReport> reports(configs.size());
  // Errors cannot escape an OpenMP region, so the sortedness check runs once
  // up front.
  if (!configs.empty()) reports[0] = SimulateCache(stream, configs[0]);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 1; i < static_cast<std::int64_t>(configs.size());
       ++i) {
    reports[static_cast<std::size_t>(i)] =
        SimulateCache(stream, configs[static_cast<std::size_t>(i)]);
  }
  return reports;
}

}  // namespace mrtrace
