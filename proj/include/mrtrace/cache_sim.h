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
#include <optional>
#include <vector>

#include "mrtrace/trace.h"

namespace mrtrace {

enum class AccessKind : std::uint8_t { kInputRead, kOutputWrite };

struct AccessEvent {
  double time = 0.0;
  std::uint64_t file_digest = 0;
  std::uint64_t file_size = 0;
  AccessKind kind = AccessKind::kInputRead;

  bool operator==(const AccessEvent&) const = default;
};

// Input reads at submit time, output writes at submit + duration. Event size
// is the largest byte count seen for the digest anywhere in the trace, else
// zero. Throws kNoData when no job carries a path hash.
std::vector<AccessEvent> AccessStream(const Trace& trace);

enum class Admission { kAll, kSizeAtMost };
enum class Eviction { kLru, kIdleTtl };

struct CacheConfig {
  std::uint64_t capacity_bytes = 0;
  Admission admission = Admission::kAll;
  std::uint64_t size_threshold = 0;  // used with kSizeAtMost
  Eviction eviction = Eviction::kLru;
  double idle_ttl_seconds = 0.0;     // used with kIdleTtl
};

struct CacheReport {
  std::uint64_t accesses = 0;  // reads
  std::uint64_t hits = 0;
  std::uint64_t accessed_bytes = 0;
  std::uint64_t hit_bytes = 0;
  double hit_rate_by_accesses = 0.0;
  double hit_rate_by_bytes = 0.0;
  std::uint64_t evictions = 0;
  std::uint64_t peak_resident_bytes = 0;

  bool operator==(const CacheReport&) const = default;
};

// Whole-file cache replay. Throws kUnsortedStream if event times decrease and
// kInvalidArgument on an invalid config.
CacheReport SimulateCache(const std::vector<AccessEvent>& stream,
                          const CacheConfig& config);

// Independent configurations evaluated concurrently; output order matches
// `configs`.
std::vector<CacheReport> SweepCache(const std::vector<AccessEvent>& stream,
                                    const std::vector<CacheConfig>& configs);

}  // namespace mrtrace
