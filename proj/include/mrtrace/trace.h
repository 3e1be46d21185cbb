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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mrtrace {

// Per-job summary as recorded by the cluster's job history. Every dimension
// except the identifier and submit time may be absent in a given trace; absent
// stays absent (never zero-filled).
struct JobRecord {
  std::uint64_t job_id = 0;
  std::optional<std::string> name;
  std::int64_t submit_time = 0;  // whole seconds since epoch
  std::optional<double> duration;
  std::optional<std::uint64_t> input_bytes;
  std::optional<std::uint64_t> shuffle_bytes;
  std::optional<std::uint64_t> output_bytes;
  std::optional<double> map_task_seconds;
  std::optional<double> reduce_task_seconds;
  std::optional<std::uint64_t> map_tasks;
  std::optional<std::uint64_t> reduce_tasks;
  std::optional<std::uint64_t> input_path_hash;
  std::optional<std::uint64_t> output_path_hash;

  bool operator==(const JobRecord&) const = default;
};

// Names of the optional fields, in canonical column order.
const std::vector<std::string>& OptionalFieldNames();
// All columns of the canonical format, in order.
const std::vector<std::string>& CanonicalColumns();

// Half-open time range [start, end) in seconds.
struct TimeSpan {
  std::int64_t start = 0;
  std::int64_t end = 0;

  std::int64_t length() const { return end - start; }
  bool operator==(const TimeSpan&) const = default;
};

// Immutable after construction. Records are sorted by submit_time (stable).
class Trace {
 public:
  Trace() = default;
  // Sorts `records` by submit_time (stable), checks job_id uniqueness and
  // derives the span [min submit, max submit + 1).
  Trace(std::string label, std::uint32_t machine_count,
        std::vector<JobRecord> records);

  const std::string& label() const { return label_; }
  std::uint32_t machine_count() const { return machine_count_; }
  const std::vector<JobRecord>& records() const { return records_; }
  const TimeSpan& span() const { return span_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::string label_;
  std::uint32_t machine_count_ = 1;
  std::vector<JobRecord> records_;
  TimeSpan span_;
};

enum class TraceFormat { kJsonl, kCsv };

struct ParseOptions {
  std::string label = "trace";
  std::uint32_t machine_count = 1;
};

Trace ParseTrace(std::istream& source, TraceFormat format,
                 const ParseOptions& options = {});
Trace ReadTraceFile(const std::string& path, const ParseOptions& options = {});
// Picks csv for a ".csv" suffix and jsonl otherwise.
TraceFormat FormatForPath(std::string_view path);

// Canonical jsonl: one object per line, keys in CanonicalColumns() order,
// missing fields omitted.
std::string SerializeRecord(const JobRecord& record);
void WriteJsonl(const Trace& trace, std::ostream& out);

struct Anomaly {
  std::uint64_t job_id = 0;
  std::string description;

  bool operator==(const Anomaly&) const = default;
};

struct ValidationReport {
  std::size_t record_count = 0;
  std::map<std::string, std::size_t> missing_field_counts;
  std::vector<Anomaly> anomalies;
  std::uint64_t path_hash_seed = 0;

  bool operator==(const ValidationReport&) const = default;
};

ValidationReport Validate(const Trace& trace);

// Invariant violations of a single record; empty when the record is sound.
std::vector<std::string> RecordAnomalies(const JobRecord& record);

inline constexpr std::uint64_t kPathHashSeed = 0;

// XXH64 over raw bytes.
std::uint64_t Xxh64(std::string_view data, std::uint64_t seed);
// Digest used for path identity. Throws Error(kEmptyPath) on "".
std::uint64_t HashPath(std::string_view path);

}  // namespace mrtrace
