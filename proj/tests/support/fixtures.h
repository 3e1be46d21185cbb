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
#include <filesystem>
#include <string>
#include <vector>

#include "mrtrace/trace.h"

namespace mrtrace::testing {

// A record carrying every field.
JobRecord CompleteJob(std::uint64_t id, std::int64_t submit);

struct FixtureOptions {
  std::size_t jobs = 1000;
  std::int64_t span_seconds = 7 * 86400;
  std::uint64_t seed = 1;
  bool names = true;
  bool path_hashes = true;
  // Submit times follow a daily cycle instead of a uniform spread.
  bool diurnal = true;
  std::size_t distinct_inputs = 2000;
};

// Synthetic job history with heavy-tailed sizes, a data/compute coupling and
// Zipf-like path reuse.
std::vector<JobRecord> FixtureRecords(const FixtureOptions& options);
Trace FixtureTrace(const FixtureOptions& options,
                   const std::string& label = "fixture");

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string File(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

std::string ReadFile(const std::string& path);
void WriteTraceFile(const Trace& trace, const std::string& path);

}  // namespace mrtrace::testing
