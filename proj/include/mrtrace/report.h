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
#include <map>
#include <string>

#include <json.hpp>

#include "mrtrace/stats.h"
#include "mrtrace/trace.h"

namespace mrtrace {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

struct AnalyzeOptions {
  std::int64_t bucket_width = 3600;
  std::uint64_t seed = kDefaultSeed;
  std::size_t k_max = 10;
  double elbow_threshold = 0.10;
  std::size_t restarts = 5;
  // Elbow search runs on a seeded row sample of this size; the final model is
  // fit on every row. 0 disables sampling.
  std::size_t cluster_sample = 20000;
  double name_cutoff = 0.01;
  std::size_t periodogram_top_k = 5;
  double access_quantile = 0.80;
};

// File name -> file content for figure-shaped plot data.
using PlotFiles = std::map<std::string, std::string>;

struct AnalysisOutput {
  nlohmann::json report;
  PlotFiles plots;
};

// Runs every analysis that the trace's fields allow. Sections that cannot run
// are recorded as skipped with the reason.
AnalysisOutput AnalyzeTrace(const Trace& trace, const AnalyzeOptions& options);

// Rounds to 9 significant digits; non-finite values become null.
nlohmann::json Num(double value);

// Deterministic serialization (sorted keys, two-space indent, trailing
// newline).
std::string RenderJson(const nlohmann::json& document);

std::string CdfTsv(const EmpiricalCDF& cdf);
std::string FormatNumber(double value);

// Writes via a sibling temp file and rename. Throws kIoError.
void WriteFileAtomic(const std::string& path, const std::string& content);
void WritePlotFiles(const std::string& directory, const PlotFiles& plots);

}  // namespace mrtrace
