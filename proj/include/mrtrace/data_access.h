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
#include <span>
#include <vector>

#include "mrtrace/stats.h"
#include "mrtrace/trace.h"

namespace mrtrace {

enum class SizeDimension { kInput, kShuffle, kOutput };
enum class AccessSide { kInput, kOutput };

const char* DimensionName(SizeDimension dimension);
const char* SideName(AccessSide side);

struct DataSizeCdf {
  EmpiricalCDF cdf;
  std::size_t excluded_count = 0;  // records lacking the dimension
};

// Per-job byte counts for one dimension. Throws kNoData if every record lacks
// the dimension.
DataSizeCdf ComputeDataSizeCdf(const Trace& trace, SizeDimension dimension);

struct AccessEntry {
  std::uint64_t file_digest = 0;
  std::uint64_t access_count = 0;
  // Largest byte count observed for the digest on this side.
  std::optional<std::uint64_t> size_bytes;

  bool operator==(const AccessEntry&) const = default;
};

// Sorted by non-increasing access_count, ties by ascending digest.
struct RankedAccessTable {
  AccessSide side = AccessSide::kInput;
  std::vector<AccessEntry> entries;

  std::uint64_t TotalAccesses() const;
};

RankedAccessTable AccessFrequencyRank(const Trace& trace, AccessSide side);

struct ZipfFit {
  double slope = 0.0;  // magnitude of the log-log slope
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

// Least squares of log10(count) on log10(rank) over every entry. Throws
// kInsufficientData with fewer than two entries.
ZipfFit FitZipf(const RankedAccessTable& table);
// Fit over real-valued counts listed by rank (rank 1 first).
ZipfFit FitZipfCounts(std::span<const double> counts_by_rank);
// Same fit restricted to entries with access_count >= min_count.
ZipfFit FitZipfTrimmed(const RankedAccessTable& table,
                       std::uint64_t min_count = 2);

struct AccessSizeCurves {
  // Fraction of accesses (jobs) going to files of size <= s.
  EmpiricalCDF jobs_cdf;
  // Fraction of stored bytes (distinct files) in files of size <= s.
  EmpiricalCDF bytes_cdf;
  std::size_t unsized_files = 0;
};

AccessSizeCurves AccessVsSizeCurves(const Trace& trace, AccessSide side);

// Percentage of stored bytes held by the smallest top-ranked file set that
// absorbs at least `access_quantile` of all accesses.
double EightyXRule(const Trace& trace, AccessSide side,
                   double access_quantile = 0.80);
// Same rule over an explicit access table (entries without a size are
// ignored).
double EightyXRule(const RankedAccessTable& table, double access_quantile);

struct ReaccessStats {
  EmpiricalCDF interval_cdf;  // all re-access gaps, seconds
  EmpiricalCDF reread_cdf;    // input read after an earlier input read
  EmpiricalCDF reuse_cdf;     // input read after an earlier output write
  double reaccess_job_fraction = 0.0;
  std::size_t jobs_with_input = 0;
  std::size_t reaccess_jobs = 0;
};

ReaccessStats ReaccessIntervals(const Trace& trace);

}  // namespace mrtrace
