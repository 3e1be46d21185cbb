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

#include "mrtrace/trace.h"

namespace mrtrace {

enum class SeriesDimension {
  kJobsSubmitted,
  kDataSizeBytes,
  kComputeTimeTaskSeconds,
  kOccupancySlots,
};

const char* SeriesDimensionName(SeriesDimension dimension);

inline constexpr std::int64_t kHour = 3600;

struct TimeSeries {
  std::int64_t bucket_width = kHour;
  std::int64_t start = 0;
  std::vector<double> values;
  SeriesDimension dimension = SeriesDimension::kJobsSubmitted;
  // Jobs left out because a component of the dimension was missing.
  std::size_t excluded_count = 0;

  double Sum() const;
};

// Bucketed per-submit-time sums over the trace span. A job's full byte or
// task-second total lands in its submit bucket.
TimeSeries BucketTimeSeries(const Trace& trace, SeriesDimension dimension,
                            std::int64_t bucket_width = kHour);

// Average active slots per bucket, approximated by spreading each job's
// map + reduce task-seconds uniformly over [submit, submit + duration].
TimeSeries OccupancySeries(const Trace& trace,
                           std::int64_t bucket_width = kHour);

// Runs of at least `min_run` consecutive zero buckets, as [first, last]
// bucket indices. Long runs usually mean the logger was offline.
struct ZeroRun {
  std::size_t first = 0;
  std::size_t last = 0;
};
std::vector<ZeroRun> SuspectedGaps(const TimeSeries& series,
                                   std::size_t min_run = 24);

struct BurstinessPoint {
  double ratio = 0.0;
  int percentile = 0;
};

struct BurstinessCurve {
  std::vector<BurstinessPoint> points;
  double median = 0.0;
};

std::vector<int> DefaultPercentileGrid();  // 1..100

// n-th percentile to median ratio for every n in the grid (0..100 allowed).
// Throws kInsufficientData for fewer than 2 buckets and kMedianZero when the
// median is not positive.
BurstinessCurve ComputeBurstinessCurve(const TimeSeries& series,
                                       const std::vector<int>& grid =
                                           DefaultPercentileGrid());

double PeakToMedian(const TimeSeries& series, int percentile = 100);

enum class SineKind { kRangeEqualsMean, kRangeEqualsTenthOfMean };

// Hourly sin(2 pi t / 24) + 2 or + 20. Requires buckets >= 24.
TimeSeries SineReference(SineKind kind, std::size_t buckets);

struct CorrelationMatrix {
  double r_jobs_data = 0.0;
  double r_jobs_compute = 0.0;
  double r_data_compute = 0.0;
  std::size_t n_buckets = 0;
};

CorrelationMatrix DimensionCorrelations(const Trace& trace,
                                        std::int64_t bucket_width = kHour);
// Same computation on pre-bucketed aligned series. Throws kZeroVariance if
// any series is constant.
CorrelationMatrix CorrelateSeries(const std::vector<double>& jobs,
                                  const std::vector<double>& data,
                                  const std::vector<double>& compute);

struct SpectralComponent {
  double period_seconds = 0.0;
  double power_fraction = 0.0;
  std::size_t frequency_index = 0;
};

struct Periodogram {
  std::vector<SpectralComponent> top;
  bool diurnal = false;
  double total_power = 0.0;
};

inline constexpr double kDiurnalPowerShare = 0.05;

// DFT of the mean-removed series. Throws kTooShort below 48 buckets.
Periodogram ComputePeriodogram(const TimeSeries& series, std::size_t top_k = 5);

}  // namespace mrtrace
