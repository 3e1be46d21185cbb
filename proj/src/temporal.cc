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

#include "mrtrace/temporal.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mrtrace/error.h"
#include "mrtrace/kernels.h"
#include "mrtrace/stats.h"

namespace mrtrace {

const char* SeriesDimensionName(SeriesDimension dimension) {
  switch (dimension) {
    case SeriesDimension::kJobsSubmitted: return "jobs_submitted";
    case SeriesDimension::kDataSizeBytes: return "data_size_bytes";
    case SeriesDimension::kComputeTimeTaskSeconds:
      return "compute_time_task_seconds";
    case SeriesDimension::kOccupancySlots: return "occupancy_slots";
  }
  return "?";
}

double TimeSeries::Sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

void CheckWidth(std::int64_t bucket_width) {
  if (bucket_width <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "InvalidBucketWidth: bucket width must be positive");
  }
}

std::size_t BucketCount(std::int64_t length, std::int64_t width) {
  return static_cast<std::size_t>((length + width - 1) / width);
}

std::optional<double> DimensionValue(const JobRecord& r,
                                     SeriesDimension dimension) {
  switch (dimension) {
    case SeriesDimension::kJobsSubmitted:
      return 1.0;
    case SeriesDimension::kDataSizeBytes:
      if (!r.input_bytes || !r.shuffle_bytes || !r.output_bytes) {
        return std::nullopt;
      }
      return static_cast<double>(*r.input_bytes) +
             static_cast<double>(*r.shuffle_bytes) +
             static_cast<double>(*r.output_bytes);
    case SeriesDimension::kComputeTimeTaskSeconds:
      if (!r.map_task_seconds || !r.reduce_task_seconds) return std::nullopt;
      return *r.map_task_seconds + *r.reduce_task_seconds;
    case SeriesDimension::kOccupancySlots:
      break;
  }
  return std::nullopt;
}

}  // namespace

TimeSeries BucketTimeSeries(const Trace& trace, SeriesDimension dimension,
                            std::int64_t bucket_width) {
  CheckWidth(bucket_width);
  if (dimension == SeriesDimension::kOccupancySlots) {
    return OccupancySeries(trace, bucket_width);
  }
  if (trace.empty()) throw Error(ErrorCode::kNoData, "empty trace");

  TimeSeries series;
  series.bucket_width = bucket_width;
  series.start = trace.span().start;
  series.dimension = dimension;
  series.values.assign(BucketCount(trace.span().length(), bucket_width), 0.0);
  std::size_t contributing = 0;
  for (const auto& r : trace.records()) {
    const auto v = DimensionValue(r, dimension);
    if (!v) {
      ++series.excluded_count;
      continue;
    }
    const auto b =
        static_cast<std::size_t>((r.submit_time - series.start) / bucket_width);
    series.values[b] += *v;
    ++contributing;
  }
  if (contributing == 0) {
    throw Error(ErrorCode::kNoData, std::string("no job has ") +
                                        SeriesDimensionName(dimension));
  }
  return series;
}

TimeSeries OccupancySeries(const Trace& trace, std::int64_t bucket_width) {
  CheckWidth(bucket_width);
  if (trace.empty()) throw Error(ErrorCode::kNoData, "empty trace");

  TimeSeries series;
  series.bucket_width = bucket_width;
  series.start = trace.span().start;
  series.dimension = SeriesDimension::kOccupancySlots;

  double max_end = static_cast<double>(trace.span().end);
  for (const auto& r : trace.records()) {
    if (r.duration && r.map_task_seconds && r.reduce_task_seconds) {
      max_end = std::max(max_end, static_cast<double>(r.submit_time) +
                                      *r.duration);
    }
  }
  const double width = static_cast<double>(bucket_width);
  const auto n = static_cast<std::size_t>(
      std::ceil((max_end - static_cast<double>(series.start)) / width));
  std::vector<double> task_seconds(std::max<std::size_t>(n, 1), 0.0);

  std::size_t contributing = 0;
  for (const auto& r : trace.records()) {
    if (!r.duration || !r.map_task_seconds || !r.reduce_task_seconds) {
      ++series.excluded_count;
      continue;
    }
    ++contributing;
    const double total = *r.map_task_seconds + *r.reduce_task_seconds;
    const double begin = static_cast<double>(r.submit_time - series.start);
    const double length = *r.duration;
    auto first = static_cast<std::size_t>(begin / width);
    if (length <= 0.0) {
      task_seconds[first] += total;
      continue;
    }
    const double end = begin + length;
    const double rate = total / length;
    for (std::size_t b = first; b < task_seconds.size(); ++b) {
      const double lo = std::max(begin, static_cast<double>(b) * width);
      const double hi = std::min(end, static_cast<double>(b + 1) * width);
      if (hi <= lo) {
        if (static_cast<double>(b) * width >= end) break;
        continue;
      }
      task_seconds[b] += rate * (hi - lo);
    }
  }
  if (contributing == 0) {
    throw Error(ErrorCode::kNoData,
                "no job has duration and both task-time fields");
  }
  series.values.resize(task_seconds.size());
  for (std::size_t b = 0; b < task_seconds.size(); ++b) {
    series.values[b] = task_seconds[b] / width;
  }
  return series;
}

std::vector<ZeroRun> SuspectedGaps(const TimeSeries& series,
                                   std::size_t min_run) {
  std::vector<ZeroRun> runs;
  std::size_t i = 0;
  const auto& v = series.values;
  while (i < v.size()) {
    if (v[i] != 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < v.size() && v[j] == 0.0) ++j;
    if (j - i >= min_run) runs.push_back({i, j - 1});
    i = j;
  }
  return runs;
}

std::vector<int> DefaultPercentileGrid() {
  std::vector<int> grid(100);
  std::iota(grid.begin(), grid.end(), 1);
  return grid;
}

BurstinessCurve ComputeBurstinessCurve(const TimeSeries& series,
                                       const std::vector<int>& grid) {
  if (series.values.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "burstiness needs at least two buckets");
  }
  std::vector<double> sorted = series.values;
  std::sort(sorted.begin(), sorted.end());
  BurstinessCurve curve;
  curve.median = PercentileSorted(sorted, 50.0);
  if (!(curve.median > 0.0)) {
    throw Error(ErrorCode::kMedianZero,
                "median bucket is zero; use wider buckets");
  }
  curve.points.reserve(grid.size());
  for (int p : grid) {
    if (p < 0 || p > 100) {
      throw Error(ErrorCode::kInvalidArgument, "percentile outside [0, 100]");
    }
    curve.points.push_back(
        {PercentileSorted(sorted, static_cast<double>(p)) / curve.median, p});
  }
  return curve;
}

double PeakToMedian(const TimeSeries& series, int percentile) {
  return ComputeBurstinessCurve(series, {percentile}).points.front().ratio;
}

TimeSeries SineReference(SineKind kind, std::size_t buckets) {
  if (buckets < 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "sine reference needs at least 24 buckets");
  }
  const double offset = kind == SineKind::kRangeEqualsMean ? 2.0 : 20.0;
  TimeSeries series;
  series.bucket_width = kHour;
  series.start = 0;
  series.dimension = SeriesDimension::kComputeTimeTaskSeconds;
  series.values.resize(buckets);
  for (std::size_t t = 0; t < buckets; ++t) {
    // Phase reduced modulo the period keeps every day bit-identical.
    const double phase = static_cast<double>(t % 24) / 24.0;
    series.values[t] = std::sin(2.0 * std::numbers::pi * phase) + offset;
  }
  return series;
}

CorrelationMatrix CorrelateSeries(const std::vector<double>& jobs,
                                  const std::vector<double>& data,
                                  const std::vector<double>& compute) {
  if (jobs.size() != data.size() || jobs.size() != compute.size()) {
    throw Error(ErrorCode::kInvalidArgument, "series are not aligned");
  }
  if (!HasVariance(jobs) || !HasVariance(data) || !HasVariance(compute)) {
    throw Error(ErrorCode::kZeroVariance, "a series is constant");
  }
  CorrelationMatrix m;
  m.n_buckets = jobs.size();
  m.r_jobs_data = Pearson(jobs, data);
  m.r_jobs_compute = Pearson(jobs, compute);
  m.r_data_compute = Pearson(data, compute);
  return m;
}

CorrelationMatrix DimensionCorrelations(const Trace& trace,
                                        std::int64_t bucket_width) {
  const auto jobs =
      BucketTimeSeries(trace, SeriesDimension::kJobsSubmitted, bucket_width);
  const auto data =
      BucketTimeSeries(trace, SeriesDimension::kDataSizeBytes, bucket_width);
  const auto compute = BucketTimeSeries(
      trace, SeriesDimension::kComputeTimeTaskSeconds, bucket_width);
  return CorrelateSeries(jobs.values, data.values, compute.values);
}

Periodogram ComputePeriodogram(const TimeSeries& series, std::size_t top_k) {
  const std::size_t n = series.values.size();
  if (n < 48) {
    throw Error(ErrorCode::kTooShort, "periodogram needs at least 48 buckets");
  }
  const double mean =
      std::accumulate(series.values.begin(), series.values.end(), 0.0) /
      static_cast<double>(n);
  std::vector<double> centered(n);
  double spread = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    centered[t] = series.values[t] - mean;
    spread = std::max(spread, std::abs(centered[t]));
  }
  Periodogram out;
  if (spread <= 1e-9 * std::max(1.0, std::abs(mean))) return out;

  const std::vector<double> power = kernels::DftPower(centered);
  // One-sided spectrum: bins strictly between DC and Nyquist stand for two
  // conjugate bins.
  std::vector<double> weighted(power.size(), 0.0);
  for (std::size_t k = 1; k < power.size(); ++k) {
    const bool nyquist = (n % 2 == 0) && k == n / 2;
    weighted[k] = nyquist ? power[k] : 2.0 * power[k];
    out.total_power += weighted[k];
  }
  if (!(out.total_power > 0.0)) return out;

  const double width = static_cast<double>(series.bucket_width);
  auto component = [&](std::size_t k) {
    return SpectralComponent{
        static_cast<double>(n) * width / static_cast<double>(k),
        weighted[k] / out.total_power, k};
  };
  for (std::size_t k = 1; k < weighted.size(); ++k) {
    const auto c = component(k);
    if (std::abs(c.period_seconds - 86400.0) <= width &&
        c.power_fraction >= kDiurnalPowerShare) {
      out.diurnal = true;
    }
  }
  std::vector<std::size_t> order(weighted.size() - 1);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return weighted[a] > weighted[b];
                   });
  for (std::size_t i = 0; i < std::min(top_k, order.size()); ++i) {
    out.top.push_back(component(order[i]));
  }
  return out;
}

}  // namespace mrtrace
