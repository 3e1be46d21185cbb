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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mrtrace/error.h"
#include "mrtrace/temporal.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace mrtrace {
namespace {

TimeSeries Hourly(std::vector<double> values) {
  TimeSeries s;
  s.values = std::move(values);
  return s;
}

TEST(BucketTimeSeries, CountsJobsPerBucket) {
  std::vector<JobRecord> recs;
  for (std::int64_t t : {0, 10, 3700}) {
    recs.push_back(JobRecord{.job_id = static_cast<std::uint64_t>(t + 1),
                             .submit_time = t});
  }
  const auto s =
      BucketTimeSeries(Trace("t", 1, recs), SeriesDimension::kJobsSubmitted);
  EXPECT_EQ(s.values, (std::vector<double>{2, 1}));
  EXPECT_EQ(s.start, 0);
}

TEST(BucketTimeSeries, DataSizeIsSumOfThreeByteCounts) {
  JobRecord r{.job_id = 1, .submit_time = 0};
  r.input_bytes = 1;
  r.shuffle_bytes = 2;
  r.output_bytes = 3;
  JobRecord partial{.job_id = 2, .submit_time = 5};
  partial.input_bytes = 100;
  const auto s = BucketTimeSeries(Trace("t", 1, {r, partial}),
                                  SeriesDimension::kDataSizeBytes);
  EXPECT_EQ(s.values, (std::vector<double>{6}));
  EXPECT_EQ(s.excluded_count, 1u);
}

TEST(BucketTimeSeries, RejectsBadWidth) {
  const Trace t("t", 1, {testing::CompleteJob(1, 0)});
  EXPECT_THROW(BucketTimeSeries(t, SeriesDimension::kJobsSubmitted, 0), Error);
}

TEST(BucketTimeSeries, DiurnalFixtureShowsSevenPeaks) {
  testing::FixtureOptions o;
  o.jobs = 20000;
  o.span_seconds = 7 * 86400;
  const Trace trace = testing::FixtureTrace(o);
  const auto s = BucketTimeSeries(trace, SeriesDimension::kJobsSubmitted);
  // Independent recount, then daily maxima sit near hour 6 of each day.
  std::vector<double> recount(s.values.size(), 0.0);
  for (const auto& r : trace.records()) {
    recount[static_cast<std::size_t>((r.submit_time - trace.span().start) / 3600)] += 1;
  }
  EXPECT_EQ(s.values, recount);
  int peaks = 0;
  for (std::size_t day = 0; day < 7; ++day) {
    std::size_t best = day * 24;
    for (std::size_t h = day * 24; h < day * 24 + 24 && h < s.values.size(); ++h) {
      if (s.values[h] > s.values[best]) best = h;
    }
    const long hour = static_cast<long>(best % 24);
    if (hour >= 3 && hour <= 9) ++peaks;
  }
  EXPECT_EQ(peaks, 7);
}

JobRecord Busy(std::uint64_t id, std::int64_t submit, double duration,
               double task_seconds) {
  JobRecord r{.job_id = id, .submit_time = submit};
  r.duration = duration;
  r.map_task_seconds = task_seconds;
  r.reduce_task_seconds = 0.0;
  return r;
}

TEST(OccupancySeries, UniformSpread) {
  const auto one =
      OccupancySeries(Trace("t", 1, {Busy(1, 0, 3600, 7200)}), 3600);
  EXPECT_EQ(one.values, (std::vector<double>{2.0}));

  // 3600 task-seconds over [1800, 5400): half in each bucket.
  const auto split = OccupancySeries(
      Trace("t", 1, {Busy(1, 0, 0, 0), Busy(2, 1800, 3600, 3600)}), 3600);
  ASSERT_EQ(split.values.size(), 2u);
  EXPECT_DOUBLE_EQ(split.values[0], 0.5);
  EXPECT_DOUBLE_EQ(split.values[1], 0.5);

  const auto instant =
      OccupancySeries(Trace("t", 1, {Busy(1, 100, 0, 720)}), 3600);
  EXPECT_DOUBLE_EQ(instant.values[0], 0.2);
}

TEST(SuspectedGaps, FindsLongZeroRuns) {
  std::vector<double> v(60, 1.0);
  for (int i = 10; i < 40; ++i) v[i] = 0;
  v[50] = 0;
  const auto runs = SuspectedGaps(Hourly(v));
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].first, 10u);
  EXPECT_EQ(runs[0].last, 39u);
}

TEST(Burstiness, ConstantSeriesIsVertical) {
  const auto c = ComputeBurstinessCurve(Hourly({5, 5, 5, 5}));
  for (const auto& p : c.points) EXPECT_EQ(p.ratio, 1.0);
  EXPECT_EQ(c.points.size(), 100u);
}

TEST(Burstiness, HandPercentiles) {
  const auto s = Hourly({1, 1, 1, 1, 10});
  EXPECT_EQ(PeakToMedian(s, 100), 10.0);
  EXPECT_EQ(PeakToMedian(s, 50), 1.0);
  // h = 4 * 0.9 = 3.6 -> 1 + 0.6 * 9
  EXPECT_NEAR(PeakToMedian(s, 90), 6.4, 1e-12);
}

TEST(Burstiness, SineExtremes) {
  const auto c = ComputeBurstinessCurve(
      SineReference(SineKind::kRangeEqualsMean, 7 * 24), {0, 50, 100});
  EXPECT_NEAR(c.median, 2.0, 1e-12);
  EXPECT_NEAR(c.points[0].ratio, 0.5, 1e-12);
  EXPECT_NEAR(c.points[1].ratio, 1.0, 1e-12);
  EXPECT_NEAR(c.points[2].ratio, 1.5, 1e-12);
}

TEST(Burstiness, Errors) {
  EXPECT_THROW(ComputeBurstinessCurve(Hourly({1})), Error);
  try {
    ComputeBurstinessCurve(Hourly({0, 0, 0, 5}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMedianZero);
  }
}

TEST(SineReference, MeanAndRange) {
  for (auto [kind, offset] :
       {std::pair{SineKind::kRangeEqualsMean, 2.0},
        std::pair{SineKind::kRangeEqualsTenthOfMean, 20.0}}) {
    const auto s = SineReference(kind, 24);
    EXPECT_NEAR(s.Sum() / 24.0, offset, 1e-9);
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    EXPECT_NEAR(*hi - *lo, 2.0, 1e-12);
  }
  EXPECT_THROW(SineReference(SineKind::kRangeEqualsMean, 23), Error);
}

TEST(Correlations, LinearPairAndOracle) {
  const std::vector<double> x = {1, 4, 2, 8, 5};
  std::vector<double> twice;
  for (double v : x) twice.push_back(2 * v);
  const std::vector<double> z = {3, 1, 4, 1, 5};
  const auto m = CorrelateSeries(x, twice, z);
  EXPECT_EQ(m.r_jobs_data, 1.0);
  EXPECT_NEAR(m.r_jobs_compute, testing::OraclePearson(x, z), 1e-12);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<double> a(1000), b(1000), c(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
    c[i] = u(rng);
  }
  const auto r = CorrelateSeries(a, b, c);
  EXPECT_LT(std::abs(r.r_jobs_data), 0.1);
  EXPECT_NEAR(r.r_data_compute, testing::OraclePearson(b, c), 1e-12);
}

TEST(Correlations, ConstantSeriesIsZeroVariance) {
  try {
    CorrelateSeries({1, 1, 1}, {1, 2, 3}, {3, 2, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVariance);
  }
}

TEST(Periodogram, PureDailySine) {
  std::vector<double> v(7 * 24);
  for (std::size_t t = 0; t < v.size(); ++t) {
    v[t] = std::sin(2 * std::numbers::pi * static_cast<double>(t) / 24.0);
  }
  const auto p = ComputePeriodogram(Hourly(v));
  ASSERT_FALSE(p.top.empty());
  EXPECT_NEAR(p.top[0].period_seconds, 86400.0, 1e-9);
  EXPECT_NEAR(p.top[0].power_fraction, 1.0, 1e-9);
  EXPECT_TRUE(p.diurnal);
}

TEST(Periodogram, ConstantSeriesHasNoPower) {
  const auto p = ComputePeriodogram(Hourly(std::vector<double>(100, 3.0)));
  EXPECT_TRUE(p.top.empty());
  EXPECT_FALSE(p.diurnal);
}

TEST(Periodogram, TwoTonesMatchDirectDft) {
  std::vector<double> v(7 * 24);
  for (std::size_t t = 0; t < v.size(); ++t) {
    const double x = static_cast<double>(t);
    v[t] = 10 + std::sin(2 * std::numbers::pi * x / 24.0) +
           std::sin(2 * std::numbers::pi * x / 7.0 + 0.3);
  }
  const auto p = ComputePeriodogram(Hourly(v), 5);
  const auto oracle = testing::OracleOneSidedPower(v);
  double total = 0;
  for (std::size_t k = 1; k < oracle.size(); ++k) total += oracle[k];
  ASSERT_GE(p.top.size(), 2u);
  std::vector<double> periods = {p.top[0].period_seconds / 3600,
                                 p.top[1].period_seconds / 3600};
  std::sort(periods.begin(), periods.end());
  EXPECT_NEAR(periods[0], 7.0, 1e-9);
  EXPECT_NEAR(periods[1], 24.0, 1e-9);
  for (const auto& c : p.top) {
    EXPECT_NEAR(c.power_fraction, oracle[c.frequency_index] / total, 1e-9);
  }
  EXPECT_TRUE(p.diurnal);
}

TEST(Periodogram, TooShort) {
  EXPECT_THROW(ComputePeriodogram(Hourly(std::vector<double>(47, 1.0))), Error);
}

}  // namespace
}  // namespace mrtrace
