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
#include <map>
#include <random>

#include "mrtrace/data_access.h"
#include "mrtrace/error.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace mrtrace {
namespace {

JobRecord Reader(std::uint64_t id, std::int64_t t, std::uint64_t digest,
                 std::uint64_t bytes) {
  JobRecord r;
  r.job_id = id;
  r.submit_time = t;
  r.input_path_hash = digest;
  r.input_bytes = bytes;
  return r;
}

TEST(DataSizeCdf, DirectDefinition) {
  std::vector<JobRecord> recs;
  for (std::uint64_t b : {10, 20, 30}) recs.push_back(Reader(b, 0, b, b));
  recs.push_back(JobRecord{.job_id = 99, .submit_time = 1});
  const auto r = ComputeDataSizeCdf(Trace("t", 1, recs), SizeDimension::kInput);
  ASSERT_EQ(r.cdf.points.size(), 3u);
  EXPECT_EQ(r.cdf.points[0], (CdfPoint{10, 1.0 / 3}));
  EXPECT_EQ(r.cdf.points[2], (CdfPoint{30, 1.0}));
  EXPECT_EQ(r.excluded_count, 1u);
  EXPECT_THROW(ComputeDataSizeCdf(Trace("t", 1, recs), SizeDimension::kShuffle),
               Error);
}

TEST(AccessFrequencyRank, CountsAndOrder) {
  std::vector<JobRecord> recs;
  std::uint64_t id = 1;
  for (std::uint64_t d : {3, 3, 3, 3, 1, 1, 2}) recs.push_back(Reader(id++, 0, d, 5));
  const auto table = AccessFrequencyRank(Trace("t", 1, recs), AccessSide::kInput);
  ASSERT_EQ(table.entries.size(), 3u);
  EXPECT_EQ(table.entries[0].file_digest, 3u);
  EXPECT_EQ(table.entries[0].access_count, 4u);
  EXPECT_EQ(table.entries[1].file_digest, 1u);
  EXPECT_EQ(table.entries[1].access_count, 2u);
  EXPECT_EQ(table.entries[2].file_digest, 2u);
  EXPECT_EQ(table.TotalAccesses(), 7u);
}

TEST(AccessFrequencyRank, DistinctPathsRankByDigest) {
  std::vector<JobRecord> recs = {Reader(1, 0, 50, 1), Reader(2, 0, 7, 1),
                                 Reader(3, 0, 20, 1)};
  const auto table = AccessFrequencyRank(Trace("t", 1, recs), AccessSide::kInput);
  EXPECT_EQ(table.entries[0].file_digest, 7u);
  EXPECT_EQ(table.entries[1].file_digest, 20u);
  EXPECT_EQ(table.entries[2].file_digest, 50u);
}

TEST(AccessFrequencyRank, SampledZipfRecount) {
  // Draw accesses from a Zipf(0.83) sampler and recount independently.
  std::mt19937_64 rng(5);
  const std::size_t files = 10000;
  std::vector<double> w(files);
  for (std::size_t r = 0; r < files; ++r) w[r] = std::pow(r + 1.0, -0.83);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  std::vector<JobRecord> recs;
  std::map<std::uint64_t, std::uint64_t> recount;
  for (std::uint64_t i = 0; i < 50000; ++i) {
    const std::uint64_t d = pick(rng) + 1;
    recs.push_back(Reader(i + 1, 0, d, 1));
    ++recount[d];
  }
  const auto table = AccessFrequencyRank(Trace("t", 1, recs), AccessSide::kInput);
  ASSERT_EQ(table.entries.size(), recount.size());
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    EXPECT_EQ(table.entries[i].access_count, recount[table.entries[i].file_digest]);
    if (i > 0) {
      EXPECT_GE(table.entries[i - 1].access_count, table.entries[i].access_count);
    }
  }
  // Head of the rank/count plot is close to a line of slope ~0.83.
  const auto fit = FitZipfTrimmed(table, 20);
  EXPECT_NEAR(fit.slope, 0.83, 0.15);
  EXPECT_GT(fit.r_squared, 0.95);
}

TEST(FitZipf, ExactPowerLaw) {
  std::vector<double> counts;
  for (int r = 1; r <= 100; ++r) counts.push_back(1000.0 * std::pow(r, -0.5));
  const auto fit = FitZipfCounts(counts);
  EXPECT_NEAR(fit.slope, 0.5, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(fit.intercept, 3.0, 1e-9);
  EXPECT_EQ(fit.n_points, 100u);
}

TEST(FitZipf, EqualCountsGiveZeroSlope) {
  RankedAccessTable t;
  for (std::uint64_t d = 1; d <= 5; ++d) t.entries.push_back({d, 4, 1});
  const auto fit = FitZipf(t);
  EXPECT_EQ(fit.slope, 0.0);
  EXPECT_EQ(fit.r_squared, 1.0);
  RankedAccessTable one;
  one.entries.push_back({1, 4, 1});
  EXPECT_THROW(FitZipf(one), Error);
}

TEST(AccessVsSize, TwoFileHandComputation) {
  const std::uint64_t gb = 1'000'000'000;
  std::vector<JobRecord> recs;
  for (int i = 0; i < 9; ++i) recs.push_back(Reader(i + 1, i, 1, gb));
  recs.push_back(Reader(10, 10, 2, 9 * gb));
  const auto c = AccessVsSizeCurves(Trace("t", 1, recs), AccessSide::kInput);
  EXPECT_DOUBLE_EQ(c.jobs_cdf.At(gb), 0.9);
  EXPECT_DOUBLE_EQ(c.bytes_cdf.At(gb), 0.1);
  EXPECT_DOUBLE_EQ(c.jobs_cdf.At(9 * gb), 1.0);
}

TEST(AccessVsSize, SingleJob) {
  const auto c = AccessVsSizeCurves(Trace("t", 1, {Reader(1, 0, 4, 123)}),
                                    AccessSide::kInput);
  ASSERT_EQ(c.jobs_cdf.points.size(), 1u);
  EXPECT_EQ(c.jobs_cdf.points[0], (CdfPoint{123, 1.0}));
  EXPECT_EQ(c.bytes_cdf.points[0], (CdfPoint{123, 1.0}));
}

TEST(EightyX, HandExamples) {
  std::vector<JobRecord> recs;
  std::uint64_t id = 1;
  for (int i = 0; i < 8; ++i) recs.push_back(Reader(id++, 0, 1, 1));
  for (int i = 0; i < 2; ++i) recs.push_back(Reader(id++, 0, 2, 9));
  EXPECT_DOUBLE_EQ(EightyXRule(Trace("t", 1, recs), AccessSide::kInput), 10.0);

  std::vector<JobRecord> uniform;
  for (std::uint64_t f = 1; f <= 10; ++f) uniform.push_back(Reader(f, 0, f, 100));
  EXPECT_DOUBLE_EQ(EightyXRule(Trace("t", 1, uniform), AccessSide::kInput), 80.0);
}

TEST(EightyX, RandomTablesAgreeWithBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    RankedAccessTable table;
    std::vector<testing::OracleFile> files;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t d = 100 + rng() % 50 * 7 + i;
      const std::uint64_t c = 1 + rng() % 6;
      const std::uint64_t s = 1 + rng() % 1000;
      table.entries.push_back({d, c, s});
      files.push_back({d, c, s});
    }
    for (double q : {0.5, 0.8, 0.95}) {
      EXPECT_EQ(EightyXRule(table, q), testing::OracleEightyX(files, q));
    }
  }
}

TEST(Reaccess, HandEnumeration) {
  std::vector<JobRecord> recs = {Reader(1, 0, 5, 1), Reader(2, 3600, 5, 1),
                                 Reader(3, 7200, 5, 1)};
  const auto s = ReaccessIntervals(Trace("t", 1, recs));
  ASSERT_EQ(s.interval_cdf.points.size(), 1u);
  EXPECT_EQ(s.interval_cdf.points[0], (CdfPoint{3600, 1.0}));
  EXPECT_EQ(s.interval_cdf.sample_count, 2u);
  EXPECT_EQ(s.reaccess_jobs, 2u);
  EXPECT_DOUBLE_EQ(s.reaccess_job_fraction, 2.0 / 3.0);
}

TEST(Reaccess, DistinctFilesHaveNoIntervals) {
  std::vector<JobRecord> recs = {Reader(1, 0, 5, 1), Reader(2, 10, 6, 1)};
  const auto s = ReaccessIntervals(Trace("t", 1, recs));
  EXPECT_EQ(s.interval_cdf.sample_count, 0u);
  EXPECT_EQ(s.reaccess_job_fraction, 0.0);
}

TEST(Reaccess, OutputReusedAsInput) {
  JobRecord writer = Reader(1, 0, 5, 1);
  writer.output_path_hash = 77;
  JobRecord reader = Reader(2, 600, 77, 1);
  const auto s = ReaccessIntervals(Trace("t", 1, {writer, reader}));
  ASSERT_EQ(s.reuse_cdf.points.size(), 1u);
  EXPECT_EQ(s.reuse_cdf.points[0].value, 600);
  EXPECT_EQ(s.reread_cdf.sample_count, 0u);
  EXPECT_DOUBLE_EQ(s.reaccess_job_fraction, 0.5);
}

TEST(Reaccess, NoInputHashesIsNoData) {
  EXPECT_THROW(ReaccessIntervals(Trace("t", 1, {JobRecord{.job_id = 1}})), Error);
}

}  // namespace
}  // namespace mrtrace
