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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrtrace/trace.h"

namespace mrtrace {

inline constexpr std::string_view kUnnamedToken = "<unnamed>";

// Lowercased leading run of ASCII letters after skipping non-letters.
// Names without letters map to kUnnamedToken, which maps to itself.
std::string FirstWord(std::string_view name);

enum class NameWeighting { kJobs, kIoBytes, kTaskTime };
const char* WeightingName(NameWeighting weighting);

struct NameShare {
  std::string first_word;
  double weight_fraction = 0.0;
};

struct NameBreakdown {
  NameWeighting weighting = NameWeighting::kJobs;
  std::vector<NameShare> entries;  // non-increasing, ties by word
  double other_fraction = 0.0;
  std::size_t excluded_count = 0;  // jobs lacking the weighting's fields
};

// Jobs without a name count under kUnnamedToken. Words below `cutoff` of the
// total fold into other_fraction. Throws kNoData when no job has a name.
NameBreakdown ComputeNameBreakdown(const Trace& trace, NameWeighting weighting,
                                   double cutoff = 0.01);

inline constexpr std::size_t kFeatureDims = 6;
const std::array<const char*, kFeatureDims>& FeatureNames();

// Raw values in the order input, shuffle, output, duration, map task time,
// reduce task time. Empty when any is missing.
bool RawFeatures(const JobRecord& record,
                 std::array<double, kFeatureDims>& out);

struct FeatureTransform {
  // x' = (log10(1 + x) - mean) / scale
  std::array<double, kFeatureDims> mean{};
  std::array<double, kFeatureDims> scale{};

  std::array<double, kFeatureDims> Apply(
      const std::array<double, kFeatureDims>& raw) const;
  std::array<double, kFeatureDims> Invert(
      const std::array<double, kFeatureDims>& transformed) const;
};

struct JobFeatureMatrix {
  std::vector<double> rows;            // row-major, kFeatureDims per row
  std::vector<std::size_t> record_index;  // row -> index into trace records
  FeatureTransform transform;
  std::size_t excluded_count = 0;

  std::size_t row_count() const { return record_index.size(); }
  std::span<const double> row(std::size_t i) const {
    return {rows.data() + i * kFeatureDims, kFeatureDims};
  }
};

JobFeatureMatrix JobFeatureVectors(const Trace& trace);
// Builds a matrix from already transformed rows (transform left identity).
JobFeatureMatrix MatrixFromRows(std::vector<double> rows);

struct ClusterModel {
  std::size_t k = 0;
  std::vector<double> centroids;  // row-major, k x kFeatureDims
  std::vector<std::uint32_t> assignments;
  double residual_variance = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kMaxLloydIterations = 100;

// k-means++ seeding then Lloyd iterations to a fixpoint (at most 100).
ClusterModel KMeans(const JobFeatureMatrix& matrix, std::size_t k,
                    std::uint64_t seed);

struct ElbowOptions {
  std::size_t k_max = 10;
  double improvement_threshold = 0.10;
  std::size_t restarts = 5;
  std::uint64_t seed = 42;
};

struct ElbowResult {
  std::size_t k = 1;
  // Best-of-restarts residual variance for k = 1..evaluated.
  std::vector<double> residual_by_k;
  ClusterModel best_model;  // model for the selected k
};

// Smallest k whose successor improves the residual variance by less than
// the threshold (relative). Returns k_max when never triggered.
ElbowResult SelectK(const JobFeatureMatrix& matrix,
                    const ElbowOptions& options);

struct ClusterRow {
  std::size_t job_count = 0;
  std::array<double, kFeatureDims> medians{};  // original units
  std::array<double, kFeatureDims> centroid{};  // transformed space
  std::string label;            // left for the analyst
  std::string suggested_label;  // from the dominant standardized dimensions
};

struct ClusterSummary {
  std::vector<ClusterRow> clusters;
  std::size_t excluded_count = 0;
};

ClusterSummary SummarizeClusters(const Trace& trace,
                                 const JobFeatureMatrix& matrix,
                                 const ClusterModel& model);

std::string FormatBytes(double bytes);
std::string FormatSeconds(double seconds);
// One-line description, e.g. "12 jobs, 21 KB input, 0 B shuffle, ...".
std::string DescribeCluster(const ClusterRow& row);
// Aligned text table with one row per cluster.
std::string RenderClusterTable(const ClusterSummary& summary);

}  // namespace mrtrace
