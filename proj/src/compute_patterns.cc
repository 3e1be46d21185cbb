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

#include "mrtrace/compute_patterns.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "mrtrace/error.h"
#include "mrtrace/kernels.h"
#include "mrtrace/stats.h"

namespace mrtrace {

std::string FirstWord(std::string_view name) {
  if (name == kUnnamedToken) return std::string(kUnnamedToken);
  auto is_letter = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 &&
           static_cast<unsigned char>(c) < 0x80;
  };
  std::size_t i = 0;
  while (i < name.size() && !is_letter(name[i])) ++i;
  std::string word;
  while (i < name.size() && is_letter(name[i])) {
    word.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(name[i]))));
    ++i;
  }
  if (word.empty()) return std::string(kUnnamedToken);
  return word;
}

const char* WeightingName(NameWeighting weighting) {
  switch (weighting) {
    case NameWeighting::kJobs: return "jobs";
    case NameWeighting::kIoBytes: return "io_bytes";
    case NameWeighting::kTaskTime: return "task_time";
  }
  return "?";
}

NameBreakdown ComputeNameBreakdown(const Trace& trace, NameWeighting weighting,
                                   double cutoff) {
  const bool any_name =
      std::any_of(trace.records().begin(), trace.records().end(),
                  [](const JobRecord& r) { return r.name.has_value(); });
  if (!any_name) throw Error(ErrorCode::kNoData, "trace has no job names");

  NameBreakdown out;
  out.weighting = weighting;
  std::map<std::string, double> weight;
  double total = 0.0;
  for (const auto& r : trace.records()) {
    double w = 0.0;
    switch (weighting) {
      case NameWeighting::kJobs:
        w = 1.0;
        break;
      case NameWeighting::kIoBytes:
        if (!r.input_bytes || !r.shuffle_bytes || !r.output_bytes) {
          ++out.excluded_count;
          continue;
        }
        w = static_cast<double>(*r.input_bytes) +
            static_cast<double>(*r.shuffle_bytes) +
            static_cast<double>(*r.output_bytes);
        break;
      case NameWeighting::kTaskTime:
        if (!r.map_task_seconds || !r.reduce_task_seconds) {
          ++out.excluded_count;
          continue;
        }
        w = *r.map_task_seconds + *r.reduce_task_seconds;
        break;
    }
    const std::string word =
        r.name ? FirstWord(*r.name) : std::string(kUnnamedToken);
    weight[word] += w;
    total += w;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kNoData,
                std::string("no ") + WeightingName(weighting) + " weight");
  }

  double folded = 0.0;
  for (const auto& [word, w] : weight) {
    const double f = w / total;
    if (f >= cutoff) {
      out.entries.push_back({word, f});
    } else {
      folded += w;
    }
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const NameShare& a, const NameShare& b) {
                     return a.weight_fraction > b.weight_fraction;
                   });
  out.other_fraction = folded / total;
  return out;
}

const std::array<const char*, kFeatureDims>& FeatureNames() {
  static const std::array<const char*, kFeatureDims> kNames = {
      "input_bytes",       "shuffle_bytes",       "output_bytes",
      "duration",          "map_task_seconds",    "reduce_task_seconds"};
  return kNames;
}

bool RawFeatures(const JobRecord& r, std::array<double, kFeatureDims>& out) {
  if (!r.input_bytes || !r.shuffle_bytes || !r.output_bytes || !r.duration ||
      !r.map_task_seconds || !r.reduce_task_seconds) {
    return false;
  }
  out = {static_cast<double>(*r.input_bytes),
         static_cast<double>(*r.shuffle_bytes),
         static_cast<double>(*r.output_bytes),
         *r.duration,
         *r.map_task_seconds,
         *r.reduce_task_seconds};
  return true;
}

std::array<double, kFeatureDims> FeatureTransform::Apply(
    const std::array<double, kFeatureDims>& raw) const {
  std::array<double, kFeatureDims> out{};
  for (std::size_t j = 0; j < kFeatureDims; ++j) {
    out[j] = (std::log10(1.0 + raw[j]) - mean[j]) / scale[j];
  }
  return out;
}

std::array<double, kFeatureDims> FeatureTransform::Invert(
    const std::array<double, kFeatureDims>& transformed) const {
  std::array<double, kFeatureDims> out{};
  for (std::size_t j = 0; j < kFeatureDims; ++j) {
    out[j] = std::pow(10.0, transformed[j] * scale[j] + mean[j]) - 1.0;
  }
  return out;
}

JobFeatureMatrix JobFeatureVectors(const Trace& trace) {
  JobFeatureMatrix m;
  std::array<double, kFeatureDims> raw{};
  const auto& records = trace.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!RawFeatures(records[i], raw)) {
      ++m.excluded_count;
      continue;
    }
    m.record_index.push_back(i);
    for (double v : raw) m.rows.push_back(std::log10(1.0 + v));
  }
  const std::size_t n = m.row_count();
  if (n == 0) {
    throw Error(ErrorCode::kNoData, "no job has all six dimensions");
  }
  for (std::size_t j = 0; j < kFeatureDims; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += m.rows[i * kFeatureDims + j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = m.rows[i * kFeatureDims + j] - mean;
      var += d * d;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    // A constant dimension stays centered with unit scale.
    const double scale = sd > 0.0 ? sd : 1.0;
    m.transform.mean[j] = mean;
    m.transform.scale[j] = scale;
    for (std::size_t i = 0; i < n; ++i) {
      double& x = m.rows[i * kFeatureDims + j];
      x = (x - mean) / scale;
    }
  }
  return m;
}

JobFeatureMatrix MatrixFromRows(std::vector<double> rows) {
  if (rows.size() % kFeatureDims != 0) {
    throw Error(ErrorCode::kInvalidArgument, "row data not a multiple of 6");
  }
  JobFeatureMatrix m;
  m.rows = std::move(rows);
  m.record_index.resize(m.rows.size() / kFeatureDims);
  std::iota(m.record_index.begin(), m.record_index.end(), 0);
  m.transform.scale.fill(1.0);
  return m;
}

namespace {

// 53 random bits mapped onto [0, 1).
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1,
                  static_cast<std::size_t>(Uniform01(rng) *
                                           static_cast<double>(n)));
}

double Distance2(const double* a, const double* b) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < kFeatureDims; ++j) {
    const double diff = a[j] - b[j];
    d2 += diff * diff;
  }
  return d2;
}

std::vector<double> SeedCentroids(const JobFeatureMatrix& m, std::size_t k,
                                  std::mt19937_64& rng) {
  const std::size_t n = m.row_count();
  const double* rows = m.rows.data();
  std::vector<double> centroids;
  centroids.reserve(k * kFeatureDims);
  auto take = [&](std::size_t i) {
    centroids.insert(centroids.end(), rows + i * kFeatureDims,
                     rows + (i + 1) * kFeatureDims);
  };
  take(UniformIndex(rng, n));
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) {
    nearest[i] = Distance2(rows + i * kFeatureDims, centroids.data());
  }
  while (centroids.size() < k * kFeatureDims) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = Uniform01(rng) * total;
      double running = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        running += nearest[i];
        if (running > target && nearest[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = UniformIndex(rng, n);
    }
    take(pick);
    const double* c = centroids.data() + centroids.size() - kFeatureDims;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], Distance2(rows + i * kFeatureDims, c));
    }
  }
  return centroids;
}

}  // namespace

ClusterModel KMeans(const JobFeatureMatrix& matrix, std::size_t k,
                    std::uint64_t seed) {
  const std::size_t n = matrix.row_count();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (k > n) {
    throw Error(ErrorCode::kKTooLarge, "k=" + std::to_string(k) + " exceeds " +
                                           std::to_string(n) + " rows");
  }
  std::mt19937_64 rng(seed);
  ClusterModel model;
  model.k = k;
  model.seed = seed;
  model.centroids = SeedCentroids(matrix, k, rng);

  std::vector<std::uint32_t> assignment(n, 0);
  std::vector<std::uint32_t> previous;
  std::vector<double> d2(n, 0.0);
  std::vector<double> sums(k * kFeatureDims);
  std::vector<std::size_t> counts(k);
  bool converged = false;

  for (std::size_t iter = 0; iter < kMaxLloydIterations; ++iter) {
    kernels::AssignNearest(matrix.rows, model.centroids, kFeatureDims,
                           assignment, d2);
    model.iterations = iter + 1;
    if (assignment == previous) {
      converged = true;
      break;
    }
    // Empty clusters take the point farthest from its current centroid.
    std::fill(counts.begin(), counts.end(), 0);
    for (auto a : assignment) ++counts[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[assignment[i]] < 2) continue;
        if (far == n || d2[i] > d2[far]) far = i;
      }
      --counts[assignment[far]];
      assignment[far] = static_cast<std::uint32_t>(c);
      counts[c] = 1;
      d2[far] = 0.0;
    }
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = matrix.rows.data() + i * kFeatureDims;
      double* sum = sums.data() + assignment[i] * kFeatureDims;
      for (std::size_t j = 0; j < kFeatureDims; ++j) sum[j] += row[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t j = 0; j < kFeatureDims; ++j) {
        model.centroids[c * kFeatureDims + j] =
            sums[c * kFeatureDims + j] / static_cast<double>(counts[c]);
      }
    }
    previous = assignment;
  }
  if (!converged) {
    // Iteration cap: re-assign against the final centroids so every point
    // still sits with its nearest centroid.
    kernels::AssignNearest(matrix.rows, model.centroids, kFeatureDims,
                           assignment, d2);
  }
  double total = 0.0;
  for (double d : d2) total += d;
  model.residual_variance = total / static_cast<double>(n);
  model.assignments = std::move(assignment);
  return model;
}

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

ElbowResult SelectK(const JobFeatureMatrix& matrix,
                    const ElbowOptions& options) {
  if (options.k_max == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be positive");
  }
  const std::size_t restarts = std::max<std::size_t>(options.restarts, 1);
  const std::size_t limit = std::min(options.k_max, matrix.row_count());
  if (limit == 0) throw Error(ErrorCode::kNoData, "empty feature matrix");

  std::vector<ClusterModel> best;
  auto evaluate = [&](std::size_t k) {
    ClusterModel chosen;
    bool have = false;
    for (std::size_t r = 0; r < restarts; ++r) {
      const std::uint64_t s = SplitMix64(options.seed ^ SplitMix64(k * 64 + r));
      ClusterModel m = KMeans(matrix, k, s);
      if (!have || m.residual_variance < chosen.residual_variance) {
        chosen = std::move(m);
        have = true;
      }
    }
    best.push_back(std::move(chosen));
  };

  ElbowResult out;
  evaluate(1);
  std::size_t k = 1;
  while (true) {
    const double current = best[k - 1].residual_variance;
    if (current <= 0.0 || k >= limit) break;
    evaluate(k + 1);
    const double next = best[k].residual_variance;
    if ((current - next) / current < options.improvement_threshold) break;
    ++k;
  }
  out.k = k;
  for (const auto& m : best) out.residual_by_k.push_back(m.residual_variance);
  out.best_model = best[k - 1];
  return out;
}

namespace {

std::string SuggestLabel(const std::array<double, kFeatureDims>& z) {
  static const std::array<std::pair<const char*, const char*>, kFeatureDims>
      kWords = {{{"large input", "small input"},
                 {"large shuffle", "small shuffle"},
                 {"large output", "small output"},
                 {"long", "short"},
                 {"map-heavy", "map-light"},
                 {"reduce-heavy", "reduce-light"}}};
  if (std::all_of(z.begin(), z.end(), [](double v) { return v < -0.5; })) {
    return "small jobs";
  }
  std::array<std::size_t, kFeatureDims> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return std::abs(z[a]) > std::abs(z[b]);
  });
  auto word = [&](std::size_t j) {
    return z[j] >= 0 ? kWords[j].first : kWords[j].second;
  };
  std::string label = word(order[0]);
  if (std::abs(z[order[1]]) >= 0.5 * std::abs(z[order[0]])) {
    label += ", ";
    label += word(order[1]);
  }
  return label;
}

}  // namespace

ClusterSummary SummarizeClusters(const Trace& trace,
                                 const JobFeatureMatrix& matrix,
                                 const ClusterModel& model) {
  if (model.assignments.size() != matrix.row_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "model does not cover the feature matrix");
  }
  ClusterSummary summary;
  summary.excluded_count = matrix.excluded_count;
  summary.clusters.resize(model.k);
  std::vector<std::array<std::vector<double>, kFeatureDims>> values(model.k);
  std::array<double, kFeatureDims> raw{};
  for (std::size_t i = 0; i < matrix.row_count(); ++i) {
    const auto c = model.assignments[i];
    ++summary.clusters[c].job_count;
    const auto& record = trace.records().at(matrix.record_index[i]);
    if (!RawFeatures(record, raw)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "matrix row does not match a complete record");
    }
    for (std::size_t j = 0; j < kFeatureDims; ++j) {
      values[c][j].push_back(raw[j]);
    }
  }
  for (std::size_t c = 0; c < model.k; ++c) {
    auto& row = summary.clusters[c];
    for (std::size_t j = 0; j < kFeatureDims; ++j) {
      row.centroid[j] = model.centroids[c * kFeatureDims + j];
      if (!values[c][j].empty()) row.medians[j] = Median(values[c][j]);
    }
    row.suggested_label = SuggestLabel(row.centroid);
  }
  return summary;
}

std::string FormatBytes(double bytes) {
  static const char* kUnits[] = {"B", "KB", "MB", "GB", "TB", "PB", "EB"};
  std::size_t unit = 0;
  while (bytes >= 1024.0 && unit + 1 < std::size(kUnits)) {
    bytes /= 1024.0;
    ++unit;
  }
  char buf[32];
  if (bytes < 10.0 && unit > 0) {
    std::snprintf(buf, sizeof(buf), "%.1f %s", bytes, kUnits[unit]);
  } else {
    std::snprintf(buf, sizeof(buf), "%.0f %s", bytes, kUnits[unit]);
  }
  return buf;
}

std::string FormatSeconds(double seconds) {
  char buf[32];
  if (seconds < 120.0) {
    std::snprintf(buf, sizeof(buf), "%.0f s", seconds);
  } else if (seconds < 2 * 3600.0) {
    std::snprintf(buf, sizeof(buf), "%.0f min", seconds / 60.0);
  } else if (seconds < 2 * 86400.0) {
    std::snprintf(buf, sizeof(buf), "%.0f hrs", seconds / 3600.0);
  } else {
    std::snprintf(buf, sizeof(buf), "%.0f days", seconds / 86400.0);
  }
  return buf;
}

std::string DescribeCluster(const ClusterRow& row) {
  return std::to_string(row.job_count) + " jobs, " +
         FormatBytes(row.medians[0]) + " input, " +
         FormatBytes(row.medians[1]) + " shuffle, " +
         FormatBytes(row.medians[2]) + " output, " +
         FormatSeconds(row.medians[3]) + " duration, " +
         FormatSeconds(row.medians[4]) + " map time, " +
         FormatSeconds(row.medians[5]) + " reduce time";
}

std::string RenderClusterTable(const ClusterSummary& summary) {
  std::vector<std::array<std::string, 8>> cells;
  cells.push_back({"# Jobs", "Input", "Shuffle", "Output", "Duration",
                   "Map time", "Reduce time", "Label"});
  for (const auto& c : summary.clusters) {
    const std::string label =
        c.label.empty() ? "(suggested) " + c.suggested_label : c.label;
    cells.push_back({std::to_string(c.job_count), FormatBytes(c.medians[0]),
                     FormatBytes(c.medians[1]), FormatBytes(c.medians[2]),
                     FormatSeconds(c.medians[3]), FormatSeconds(c.medians[4]),
                     FormatSeconds(c.medians[5]), label});
  }
  std::array<std::size_t, 8> width{};
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      width[j] = std::max(width[j], row[j].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j + 1 == row.size()) {
        out << row[j];
      } else {
        // Numbers right-aligned like a printed table.
        out << std::string(width[j] - row[j].size(), ' ') << row[j] << "  ";
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mrtrace
