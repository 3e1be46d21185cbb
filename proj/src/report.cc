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

#include "mrtrace/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <unistd.h>

#include "mrtrace/compute_patterns.h"
#include "mrtrace/data_access.h"
#include "mrtrace/error.h"
#include "mrtrace/temporal.h"

namespace mrtrace {

using nlohmann::json;

json Num(double value) {
  if (!std::isfinite(value)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return std::strtod(buf, nullptr);
}

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string RenderJson(const json& document) {
  return document.dump(2) + "\n";
}

std::string CdfTsv(const EmpiricalCDF& cdf) {
  std::string out = "value\tcumulative_fraction\n";
  for (const auto& p : cdf.points) {
    out += FormatNumber(p.value);
    out += '\t';
    out += FormatNumber(p.cumulative_fraction);
    out += '\n';
  }
  return out;
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error(ErrorCode::kIoError, "short write to " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::kIoError, "cannot rename onto " + path);
  }
}

void WritePlotFiles(const std::string& directory, const PlotFiles& plots) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + directory);
  for (const auto& [name, content] : plots) {
    WriteFileAtomic((std::filesystem::path(directory) / name).string(),
                    content);
  }
}

namespace {

// Smallest value whose cumulative fraction reaches q.
double CdfQuantile(const EmpiricalCDF& cdf, double q) {
  for (const auto& p : cdf.points) {
    if (p.cumulative_fraction >= q) return p.value;
  }
  return cdf.points.empty() ? 0.0 : cdf.points.back().value;
}

json CdfSummary(const EmpiricalCDF& cdf) {
  json j;
  j["samples"] = cdf.sample_count;
  if (cdf.points.empty()) return j;
  j["min"] = Num(cdf.points.front().value);
  j["p25"] = Num(CdfQuantile(cdf, 0.25));
  j["median"] = Num(CdfQuantile(cdf, 0.50));
  j["p75"] = Num(CdfQuantile(cdf, 0.75));
  j["p90"] = Num(CdfQuantile(cdf, 0.90));
  j["p99"] = Num(CdfQuantile(cdf, 0.99));
  j["max"] = Num(cdf.points.back().value);
  return j;
}

json ZipfJson(const ZipfFit& fit) {
  return {{"slope", Num(fit.slope)},
          {"intercept", Num(fit.intercept)},
          {"r_squared", Num(fit.r_squared)},
          {"n_points", fit.n_points}};
}

json SeriesSummary(const TimeSeries& s) {
  std::vector<double> v = s.values;
  json j;
  j["buckets"] = v.size();
  j["bucket_width"] = s.bucket_width;
  j["start"] = s.start;
  j["sum"] = Num(s.Sum());
  j["excluded_jobs"] = s.excluded_count;
  if (!v.empty()) {
    j["mean"] = Num(s.Sum() / static_cast<double>(v.size()));
    j["median"] = Num(Median(v));
    j["max"] = Num(*std::max_element(v.begin(), v.end()));
  }
  json gaps = json::array();
  for (const auto& g : SuspectedGaps(s)) {
    gaps.push_back({{"first_bucket", g.first}, {"last_bucket", g.last}});
  }
  j["suspected_logging_gaps"] = std::move(gaps);
  return j;
}

std::string SeriesTsv(const TimeSeries& s) {
  std::string out = "bucket_index\tvalue\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    out += std::to_string(i);
    out += '\t';
    out += FormatNumber(s.values[i]);
    out += '\n';
  }
  return out;
}

std::string BurstinessTsv(const BurstinessCurve& c) {
  std::string out = "ratio\tpercentile\n";
  for (const auto& p : c.points) {
    out += FormatNumber(p.ratio) + '\t' + std::to_string(p.percentile) + '\n';
  }
  return out;
}

json BurstinessJson(const BurstinessCurve& c) {
  json j;
  j["median"] = Num(c.median);
  json ratios = json::object();
  for (const auto& p : c.points) {
    if (p.percentile == 1 || p.percentile == 5 || p.percentile == 10 ||
        p.percentile == 50 || p.percentile == 90 || p.percentile == 95 ||
        p.percentile == 99 || p.percentile == 100) {
      ratios["p" + std::to_string(p.percentile)] = Num(p.ratio);
    }
  }
  j["ratios"] = std::move(ratios);
  return j;
}

// Runs one section, recording either its result or why it was skipped.
class SectionRunner {
 public:
  explicit SectionRunner(json& sections) : sections_(sections) {}

  void Run(const std::string& key, const std::string& operation, json params,
           const std::function<json()>& body) {
    json section;
    section["operation"] = operation;
    section["params"] = std::move(params);
    try {
      section["result"] = body();
      section["status"] = "ok";
    } catch (const Error& e) {
      section["status"] = "skipped";
      section["reason"] = e.message();
    }
    sections_[key] = std::move(section);
  }

 private:
  json& sections_;
};

std::string MissingFieldReason(const char* field) {
  return std::string("missing field: ") + field;
}

JobFeatureMatrix SampleRows(const JobFeatureMatrix& full, std::size_t limit,
                            std::uint64_t seed) {
  const std::size_t n = full.row_count();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < limit; ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(
                (static_cast<double>(rng() >> 11) * 0x1.0p-53) *
                static_cast<double>(n - i));
    std::swap(idx[i], idx[std::min(j, n - 1)]);
  }
  idx.resize(limit);
  std::sort(idx.begin(), idx.end());
  JobFeatureMatrix sample;
  sample.transform = full.transform;
  sample.rows.reserve(limit * kFeatureDims);
  for (std::size_t i : idx) {
    const auto row = full.row(i);
    sample.rows.insert(sample.rows.end(), row.begin(), row.end());
    sample.record_index.push_back(full.record_index[i]);
  }
  return sample;
}

}  // namespace

AnalysisOutput AnalyzeTrace(const Trace& trace, const AnalyzeOptions& opt) {
  AnalysisOutput out;
  json& report = out.report;
  PlotFiles& plots = out.plots;

  report["tool"] = {{"name", "mrtrace"}, {"version", kToolVersion}};

  const ValidationReport validation = Validate(trace);
  double bytes_moved = 0.0;
  for (const auto& r : trace.records()) {
    if (r.input_bytes && r.shuffle_bytes && r.output_bytes) {
      bytes_moved += static_cast<double>(*r.input_bytes) +
                     static_cast<double>(*r.shuffle_bytes) +
                     static_cast<double>(*r.output_bytes);
    }
  }
  json anomalies = json::array();
  for (std::size_t i = 0; i < validation.anomalies.size() && i < 100; ++i) {
    anomalies.push_back({{"job_id", validation.anomalies[i].job_id},
                         {"description", validation.anomalies[i].description}});
  }
  report["trace"] = {
      {"label", trace.label()},
      {"machine_count", trace.machine_count()},
      {"jobs", trace.size()},
      {"span_start", trace.span().start},
      {"span_end", trace.span().end},
      {"length_seconds", trace.span().length()},
      {"bytes_moved", Num(bytes_moved)},
      {"validation",
       {{"record_count", validation.record_count},
        {"missing_field_counts", validation.missing_field_counts},
        {"anomaly_count", validation.anomalies.size()},
        {"anomalies_first_100", std::move(anomalies)}}}};

  report["decisions"] = {
      {"seed", opt.seed},
      {"bucket_width_seconds", opt.bucket_width},
      {"path_hash", {{"algorithm", "xxh64"}, {"seed", kPathHashSeed}}},
      {"percentile_scheme",
       "linear interpolation between order statistics, h = (n-1)p/100"},
      {"file_size_rule", "largest byte count observed per digest"},
      {"zipf_fit",
       "least squares of log10(access count) on log10(rank), all entries; "
       "tail-trimmed fit (count >= 2) reported alongside"},
      {"reaccess_definition",
       "input path seen earlier in the trace as any input or output; gaps "
       "between submit times"},
      {"time_attribution", "job totals attributed to the submit bucket"},
      {"occupancy",
       "approximation: task-seconds spread uniformly over [submit, "
       "submit + duration]"},
      {"feature_transform", "log10(1 + x), then z-score per dimension"},
      {"kmeans",
       {{"init", "k-means++"},
        {"max_iterations", kMaxLloydIterations},
        {"elbow_threshold", Num(opt.elbow_threshold)},
        {"restarts", opt.restarts},
        {"k_max", opt.k_max},
        {"elbow_sample_rows", opt.cluster_sample}}},
      {"name_cutoff", Num(opt.name_cutoff)},
      {"access_quantile", Num(opt.access_quantile)},
      {"diurnal_rule",
       "component with period within 24h +/- one bucket holding >= 5% of "
       "non-DC power"}};

  json sections = json::object();
  SectionRunner run(sections);

  // Per-job data sizes.
  for (auto dim : {SizeDimension::kInput, SizeDimension::kShuffle,
                   SizeDimension::kOutput}) {
    const std::string name = DimensionName(dim);
    run.Run("data_size_" + name, "data_size_cdf", {{"dimension", name}},
            [&] {
              const auto r = ComputeDataSizeCdf(trace, dim);
              plots["fig1_" + name + "_size_cdf.tsv"] = CdfTsv(r.cdf);
              json j = CdfSummary(r.cdf);
              j["excluded_jobs"] = r.excluded_count;
              return j;
            });
  }

  for (auto side : {AccessSide::kInput, AccessSide::kOutput}) {
    const std::string name = SideName(side);
    const std::string fig_size = side == AccessSide::kInput ? "fig3_" : "fig4_";
    run.Run("zipf_" + name, "fit_zipf", {{"side", name}}, [&] {
      const auto table = AccessFrequencyRank(trace, side);
      std::string tsv = "rank\taccess_count\n";
      for (std::size_t i = 0; i < table.entries.size(); ++i) {
        tsv += std::to_string(i + 1) + '\t' +
               std::to_string(table.entries[i].access_count) + '\n';
      }
      plots["fig2_" + name + "_access_rank.tsv"] = std::move(tsv);
      json j;
      j["files"] = table.entries.size();
      j["accesses"] = table.TotalAccesses();
      j["fit_all_entries"] = ZipfJson(FitZipf(table));
      try {
        j["fit_count_at_least_2"] = ZipfJson(FitZipfTrimmed(table, 2));
      } catch (const Error& e) {
        j["fit_count_at_least_2"] = {{"status", "skipped"},
                                     {"reason", e.message()}};
      }
      return j;
    });
    run.Run("access_vs_size_" + name, "access_vs_size_curves",
            {{"side", name}}, [&] {
              const auto curves = AccessVsSizeCurves(trace, side);
              plots[fig_size + name + "_jobs_by_file_size.tsv"] =
                  CdfTsv(curves.jobs_cdf);
              plots[fig_size + name + "_bytes_by_file_size.tsv"] =
                  CdfTsv(curves.bytes_cdf);
              return json{{"jobs_cdf", CdfSummary(curves.jobs_cdf)},
                          {"bytes_cdf", CdfSummary(curves.bytes_cdf)},
                          {"unsized_files", curves.unsized_files}};
            });
    run.Run("eighty_x_" + name, "eighty_x_rule",
            {{"side", name}, {"access_quantile", Num(opt.access_quantile)}},
            [&] {
              const double x = EightyXRule(trace, side, opt.access_quantile);
              return json{{"x_percent", Num(x)}};
            });
  }

  run.Run("reaccess", "reaccess_intervals", json::object(), [&] {
    const auto r = ReaccessIntervals(trace);
    plots["fig5_input_reread_intervals.tsv"] = CdfTsv(r.reread_cdf);
    plots["fig5_output_reuse_intervals.tsv"] = CdfTsv(r.reuse_cdf);
    plots["fig6_preexisting_input_fraction.tsv"] =
        "label\tfraction\n" + trace.label() + '\t' +
        FormatNumber(r.reaccess_job_fraction) + '\n';
    return json{{"interval_seconds", CdfSummary(r.interval_cdf)},
                {"reread_interval_seconds", CdfSummary(r.reread_cdf)},
                {"reuse_interval_seconds", CdfSummary(r.reuse_cdf)},
                {"fraction_within_6_hours", Num(r.interval_cdf.At(6 * 3600))},
                {"reaccess_job_fraction", Num(r.reaccess_job_fraction)},
                {"jobs_with_input", r.jobs_with_input}};
  });

  for (auto dim : {SeriesDimension::kJobsSubmitted,
                   SeriesDimension::kDataSizeBytes,
                   SeriesDimension::kComputeTimeTaskSeconds,
                   SeriesDimension::kOccupancySlots}) {
    const std::string name = SeriesDimensionName(dim);
    run.Run("series_" + name,
            dim == SeriesDimension::kOccupancySlots ? "occupancy_series"
                                                    : "bucket_time_series",
            {{"dimension", name}, {"bucket_width", opt.bucket_width}}, [&] {
              const auto s = BucketTimeSeries(trace, dim, opt.bucket_width);
              plots["fig7_" + name + ".tsv"] = SeriesTsv(s);
              return SeriesSummary(s);
            });
  }

  run.Run("burstiness", "burstiness_curve",
          {{"dimension", "compute_time_task_seconds"},
           {"bucket_width", opt.bucket_width},
           {"percentile_grid", "1..100"}},
          [&] {
            const auto s = BucketTimeSeries(
                trace, SeriesDimension::kComputeTimeTaskSeconds,
                opt.bucket_width);
            const auto curve = ComputeBurstinessCurve(s);
            plots["fig8_task_time_burstiness.tsv"] = BurstinessTsv(curve);
            const std::size_t buckets = std::max<std::size_t>(
                24, (s.values.size() + 23) / 24 * 24);
            plots["fig8_sine_plus_2.tsv"] = BurstinessTsv(
                ComputeBurstinessCurve(
                    SineReference(SineKind::kRangeEqualsMean, buckets)));
            plots["fig8_sine_plus_20.tsv"] = BurstinessTsv(
                ComputeBurstinessCurve(
                    SineReference(SineKind::kRangeEqualsTenthOfMean, buckets)));
            return BurstinessJson(curve);
          });

  {
    json peaks_params = {{"bucket_width", opt.bucket_width},
                         {"percentiles", {100, 99, 95, 90}}};
    run.Run("peak_to_median", "peak_to_median", peaks_params, [&] {
      json j = json::object();
      for (auto dim : {SeriesDimension::kJobsSubmitted,
                       SeriesDimension::kDataSizeBytes,
                       SeriesDimension::kComputeTimeTaskSeconds}) {
        json row;
        try {
          const auto s = BucketTimeSeries(trace, dim, opt.bucket_width);
          for (int p : {100, 99, 95, 90}) {
            row["p" + std::to_string(p)] = Num(PeakToMedian(s, p));
          }
        } catch (const Error& e) {
          row = {{"status", "skipped"}, {"reason", e.message()}};
        }
        j[SeriesDimensionName(dim)] = std::move(row);
      }
      return j;
    });
  }

  run.Run("correlations", "dimension_correlations",
          {{"bucket_width", opt.bucket_width}}, [&] {
            const auto m = DimensionCorrelations(trace, opt.bucket_width);
            plots["fig9_correlations.tsv"] =
                "pair\tr\njobs_data\t" + FormatNumber(m.r_jobs_data) +
                "\njobs_compute\t" + FormatNumber(m.r_jobs_compute) +
                "\ndata_compute\t" + FormatNumber(m.r_data_compute) + "\n";
            return json{{"r_jobs_data", Num(m.r_jobs_data)},
                        {"r_jobs_compute", Num(m.r_jobs_compute)},
                        {"r_data_compute", Num(m.r_data_compute)},
                        {"n_buckets", m.n_buckets}};
          });

  run.Run("periodogram", "periodogram",
          {{"dimension", "jobs_submitted"},
           {"bucket_width", opt.bucket_width},
           {"top_k", opt.periodogram_top_k}},
          [&] {
            const auto s = BucketTimeSeries(
                trace, SeriesDimension::kJobsSubmitted, opt.bucket_width);
            const auto p = ComputePeriodogram(s, opt.periodogram_top_k);
            json top = json::array();
            for (const auto& c : p.top) {
              top.push_back({{"period_hours", Num(c.period_seconds / 3600.0)},
                             {"power_fraction", Num(c.power_fraction)}});
            }
            return json{{"diurnal", p.diurnal}, {"top", std::move(top)}};
          });

  const bool has_names =
      std::any_of(trace.records().begin(), trace.records().end(),
                  [](const JobRecord& r) { return r.name.has_value(); });
  for (auto w : {NameWeighting::kJobs, NameWeighting::kIoBytes,
                 NameWeighting::kTaskTime}) {
    const std::string name = WeightingName(w);
    run.Run("names_" + name, "name_breakdown",
            {{"weighting", name}, {"cutoff", Num(opt.name_cutoff)}}, [&] {
              if (!has_names) {
                throw Error(ErrorCode::kNoData, MissingFieldReason("name"));
              }
              const auto b = ComputeNameBreakdown(trace, w, opt.name_cutoff);
              std::string tsv = "first_word\tweight_fraction\n";
              json entries = json::array();
              for (const auto& e : b.entries) {
                tsv += e.first_word + '\t' +
                       FormatNumber(e.weight_fraction) + '\n';
                entries.push_back({{"first_word", e.first_word},
                                   {"fraction", Num(e.weight_fraction)}});
              }
              tsv += "<other>\t" + FormatNumber(b.other_fraction) + '\n';
              plots["fig10_names_" + name + ".tsv"] = std::move(tsv);
              return json{{"entries", std::move(entries)},
                          {"other_fraction", Num(b.other_fraction)},
                          {"excluded_jobs", b.excluded_count}};
            });
  }

  run.Run("clusters", "kmeans",
          {{"k_max", opt.k_max},
           {"elbow_threshold", Num(opt.elbow_threshold)},
           {"restarts", opt.restarts},
           {"seed", opt.seed},
           {"elbow_sample_rows", opt.cluster_sample}},
          [&] {
            const auto matrix = JobFeatureVectors(trace);
            ElbowOptions eo;
            eo.k_max = opt.k_max;
            eo.improvement_threshold = opt.elbow_threshold;
            eo.restarts = opt.restarts;
            eo.seed = opt.seed;
            const bool sampled = opt.cluster_sample > 0 &&
                                 matrix.row_count() > opt.cluster_sample;
            const ElbowResult elbow =
                sampled ? SelectK(SampleRows(matrix, opt.cluster_sample,
                                             opt.seed),
                                  eo)
                        : SelectK(matrix, eo);
            const ClusterModel model =
                sampled ? KMeans(matrix, elbow.k, elbow.best_model.seed)
                        : elbow.best_model;
            const auto summary = SummarizeClusters(trace, matrix, model);
            plots["table2_clusters.txt"] = RenderClusterTable(summary);

            json residuals = json::array();
            for (double r : elbow.residual_by_k) residuals.push_back(Num(r));
            json clusters = json::array();
            for (const auto& c : summary.clusters) {
              json medians, centroid;
              for (std::size_t j = 0; j < kFeatureDims; ++j) {
                medians[FeatureNames()[j]] = Num(c.medians[j]);
                centroid[FeatureNames()[j]] = Num(c.centroid[j]);
              }
              clusters.push_back({{"job_count", c.job_count},
                                  {"medians", std::move(medians)},
                                  {"centroid_standardized", std::move(centroid)},
                                  {"label", c.label},
                                  {"suggested_label", c.suggested_label},
                                  {"description", DescribeCluster(c)}});
            }
            json transform;
            for (std::size_t j = 0; j < kFeatureDims; ++j) {
              transform[FeatureNames()[j]] = {
                  {"log_mean", Num(matrix.transform.mean[j])},
                  {"log_stddev", Num(matrix.transform.scale[j])}};
            }
            return json{{"k", model.k},
                        {"model_seed", model.seed},
                        {"residual_variance", Num(model.residual_variance)},
                        {"residual_variance_by_k", std::move(residuals)},
                        {"elbow_on_sample", sampled},
                        {"clustered_jobs", matrix.row_count()},
                        {"excluded_jobs", matrix.excluded_count},
                        {"transform", std::move(transform)},
                        {"clusters", std::move(clusters)}};
          });

  report["sections"] = std::move(sections);
  json skipped = json::array();
  for (const auto& [key, section] : report["sections"].items()) {
    if (section["status"] == "skipped") skipped.push_back(key);
  }
  report["skipped_sections"] = std::move(skipped);
  return out;
}

}  // namespace mrtrace
