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

#include "mrtrace/data_access.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mrtrace/error.h"

namespace mrtrace {

const char* DimensionName(SizeDimension dimension) {
  switch (dimension) {
    case SizeDimension::kInput: return "input";
    case SizeDimension::kShuffle: return "shuffle";
    case SizeDimension::kOutput: return "output";
  }
  return "?";
}

const char* SideName(AccessSide side) {
  return side == AccessSide::kInput ? "input" : "output";
}

namespace {

const std::optional<std::uint64_t>& SizeField(const JobRecord& r,
                                              SizeDimension d) {
  switch (d) {
    case SizeDimension::kInput: return r.input_bytes;
    case SizeDimension::kShuffle: return r.shuffle_bytes;
    case SizeDimension::kOutput: return r.output_bytes;
  }
  return r.input_bytes;
}

const std::optional<std::uint64_t>& PathField(const JobRecord& r,
                                              AccessSide side) {
  return side == AccessSide::kInput ? r.input_path_hash : r.output_path_hash;
}

const std::optional<std::uint64_t>& SideBytes(const JobRecord& r,
                                              AccessSide side) {
  return side == AccessSide::kInput ? r.input_bytes : r.output_bytes;
}

bool RankBefore(const AccessEntry& a, const AccessEntry& b) {
  if (a.access_count != b.access_count) return a.access_count > b.access_count;
  return a.file_digest < b.file_digest;
}

ZipfFit FitPoints(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "Zipf fit needs at least two ranked entries");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  ZipfFit fit;
  fit.n_points = x.size();
  const double slope = sxy / sxx;
  fit.slope = std::abs(slope);
  fit.intercept = my - slope * mx;
  if (syy == 0.0) {
    // Flat line: the fit is exact.
    fit.r_squared = 1.0;
  } else {
    fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  }
  return fit;
}

ZipfFit FitEntries(const RankedAccessTable& table, std::uint64_t min_count) {
  std::vector<double> x, y;
  x.reserve(table.entries.size());
  y.reserve(table.entries.size());
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    if (e.access_count < min_count) continue;
    x.push_back(std::log10(static_cast<double>(i + 1)));
    y.push_back(std::log10(static_cast<double>(e.access_count)));
  }
  return FitPoints(x, y);
}

}  // namespace

DataSizeCdf ComputeDataSizeCdf(const Trace& trace, SizeDimension dimension) {
  std::vector<double> samples;
  samples.reserve(trace.size());
  DataSizeCdf out;
  for (const auto& r : trace.records()) {
    const auto& v = SizeField(r, dimension);
    if (v) {
      samples.push_back(static_cast<double>(*v));
    } else {
      ++out.excluded_count;
    }
  }
  if (samples.empty()) {
    throw Error(ErrorCode::kNoData, std::string("no ") +
                                        DimensionName(dimension) +
                                        "_bytes in trace");
  }
  out.cdf = MakeCdf(std::move(samples));
  return out;
}

std::uint64_t RankedAccessTable::TotalAccesses() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.access_count;
  return total;
}

RankedAccessTable AccessFrequencyRank(const Trace& trace, AccessSide side) {
  std::unordered_map<std::uint64_t, AccessEntry> by_digest;
  for (const auto& r : trace.records()) {
    const auto& path = PathField(r, side);
    if (!path) continue;
    auto& e = by_digest[*path];
    e.file_digest = *path;
    ++e.access_count;
    const auto& bytes = SideBytes(r, side);
    if (bytes) e.size_bytes = std::max(e.size_bytes.value_or(0), *bytes);
  }
  if (by_digest.empty()) {
    throw Error(ErrorCode::kNoData,
                std::string("no ") + SideName(side) + "_path_hash in trace");
  }
  RankedAccessTable table;
  table.side = side;
  table.entries.reserve(by_digest.size());
  for (auto& [digest, e] : by_digest) table.entries.push_back(e);
  std::sort(table.entries.begin(), table.entries.end(), RankBefore);
  return table;
}

ZipfFit FitZipf(const RankedAccessTable& table) { return FitEntries(table, 0); }

ZipfFit FitZipfCounts(std::span<const double> counts_by_rank) {
  std::vector<double> x, y;
  x.reserve(counts_by_rank.size());
  y.reserve(counts_by_rank.size());
  for (std::size_t i = 0; i < counts_by_rank.size(); ++i) {
    if (!(counts_by_rank[i] > 0)) {
      throw Error(ErrorCode::kInvalidArgument, "counts must be positive");
    }
    x.push_back(std::log10(static_cast<double>(i + 1)));
    y.push_back(std::log10(counts_by_rank[i]));
  }
  return FitPoints(x, y);
}

ZipfFit FitZipfTrimmed(const RankedAccessTable& table,
                       std::uint64_t min_count) {
  return FitEntries(table, min_count);
}

AccessSizeCurves AccessVsSizeCurves(const Trace& trace, AccessSide side) {
  const RankedAccessTable table = AccessFrequencyRank(trace, side);
  std::vector<double> sizes, accesses;
  AccessSizeCurves out;
  for (const auto& e : table.entries) {
    if (!e.size_bytes) {
      ++out.unsized_files;
      continue;
    }
    sizes.push_back(static_cast<double>(*e.size_bytes));
    accesses.push_back(static_cast<double>(e.access_count));
  }
  if (sizes.empty()) {
    throw Error(ErrorCode::kNoData,
                std::string("no sized ") + SideName(side) + " files");
  }
  out.jobs_cdf = MakeWeightedCdf(sizes, accesses);
  double total_bytes = 0.0;
  for (double s : sizes) total_bytes += s;
  if (total_bytes > 0) {
    out.bytes_cdf = MakeWeightedCdf(sizes, sizes);
  } else {
    // Every file is empty; all stored bytes (none) sit at size 0.
    out.bytes_cdf.points = {{0.0, 1.0}};
    out.bytes_cdf.sample_count = sizes.size();
  }
  return out;
}

double EightyXRule(const RankedAccessTable& table, double access_quantile) {
  if (!(access_quantile >= 0.0 && access_quantile <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "access_quantile outside [0, 1]");
  }
  std::vector<AccessEntry> sized;
  for (const auto& e : table.entries) {
    if (e.size_bytes) sized.push_back(e);
  }
  if (sized.empty()) throw Error(ErrorCode::kNoData, "no sized files");
  std::sort(sized.begin(), sized.end(), RankBefore);

  std::uint64_t total_accesses = 0;
  long double total_bytes = 0;
  for (const auto& e : sized) {
    total_accesses += e.access_count;
    total_bytes += static_cast<long double>(*e.size_bytes);
  }
  if (total_bytes == 0) {
    throw Error(ErrorCode::kNoData, "all files are empty");
  }
  const double needed = access_quantile * static_cast<double>(total_accesses);
  std::uint64_t covered = 0;
  long double bytes = 0;
  for (const auto& e : sized) {
    if (static_cast<double>(covered) >= needed) break;
    covered += e.access_count;
    bytes += static_cast<long double>(*e.size_bytes);
  }
  return static_cast<double>(100.0L * bytes / total_bytes);
}

double EightyXRule(const Trace& trace, AccessSide side,
                   double access_quantile) {
  return EightyXRule(AccessFrequencyRank(trace, side), access_quantile);
}

ReaccessStats ReaccessIntervals(const Trace& trace) {
  enum class Touch : std::uint8_t { kRead, kWrite };
  struct LastTouch {
    std::int64_t time;
    Touch kind;
  };
  std::unordered_map<std::uint64_t, LastTouch> last;
  std::vector<double> all, reread, reuse;
  ReaccessStats out;

  for (const auto& r : trace.records()) {
    if (r.input_path_hash) {
      ++out.jobs_with_input;
      auto it = last.find(*r.input_path_hash);
      if (it != last.end()) {
        ++out.reaccess_jobs;
        const double gap = static_cast<double>(r.submit_time - it->second.time);
        all.push_back(gap);
        (it->second.kind == Touch::kRead ? reread : reuse).push_back(gap);
        it->second = {r.submit_time, Touch::kRead};
      } else {
        last.emplace(*r.input_path_hash, LastTouch{r.submit_time, Touch::kRead});
      }
    }
    if (r.output_path_hash) {
      last[*r.output_path_hash] = {r.submit_time, Touch::kWrite};
    }
  }
  if (out.jobs_with_input == 0) {
    throw Error(ErrorCode::kNoData, "no input_path_hash in trace");
  }
  out.reaccess_job_fraction = static_cast<double>(out.reaccess_jobs) /
                              static_cast<double>(out.jobs_with_input);
  out.interval_cdf = MakeCdf(std::move(all));
  out.reread_cdf = MakeCdf(std::move(reread));
  out.reuse_cdf = MakeCdf(std::move(reuse));
  return out;
}

}  // namespace mrtrace
