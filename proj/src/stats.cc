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

#include "mrtrace/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrtrace/error.h"

namespace mrtrace {

double EmpiricalCDF::At(double x) const {
  auto it = std::upper_bound(
      points.begin(), points.end(), x,
      [](double v, const CdfPoint& p) { return v < p.value; });
  if (it == points.begin()) return 0.0;
  return std::prev(it)->cumulative_fraction;
}

EmpiricalCDF MakeCdf(std::vector<double> samples) {
  EmpiricalCDF cdf;
  cdf.sample_count = samples.size();
  if (samples.empty()) return cdf;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    cdf.points.push_back({samples[i], static_cast<double>(i + 1) / n});
  }
  cdf.points.back().cumulative_fraction = 1.0;
  return cdf;
}

EmpiricalCDF MakeWeightedCdf(std::span<const double> values,
                             std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "values/weights length mismatch");
  }
  EmpiricalCDF cdf;
  cdf.sample_count = values.size();
  if (values.empty()) return cdf;
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return values[a] < values[b];
  });
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "weights sum to zero");
  }
  double running = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    running += weights[order[i]];
    const double v = values[order[i]];
    if (i + 1 < order.size() && values[order[i + 1]] == v) continue;
    cdf.points.push_back({v, running / total});
  }
  cdf.points.back().cumulative_fraction = 1.0;
  return cdf;
}

double PercentileSorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw Error(ErrorCode::kInsufficientData, "percentile of empty data");
  }
  if (!(p >= 0.0 && p <= 100.0)) {
    throw Error(ErrorCode::kInvalidArgument, "percentile outside [0, 100]");
  }
  const double h = static_cast<double>(sorted.size() - 1) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double Percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return PercentileSorted(values, p);
}

double Median(std::vector<double> values) {
  return Percentile(std::move(values), 50.0);
}

bool HasVariance(std::span<const double> x) {
  if (x.size() < 2) return false;
  return std::any_of(x.begin(), x.end(),
                     [&](double v) { return v != x.front(); });
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "correlation needs two aligned series of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "constant series");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double KsStatistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInsufficientData, "KS needs two non-empty samples");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace mrtrace
