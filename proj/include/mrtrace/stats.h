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
#include <span>
#include <vector>

namespace mrtrace {

struct CdfPoint {
  double value = 0.0;
  double cumulative_fraction = 0.0;

  bool operator==(const CdfPoint&) const = default;
};

// Step CDF with one point per distinct value.
struct EmpiricalCDF {
  std::vector<CdfPoint> points;
  std::size_t sample_count = 0;

  // Fraction of mass at values <= x.
  double At(double x) const;
};

EmpiricalCDF MakeCdf(std::vector<double> samples);
// Weighted step CDF; weights must be non-negative with positive sum.
EmpiricalCDF MakeWeightedCdf(std::span<const double> values,
                             std::span<const double> weights);

// Inclusive linear-interpolation percentile on already sorted data:
// h = (n - 1) * p / 100, interpolate between order statistics floor(h) and
// floor(h) + 1. p in [0, 100].
double PercentileSorted(std::span<const double> sorted, double p);
double Percentile(std::vector<double> values, double p);
double Median(std::vector<double> values);

// Pearson correlation coefficient. Both inputs must have variance (see
// HasVariance); the result is clamped to [-1, 1].
double Pearson(std::span<const double> x, std::span<const double> y);
bool HasVariance(std::span<const double> x);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double KsStatistic(std::vector<double> a, std::vector<double> b);

}  // namespace mrtrace
