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

#include "mrtrace/kernels.h"

#include <cmath>
#include <limits>
#include <numbers>

#ifdef MRTRACE_HAVE_OPENMP
#include <omp.h>
#endif

namespace mrtrace::kernels {
namespace {

inline void NearestOne(const double* row, std::span<const double> centroids,
                       std::size_t dims, std::uint32_t& best_index,
                       double& best_d2) {
  const std::size_t k = centroids.size() / dims;
  best_index = 0;
  best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    const double* centroid = centroids.data() + c * dims;
    double d2 = 0.0;
    for (std::size_t j = 0; j < dims; ++j) {
      const double diff = row[j] - centroid[j];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {
      best_d2 = d2;
      best_index = static_cast<std::uint32_t>(c);
    }
  }
}

// |X_k|^2 with the phase reduced modulo n so large k * t products keep full
// precision.
inline double PowerAt(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  double re = 0.0, im = 0.0;
  std::size_t phase = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double angle = step * static_cast<double>(phase);
    re += x[t] * std::cos(angle);
    im -= x[t] * std::sin(angle);
    phase += k;
    if (phase >= n) phase -= n;
  }
  return re * re + im * im;
}

}  // namespace

void AssignNearest(std::span<const double> rows,
                   std::span<const double> centroids, std::size_t dims,
                   std::span<std::uint32_t> assignment,
                   std::span<double> distance2) {
  const auto n = static_cast<std::int64_t>(rows.size() / dims);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    NearestOne(rows.data() + static_cast<std::size_t>(i) * dims, centroids,
               dims, assignment[static_cast<std::size_t>(i)],
               distance2[static_cast<std::size_t>(i)]);
  }
}

void AssignNearestSerial(std::span<const double> rows,
                         std::span<const double> centroids, std::size_t dims,
                         std::span<std::uint32_t> assignment,
                         std::span<double> distance2) {
  const std::size_t n = rows.size() / dims;
  for (std::size_t i = 0; i < n; ++i) {
    NearestOne(rows.data() + i * dims, centroids, dims, assignment[i],
               distance2[i]);
  }
}

std::vector<double> DftPower(std::span<const double> signal) {
  const std::size_t half = signal.size() / 2;
  std::vector<double> power(signal.empty() ? 0 : half + 1);
  const auto count = static_cast<std::int64_t>(power.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k) {
    power[static_cast<std::size_t>(k)] =
        PowerAt(signal, static_cast<std::size_t>(k));
  }
  return power;
}

std::vector<double> DftPowerSerial(std::span<const double> signal) {
  const std::size_t half = signal.size() / 2;
  std::vector<double> power(signal.empty() ? 0 : half + 1);
  for (std::size_t k = 0; k < power.size(); ++k) {
    power[k] = PowerAt(signal, k);
  }
  return power;
}

int MaxThreads() {
#ifdef MRTRACE_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace mrtrace::kernels
