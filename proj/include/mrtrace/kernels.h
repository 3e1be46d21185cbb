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

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference with identical per-element arithmetic, so results are bit-equal
// regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mrtrace::kernels {

// For each row of a row-major [n x dims] matrix, writes the index of the
// nearest centroid (squared Euclidean, lowest index on ties) and the squared
// distance to it.
void AssignNearest(std::span<const double> rows,
                   std::span<const double> centroids, std::size_t dims,
                   std::span<std::uint32_t> assignment,
                   std::span<double> distance2);
void AssignNearestSerial(std::span<const double> rows,
                         std::span<const double> centroids, std::size_t dims,
                         std::span<std::uint32_t> assignment,
                         std::span<double> distance2);

// One-sided power |X_k|^2 of the DFT for k = 0..n/2.
std::vector<double> DftPower(std::span<const double> signal);
std::vector<double> DftPowerSerial(std::span<const double> signal);

int MaxThreads();

}  // namespace mrtrace::kernels
