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

#include "support/fixtures.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace mrtrace::testing {

JobRecord CompleteJob(std::uint64_t id, std::int64_t submit) {
  JobRecord r;
  r.job_id = id;
  r.name = "job";
  r.submit_time = submit;
  r.duration = 60.0;
  r.input_bytes = 1000;
  r.shuffle_bytes = 100;
  r.output_bytes = 10;
  r.map_task_seconds = 120.0;
  r.reduce_task_seconds = 30.0;
  r.map_tasks = 2;
  r.reduce_tasks = 1;
  r.input_path_hash = HashPath("/in/" + std::to_string(id));
  r.output_path_hash = HashPath("/out/" + std::to_string(id));
  return r;
}

std::vector<JobRecord> FixtureRecords(const FixtureOptions& o) {
  static const char* kWords[] = {"insert", "select", "ad-hoc", "etl",
                                 "from",   "report", "Hive_query", "42_clean"};
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Zipf-like popularity over the input pool via inverse-CDF sampling.
  std::vector<double> cumulative(o.distinct_inputs);
  double acc = 0.0;
  for (std::size_t r = 0; r < o.distinct_inputs; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -0.9);
    cumulative[r] = acc;
  }

  std::vector<JobRecord> out;
  out.reserve(o.jobs);
  for (std::size_t i = 0; i < o.jobs; ++i) {
    JobRecord r;
    r.job_id = i + 1;
    std::int64_t t;
    if (o.diurnal) {
      // Rejection sampling against 1 + 0.8 sin(2 pi t / day).
      do {
        t = static_cast<std::int64_t>(unit(rng) *
                                      static_cast<double>(o.span_seconds));
      } while (unit(rng) * 1.8 >
               1.0 + 0.8 * std::sin(2.0 * M_PI * static_cast<double>(t) /
                                    86400.0));
    } else {
      t = static_cast<std::int64_t>(unit(rng) *
                                    static_cast<double>(o.span_seconds));
    }
    r.submit_time = 1'600'000'000 + t;

    // Heavy-tailed input size; shuffle and compute follow it loosely.
    const double log_in = 3.0 + 7.0 * unit(rng);
    const double log_shuffle = std::max(0.0, log_in - 1.0 + normal(rng));
    const double log_out = std::max(0.0, log_in - 2.0 + 1.5 * normal(rng));
    r.input_bytes = static_cast<std::uint64_t>(std::pow(10.0, log_in));
    r.shuffle_bytes = unit(rng) < 0.3
                          ? 0
                          : static_cast<std::uint64_t>(std::pow(10.0, log_shuffle));
    r.output_bytes = static_cast<std::uint64_t>(std::pow(10.0, log_out));
    r.map_tasks = 1 + static_cast<std::uint64_t>(std::pow(10.0, log_in - 8.0) +
                                                 5.0 * unit(rng));
    r.map_task_seconds =
        std::pow(10.0, 0.6 * log_in - 1.0 + 0.3 * normal(rng)) *
        static_cast<double>(*r.map_tasks);
    if (*r.shuffle_bytes == 0) {
      r.reduce_tasks = 0;
      r.reduce_task_seconds = 0.0;
    } else {
      r.reduce_tasks = 1 + static_cast<std::uint64_t>(4.0 * unit(rng));
      r.reduce_task_seconds = std::pow(10.0, 0.5 * log_shuffle + 0.3 * normal(rng));
    }
    r.duration = 10.0 + std::pow(10.0, 1.0 + 2.0 * unit(rng));
    if (o.names) {
      r.name = std::string(kWords[rng() % 8]) + " " + std::to_string(rng() % 100);
    }
    if (o.path_hashes) {
      const double u = unit(rng) * acc;
      const auto rank = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), u) -
          cumulative.begin());
      r.input_path_hash = HashPath("/warehouse/t" + std::to_string(rank));
      // Some outputs are later read back as inputs.
      r.output_path_hash =
          unit(rng) < 0.2
              ? HashPath("/warehouse/t" + std::to_string(rng() % o.distinct_inputs))
              : HashPath("/tmp/out/" + std::to_string(i));
    }
    out.push_back(std::move(r));
  }
  return out;
}

Trace FixtureTrace(const FixtureOptions& options, const std::string& label) {
  return Trace(label, 100, FixtureRecords(options));
}

TempDir::TempDir() {
  std::string tmpl =
      (std::filesystem::temp_directory_path() / "mrtrace-test-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteTraceFile(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  WriteJsonl(trace, out);
}

}  // namespace mrtrace::testing
