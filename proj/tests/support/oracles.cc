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

#include "support/oracles.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mrtrace::testing {

double OraclePearson(const std::vector<double>& x,
                     const std::vector<double>& y) {
  const long double n = static_cast<long double>(x.size());
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double a = x[i], b = y[i];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  const long double num = n * sxy - sx * sy;
  const long double den =
      std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
  return static_cast<double>(num / den);
}

double OracleKs(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  auto frac = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::upper_bound(v.begin(), v.end(), x) -
                               v.begin()) /
           static_cast<double>(v.size());
  };
  double d = 0.0;
  for (double x : a) d = std::max(d, std::fabs(frac(a, x) - frac(b, x)));
  for (double x : b) d = std::max(d, std::fabs(frac(a, x) - frac(b, x)));
  return d;
}

std::vector<double> OracleOneSidedPower(const std::vector<double>& signal) {
  const std::size_t n = signal.size();
  long double mean = 0;
  for (double v : signal) mean += v;
  mean /= static_cast<long double>(n);
  std::vector<double> power(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    long double re = 0, im = 0;
    for (std::size_t t = 0; t < n; ++t) {
      const long double angle = 2.0L * std::numbers::pi_v<long double> *
                                static_cast<long double>(k) *
                                static_cast<long double>(t) /
                                static_cast<long double>(n);
      re += (signal[t] - mean) * std::cos(angle);
      im -= (signal[t] - mean) * std::sin(angle);
    }
    long double p = re * re + im * im;
    if (k != 0 && !(n % 2 == 0 && k == n / 2)) p *= 2;
    power[k] = static_cast<double>(p);
  }
  return power;
}

double OracleEightyX(const std::vector<OracleFile>& files, double q) {
  const std::size_t n = files.size();
  std::uint64_t total_accesses = 0;
  long double total_bytes = 0;
  for (const auto& f : files) {
    total_accesses += f.accesses;
    total_bytes += static_cast<long double>(f.size);
  }
  auto higher = [](const OracleFile& a, const OracleFile& b) {
    if (a.accesses != b.accesses) return a.accesses > b.accesses;
    return a.digest < b.digest;
  };
  int best_size = -1;
  std::vector<OracleFile> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<OracleFile> pick;
    std::uint64_t covered = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        pick.push_back(files[i]);
        covered += files[i].accesses;
      }
    }
    if (static_cast<double>(covered) < q * static_cast<double>(total_accesses)) {
      continue;
    }
    std::sort(pick.begin(), pick.end(), higher);
    const int size = static_cast<int>(pick.size());
    bool better = best_size < 0 || size < best_size;
    if (!better && size == best_size) {
      better = std::lexicographical_compare(pick.begin(), pick.end(),
                                            best.begin(), best.end(), higher);
    }
    if (better) {
      best_size = size;
      best = pick;
    }
  }
  long double bytes = 0;
  for (const auto& f : best) bytes += static_cast<long double>(f.size);
  return static_cast<double>(100.0L * bytes / total_bytes);
}

CacheReport OracleCache(const std::vector<AccessEvent>& stream,
                        const CacheConfig& config) {
  struct Slot {
    std::uint64_t digest;
    std::uint64_t size;
    double last;
    std::uint64_t stamp;
  };
  std::vector<Slot> cache;
  std::uint64_t clock = 0;
  CacheReport rep;
  auto resident = [&] {
    std::uint64_t s = 0;
    for (const auto& c : cache) s += c.size;
    return s;
  };
  auto evict_lru = [&] {
    auto victim = std::min_element(
        cache.begin(), cache.end(),
        [](const Slot& a, const Slot& b) { return a.stamp < b.stamp; });
    cache.erase(victim);
    ++rep.evictions;
  };
  for (const auto& e : stream) {
    ++clock;
    if (config.eviction == Eviction::kIdleTtl) {
      for (std::size_t i = 0; i < cache.size();) {
        if (e.time - cache[i].last > config.idle_ttl_seconds) {
          cache.erase(cache.begin() + static_cast<std::ptrdiff_t>(i));
          ++rep.evictions;
        } else {
          ++i;
        }
      }
    }
    auto it = std::find_if(cache.begin(), cache.end(), [&](const Slot& s) {
      return s.digest == e.file_digest;
    });
    const bool read = e.kind == AccessKind::kInputRead;
    if (read) {
      ++rep.accesses;
      rep.accessed_bytes += e.file_size;
    }
    if (read && it != cache.end() && it->size >= e.file_size) {
      ++rep.hits;
      rep.hit_bytes += e.file_size;
      it->size = e.file_size;
      it->last = e.time;
      it->stamp = clock;
      continue;
    }
    if (it != cache.end()) cache.erase(it);
    if (config.admission == Admission::kSizeAtMost &&
        e.file_size > config.size_threshold) {
      continue;
    }
    while (!cache.empty() && resident() + e.file_size > config.capacity_bytes) {
      evict_lru();
    }
    if (e.file_size > config.capacity_bytes) continue;
    cache.push_back({e.file_digest, e.file_size, e.time, clock});
    rep.peak_resident_bytes = std::max(rep.peak_resident_bytes, resident());
  }
  if (rep.accesses) {
    rep.hit_rate_by_accesses =
        static_cast<double>(rep.hits) / static_cast<double>(rep.accesses);
  }
  if (rep.accessed_bytes) {
    rep.hit_rate_by_bytes = static_cast<double>(rep.hit_bytes) /
                            static_cast<double>(rep.accessed_bytes);
  }
  return rep;
}

}  // namespace mrtrace::testing
