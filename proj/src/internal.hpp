// Copyright 2026 The rollsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Helpers shared by the implementation files. Not installed.

#ifndef ROLLSIM_SRC_INTERNAL_HPP
#define ROLLSIM_SRC_INTERNAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace rollsim::internal {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based stream: the value depends only on the key tuple.
inline std::uint64_t hash_key(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0,
                              std::uint64_t d = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return splitmix64(h ^ d);
}

// Uniform in [0, 1) from the top 53 bits.
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double keyed_gaussian(std::uint64_t seed, std::uint64_t a,
                             std::uint64_t b, std::uint64_t c) {
  const std::uint64_t h = hash_key(seed, a, b, c);
  const double u1 = 1.0 - to_unit(h);  // (0, 1]
  const double u2 = to_unit(splitmix64(h));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Runs fn(row) for every row in [0, rows). Rows are interleaved across
// threads; callers must only write row-local state. The first exception
// thrown by any worker is rethrown.
template <class Fn>
void parallel_rows(int rows, int threads, Fn&& fn) {
  if (threads <= 1 || rows <= 1) {
    for (int y = 0; y < rows; ++y) fn(y);
    return;
  }
  const int n = std::min(threads, rows);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int k = 0; k < n; ++k) {
    pool.emplace_back([&, k] {
      try {
        for (int y = k; y < rows; y += n) fn(y);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline int round_to_int(double v) { return static_cast<int>(std::floor(v + 0.5)); }

}  // namespace rollsim::internal

#endif  // ROLLSIM_SRC_INTERNAL_HPP
