// Copyright 2026 The rptrend Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Deterministic random streams and a small parallel-for helper.
//
// Every Monte Carlo loop in the library derives one engine per work item
// from (seed, index...) so results do not depend on thread count or
// scheduling order.

#ifndef RPTREND_RANDOM_HPP_
#define RPTREND_RANDOM_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rptrend {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Mixes a base seed with a sequence of indices into one 64-bit stream seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t i : path) h = splitmix64(h ^ splitmix64(i + 0x632BE59BD9B4E019ULL));
  return h;
}

inline Engine make_engine(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path = {}) {
  return Engine(stream_seed(seed, path));
}

// Uniform on the open interval (0, 1) from the top 53 bits.
inline double uniform_open(Engine& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Uniform integer in [0, n) by Lemire's multiply-shift with rejection.
__extension__ using uint128 = unsigned __int128;

inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n) {
  uint128 m = static_cast<uint128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<uint128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Weibull(shape, scale) by inversion.
inline double weibull_draw(Engine& rng, double shape, double scale) {
  return scale * std::pow(-std::log(uniform_open(rng)), 1.0 / shape);
}

// Scale giving a Weibull distribution with mean one.
inline double unit_mean_weibull_scale(double shape) {
  return 1.0 / std::tgamma(1.0 + 1.0 / shape);
}

// Number of worker threads used by parallel loops; 0 means hardware
// concurrency. Set once at startup (not synchronized).
void set_worker_threads(std::size_t n);
std::size_t worker_threads();

// Calls body(i) for i in [0, count) on the worker pool. body must be safe to
// call concurrently for distinct i. The first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body&& body);

}  // namespace rptrend

#include "rptrend/detail/parallel.hpp"

#endif  // RPTREND_RANDOM_HPP_
