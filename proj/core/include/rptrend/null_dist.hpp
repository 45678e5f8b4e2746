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

// p-value engines: the normal tail, the Kolmogorov distribution, Monte Carlo
// tables of Brownian bridge functionals, and gap-permutation tests.

#ifndef RPTREND_NULL_DIST_HPP_
#define RPTREND_NULL_DIST_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rptrend/event_data.hpp"
#include "rptrend/random.hpp"

namespace rptrend {

enum class Sidedness { TwoSided, Greater, Less };

std::string_view to_string(Sidedness sided);
Sidedness sidedness_from_string(std::string_view name);

double normal_cdf(double z);

// 2 (1 - Phi(|z|)).
double normal_two_sided_p(double z);

// Greater: 1 - Phi(z); Less: Phi(z).
double normal_pvalue(double z, Sidedness sided);

// P(sup |W0| <= x) for a Brownian bridge W0.
double kolmogorov_cdf(double x);

// ---------------------------------------------------------------------------
// Monte Carlo limit tables

enum class LimitKind : std::uint32_t {
  CvM = 1,          // int_0^1 W0(s)^2 ds
  AD = 2,           // int_0^1 W0(s)^2 / (s (1 - s)) ds
  WeightedSum = 3,  // sum_j w_j CvM_j over independent bridges
  SupAbs = 4,       // sup |W0(s)|
};

std::string_view to_string(LimitKind kind);

// Sorted Monte Carlo sample of a limit functional, tagged with everything
// needed to regenerate it.
class LimitTable {
 public:
  LimitTable(LimitKind kind, std::vector<double> weights, std::uint64_t seed,
             std::size_t grid_n, std::vector<double> draws);

  LimitKind kind() const noexcept { return kind_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t grid_n() const noexcept { return grid_n_; }
  std::size_t size() const noexcept { return draws_.size(); }
  std::span<const double> draws() const noexcept { return draws_; }

  // (1 + #{draws >= statistic}) / (M + 1).
  double upper_pvalue(double statistic) const;

  // Empirical quantile (type 1) for p in [0, 1].
  double quantile(double p) const;
  double mean() const;

  friend bool operator==(const LimitTable&, const LimitTable&) = default;

 private:
  LimitKind kind_;
  std::vector<double> weights_;
  std::uint64_t seed_;
  std::size_t grid_n_;
  std::vector<double> draws_;
};

// Simulates M bridges on grid_n points from Gaussian Wiener increments tied
// down by W0(s) = W(s) - s W(1), and evaluates the functional by a Riemann
// sum over the grid nodes (AD over s in [1/grid_n, 1 - 1/grid_n]).
// Deterministic given the arguments, independent of thread count. Requires
// M >= 1000 and grid_n >= 1000; throws ResourceError beyond the work cap.
LimitTable build_limit_table(LimitKind kind, std::size_t M, std::size_t grid_n,
                             std::uint64_t seed,
                             std::span<const double> weights = {});

// Sum_j w_j C_j with C_j drawn independently (with replacement) from a CvM
// table. Cheap stand-in for a WeightedSum table with the same grid.
LimitTable weighted_sum_from_table(const LimitTable& cvm, std::span<const double> weights,
                                   std::size_t M, std::uint64_t seed);

double limit_pvalue(const LimitTable& table, double statistic);

// Versioned little-endian binary format: magic, version, kind, M, grid_n,
// seed, weight count, weights, draws.
void save_limit_table(const LimitTable& table, const std::filesystem::path& path);
LimitTable load_limit_table(const std::filesystem::path& path);

inline constexpr std::size_t kShippedTableSize = 1'000'000;
inline constexpr std::size_t kShippedTableGrid = std::size_t{1} << 14;
std::uint64_t shipped_table_seed(LimitKind kind);
std::string_view shipped_table_filename(LimitKind kind);

// Directories searched for shipped tables, in order: $RPTREND_TABLE_DIR, the
// build tree, the install prefix.
std::vector<std::filesystem::path> table_search_path();

// Shipped CvM / AD / SupAbs table, loaded once and cached. Throws
// ResourceError when the table file cannot be found.
const LimitTable& shipped_limit_table(LimitKind kind);

// ---------------------------------------------------------------------------
// Permutation tests

enum class Tail { Upper, Lower, Absolute };

// Maps a sidedness on a signed statistic to the tail compared against.
Tail tail_for(Sidedness sided);

using SeriesStatistic = std::function<double(const EventSeries&)>;
using DataStatistic = std::function<double(const MultiProcessData&)>;

// Shuffles the complete gaps (the censored remainder stays last), rebuilds
// the event times and recomputes the statistic B times. Returns
// (1 + #{replicates at least as extreme}) / (B + 1). Requires B >= 99 and at
// least two complete gaps. The statistic must be safe to call concurrently.
double permutation_pvalue(const EventSeries& series, const SeriesStatistic& statistic,
                          Tail tail, std::size_t B, std::uint64_t seed);

// Multi-process version: gaps are shuffled within each process
// independently.
double permutation_pvalue(const MultiProcessData& data, const DataStatistic& statistic,
                          Tail tail, std::size_t B, std::uint64_t seed);

// Permutes the complete gaps of every process with one engine; exposed so
// tests can check the construction.
MultiProcessData permute_gaps(const MultiProcessData& data, Engine& rng);
EventSeries permute_gaps(const EventSeries& series, Engine& rng);

}  // namespace rptrend

#endif  // RPTREND_NULL_DIST_HPP_
