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

#include "rptrend/null_dist.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "rptrend/error.hpp"

#ifndef RPTREND_BUILD_TABLE_DIR
#define RPTREND_BUILD_TABLE_DIR ""
#endif
#ifndef RPTREND_INSTALL_TABLE_DIR
#define RPTREND_INSTALL_TABLE_DIR ""
#endif

namespace rptrend {

std::string_view to_string(Sidedness sided) {
  switch (sided) {
    case Sidedness::TwoSided: return "two";
    case Sidedness::Greater: return "greater";
    case Sidedness::Less: return "less";
  }
  return "two";
}

Sidedness sidedness_from_string(std::string_view name) {
  if (name == "two") return Sidedness::TwoSided;
  if (name == "greater") return Sidedness::Greater;
  if (name == "less") return Sidedness::Less;
  throw ParameterError("unknown sidedness '" + std::string(name) + "'");
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::numbers::sqrt2);
}

double normal_pvalue(double z, Sidedness sided) {
  switch (sided) {
    case Sidedness::TwoSided: return normal_two_sided_p(z);
    case Sidedness::Greater: return normal_cdf(-z);
    case Sidedness::Less: return normal_cdf(z);
  }
  return normal_two_sided_p(z);
}

double kolmogorov_cdf(double x) {
  if (!(x > 0.0)) return 0.0;
  constexpr double pi = std::numbers::pi;
  if (x < 1.0) {
    // Jacobi theta form; the alternating series converges slowly here.
    const double c = -pi * pi / (8.0 * x * x);
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(c * odd * odd);
      sum += term;
      if (term < 1e-17 * sum || term == 0.0) break;
    }
    return std::sqrt(2.0 * pi) / x * sum;
  }
  double sum = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

// ---------------------------------------------------------------------------

std::string_view to_string(LimitKind kind) {
  switch (kind) {
    case LimitKind::CvM: return "cvm";
    case LimitKind::AD: return "ad";
    case LimitKind::WeightedSum: return "weighted-sum";
    case LimitKind::SupAbs: return "sup-abs";
  }
  return "unknown";
}

LimitTable::LimitTable(LimitKind kind, std::vector<double> weights,
                       std::uint64_t seed, std::size_t grid_n,
                       std::vector<double> draws)
    : kind_(kind),
      weights_(std::move(weights)),
      seed_(seed),
      grid_n_(grid_n),
      draws_(std::move(draws)) {
  if (draws_.empty()) throw ParameterError("limit table must not be empty");
  if (!std::is_sorted(draws_.begin(), draws_.end())) {
    std::sort(draws_.begin(), draws_.end());
  }
}

double LimitTable::upper_pvalue(double statistic) const {
  if (std::isnan(statistic)) throw ParameterError("statistic is NaN");
  const auto first_ge = std::lower_bound(draws_.begin(), draws_.end(), statistic);
  const auto at_least = static_cast<double>(draws_.end() - first_ge);
  return (1.0 + at_least) / (static_cast<double>(draws_.size()) + 1.0);
}

double LimitTable::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile level must be in [0, 1]");
  const double n = static_cast<double>(draws_.size());
  const auto k = static_cast<std::size_t>(std::ceil(p * n));
  return draws_[k == 0 ? 0 : std::min(k - 1, draws_.size() - 1)];
}

double LimitTable::mean() const {
  return std::accumulate(draws_.begin(), draws_.end(), 0.0) /
         static_cast<double>(draws_.size());
}

namespace {

constexpr std::size_t kBlock = 1024;
constexpr double kMaxNormals = 1e12;
constexpr std::size_t kMaxTableSize = 100'000'000;

// Evaluates bridge functionals from cumulative sums Z_k of standard normal
// increments; W(k/n) = Z_k / sqrt(n). Quadratic functionals are expanded so
// no path storage is needed:
//   sum_k c_k (Z_k - s_k Z_n)^2 = sum c Z^2 - 2 Z_n sum c s Z + Z_n^2 sum c s^2.
class BridgeSampler {
 public:
  explicit BridgeSampler(std::size_t grid_n)
      : n_(grid_n), s_(grid_n + 1), w_(grid_n + 1, 0.0), path_(grid_n + 1) {
    const double h = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k <= n_; ++k) s_[k] = static_cast<double>(k) * h;
    for (std::size_t k = 1; k < n_; ++k) {
      w_[k] = 1.0 / (s_[k] * (1.0 - s_[k]));
      cw_s2_ += w_[k] * s_[k] * s_[k];
    }
    for (std::size_t k = 1; k <= n_; ++k) c_s2_ += s_[k] * s_[k];
  }

  double cvm(Engine& rng) {
    double z = 0.0, a = 0.0, b = 0.0;
    for (std::size_t k = 1; k <= n_; ++k) {
      z += normal_(rng);
      a += z * z;
      b += s_[k] * z;
    }
    const double h = 1.0 / static_cast<double>(n_);
    return h * h * (a - 2.0 * z * b + z * z * c_s2_);
  }

  double ad(Engine& rng) {
    double z = 0.0, a = 0.0, b = 0.0;
    for (std::size_t k = 1; k < n_; ++k) {
      z += normal_(rng);
      const double wz = w_[k] * z;
      a += wz * z;
      b += wz * s_[k];
    }
    z += normal_(rng);
    const double h = 1.0 / static_cast<double>(n_);
    return h * h * (a - 2.0 * z * b + z * z * cw_s2_);
  }

  double sup_abs(Engine& rng) {
    double z = 0.0;
    for (std::size_t k = 1; k <= n_; ++k) {
      z += normal_(rng);
      path_[k] = z;
    }
    double best = 0.0;
    for (std::size_t k = 1; k <= n_; ++k) {
      best = std::max(best, std::fabs(path_[k] - s_[k] * z));
    }
    return best / std::sqrt(static_cast<double>(n_));
  }

 private:
  std::size_t n_;
  std::vector<double> s_;
  std::vector<double> w_;
  std::vector<double> path_;
  double c_s2_ = 0.0;
  double cw_s2_ = 0.0;
  boost::random::normal_distribution<double> normal_;
};

constexpr std::array<char, 8> kMagic = {'R', 'P', 'T', 'R', 'L', 'T', 'B', 'L'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void write_le(std::ostream& out, T value) {
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw DataError("truncated limit table");
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  return std::bit_cast<T>(bytes);
}

}  // namespace

LimitTable build_limit_table(LimitKind kind, std::size_t M, std::size_t grid_n,
                             std::uint64_t seed, std::span<const double> weights) {
  if (M < 1000) throw ParameterError("limit table needs M >= 1000");
  if (grid_n < 1000) throw ParameterError("limit table needs grid_n >= 1000");
  if (kind == LimitKind::WeightedSum && weights.empty()) {
    throw ParameterError("weighted-sum table needs weights");
  }
  if (kind != LimitKind::WeightedSum && !weights.empty()) {
    throw ParameterError("weights apply only to weighted-sum tables");
  }
  const double bridges_per_draw =
      kind == LimitKind::WeightedSum ? static_cast<double>(weights.size()) : 1.0;
  if (M > kMaxTableSize ||
      static_cast<double>(M) * static_cast<double>(grid_n) * bridges_per_draw >
          kMaxNormals) {
    throw ResourceError("limit table exceeds the simulation work cap");
  }

  std::vector<double> draws(M);
  const std::size_t blocks = (M + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t block) {
    Engine rng = make_engine(seed, {static_cast<std::uint64_t>(kind), block});
    BridgeSampler sampler(grid_n);
    const std::size_t end = std::min(M, (block + 1) * kBlock);
    for (std::size_t r = block * kBlock; r < end; ++r) {
      switch (kind) {
        case LimitKind::CvM: draws[r] = sampler.cvm(rng); break;
        case LimitKind::AD: draws[r] = sampler.ad(rng); break;
        case LimitKind::SupAbs: draws[r] = sampler.sup_abs(rng); break;
        case LimitKind::WeightedSum: {
          double sum = 0.0;
          for (double w : weights) sum += w * sampler.cvm(rng);
          draws[r] = sum;
          break;
        }
      }
    }
  });
  std::sort(draws.begin(), draws.end());
  return LimitTable(kind, std::vector<double>(weights.begin(), weights.end()), seed,
                    grid_n, std::move(draws));
}

LimitTable weighted_sum_from_table(const LimitTable& cvm, std::span<const double> weights,
                                   std::size_t M, std::uint64_t seed) {
  if (cvm.kind() != LimitKind::CvM) {
    throw ParameterError("weighted sums are drawn from a CvM table");
  }
  if (weights.empty()) throw ParameterError("weighted-sum table needs weights");
  if (M < 1000) throw ParameterError("limit table needs M >= 1000");
  if (M > kMaxTableSize) throw ResourceError("limit table exceeds the size cap");
  const auto base = cvm.draws();
  std::vector<double> draws(M);
  const std::size_t blocks = (M + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t block) {
    Engine rng = make_engine(seed, {static_cast<std::uint64_t>(LimitKind::WeightedSum), block});
    const std::size_t end = std::min(M, (block + 1) * kBlock);
    for (std::size_t r = block * kBlock; r < end; ++r) {
      double sum = 0.0;
      for (double w : weights) sum += w * base[uniform_index(rng, base.size())];
      draws[r] = sum;
    }
  });
  return LimitTable(LimitKind::WeightedSum,
                    std::vector<double>(weights.begin(), weights.end()), seed,
                    cvm.grid_n(), std::move(draws));
}

double limit_pvalue(const LimitTable& table, double statistic) {
  return table.upper_pvalue(statistic);
}

void save_limit_table(const LimitTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write limit table '" + path.string() + "'");
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kFormatVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.kind()));
  write_le<std::uint64_t>(out, table.size());
  write_le<std::uint64_t>(out, table.grid_n());
  write_le<std::uint64_t>(out, table.seed());
  write_le<std::uint64_t>(out, table.weights().size());
  for (double w : table.weights()) write_le<double>(out, w);
  for (double d : table.draws()) write_le<double>(out, d);
  if (!out) throw Error("failed writing limit table '" + path.string() + "'");
}

LimitTable load_limit_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open limit table '" + path.string() + "'");
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw DataError("not a limit table: '" + path.string() + "'");
  const auto version = read_le<std::uint32_t>(in);
  if (version != kFormatVersion) {
    throw DataError("unsupported limit table version " + std::to_string(version));
  }
  const auto kind = static_cast<LimitKind>(read_le<std::uint32_t>(in));
  const auto m = read_le<std::uint64_t>(in);
  const auto grid_n = read_le<std::uint64_t>(in);
  const auto seed = read_le<std::uint64_t>(in);
  const auto n_weights = read_le<std::uint64_t>(in);
  if (m == 0 || m > kMaxTableSize || n_weights > 1'000'000) {
    throw DataError("corrupt limit table header");
  }
  std::vector<double> weights(n_weights);
  for (auto& w : weights) w = read_le<double>(in);
  std::vector<double> draws(m);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(draws.data()),
            static_cast<std::streamsize>(m * sizeof(double)));
    if (!in) throw DataError("truncated limit table");
  } else {
    for (auto& d : draws) d = read_le<double>(in);
  }
  return LimitTable(kind, std::move(weights), seed, grid_n, std::move(draws));
}

std::uint64_t shipped_table_seed(LimitKind kind) {
  return 0x7E4D5EED00000000ULL + static_cast<std::uint64_t>(kind);
}

std::string_view shipped_table_filename(LimitKind kind) {
  switch (kind) {
    case LimitKind::CvM: return "cvm.rplt";
    case LimitKind::AD: return "ad.rplt";
    case LimitKind::SupAbs: return "sup_abs.rplt";
    case LimitKind::WeightedSum: break;
  }
  throw ParameterError("no shipped table for weighted sums");
}

std::vector<std::filesystem::path> table_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("RPTREND_TABLE_DIR"); env && *env) {
    dirs.emplace_back(env);
  }
  if (*RPTREND_BUILD_TABLE_DIR) dirs.emplace_back(RPTREND_BUILD_TABLE_DIR);
  if (*RPTREND_INSTALL_TABLE_DIR) dirs.emplace_back(RPTREND_INSTALL_TABLE_DIR);
  return dirs;
}

const LimitTable& shipped_limit_table(LimitKind kind) {
  static std::mutex mutex;
  static std::map<LimitKind, std::unique_ptr<LimitTable>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(kind); it != cache.end()) return *it->second;
  const std::string_view name = shipped_table_filename(kind);
  for (const auto& dir : table_search_path()) {
    const auto path = dir / name;
    if (std::filesystem::exists(path)) {
      auto table = std::make_unique<LimitTable>(load_limit_table(path));
      if (table->kind() != kind) {
        throw DataError("limit table '" + path.string() + "' has the wrong kind");
      }
      return *cache.emplace(kind, std::move(table)).first->second;
    }
  }
  throw ResourceError("limit table '" + std::string(name) +
                      "' not found; build it with `rptrend tables` or set "
                      "RPTREND_TABLE_DIR");
}

// ---------------------------------------------------------------------------

Tail tail_for(Sidedness sided) {
  switch (sided) {
    case Sidedness::TwoSided: return Tail::Absolute;
    case Sidedness::Greater: return Tail::Upper;
    case Sidedness::Less: return Tail::Lower;
  }
  return Tail::Absolute;
}

namespace {

void shuffle(std::vector<double>& xs, Engine& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    std::swap(xs[i - 1], xs[uniform_index(rng, i)]);
  }
}

bool at_least_as_extreme(double replicate, double observed, Tail tail) {
  const double tol = 1e-12 * std::max(1.0, std::fabs(observed));
  switch (tail) {
    case Tail::Upper: return replicate >= observed - tol;
    case Tail::Lower: return replicate <= observed + tol;
    case Tail::Absolute: return std::fabs(replicate) >= std::fabs(observed) - tol;
  }
  return false;
}

// Same reconstruction path as the replicates, so ties compare exactly.
EventSeries rebuild(const EventSeries& series) {
  return series_from_gaps(interevent_times(series).complete, series.tau());
}

MultiProcessData rebuild(const MultiProcessData& data) {
  std::vector<Process> out;
  out.reserve(data.size());
  for (const auto& p : data.processes()) out.push_back({p.id, rebuild(p.series)});
  return MultiProcessData(std::move(out));
}

template <typename Data, typename Statistic>
double permutation_impl(const Data& data, const Statistic& statistic, Tail tail,
                        std::size_t B, std::uint64_t seed) {
  if (B < 99) throw ParameterError("permutation test needs B >= 99");
  const double observed = statistic(rebuild(data));
  std::vector<char> extreme(B, 0);
  parallel_for(B, [&](std::size_t b) {
    Engine rng = make_engine(seed, {b});
    extreme[b] = at_least_as_extreme(statistic(permute_gaps(data, rng)), observed, tail);
  });
  const auto count = static_cast<double>(std::count(extreme.begin(), extreme.end(), 1));
  return (1.0 + count) / (static_cast<double>(B) + 1.0);
}

}  // namespace

EventSeries permute_gaps(const EventSeries& series, Engine& rng) {
  Gaps gaps = interevent_times(series);
  shuffle(gaps.complete, rng);
  return series_from_gaps(gaps.complete, series.tau());
}

MultiProcessData permute_gaps(const MultiProcessData& data, Engine& rng) {
  std::vector<Process> out;
  out.reserve(data.size());
  for (const auto& p : data.processes()) out.push_back({p.id, permute_gaps(p.series, rng)});
  return MultiProcessData(std::move(out));
}

double permutation_pvalue(const EventSeries& series, const SeriesStatistic& statistic,
                          Tail tail, std::size_t B, std::uint64_t seed) {
  if (series.size() < 2) {
    throw UndefinedStatistic("permutation test needs at least 2 complete gaps");
  }
  return permutation_impl(series, statistic, tail, B, seed);
}

double permutation_pvalue(const MultiProcessData& data, const DataStatistic& statistic,
                          Tail tail, std::size_t B, std::uint64_t seed) {
  const bool any = std::any_of(data.processes().begin(), data.processes().end(),
                               [](const Process& p) { return p.series.size() >= 2; });
  if (!any) throw UndefinedStatistic("permutation test needs a process with 2 gaps");
  return permutation_impl(data, statistic, tail, B, seed);
}

}  // namespace rptrend
