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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "rptrend/bridge.hpp"
#include "rptrend/error.hpp"
#include "rptrend/trend_tests.hpp"
#include "rptrend/trp_sim.hpp"
#include "test_util.hpp"

namespace rptrend {
namespace {

using testing::random_series;
using testing::series_of;

// Direct evaluation of the tied-down path from the definition.
double direct_value(const EventSeries& s, double gamma, double u) {
  const double n = static_cast<double>(s.size());
  double count = 0.0;
  for (double t : s.times()) count += t <= u * s.tau() ? 1.0 : 0.0;
  return (count - u * n) / (gamma * std::sqrt(n));
}

TEST(Bridge, SingleMidpointEvent) {
  const BridgePath p(series_of({5}, 10), 1.0);
  for (double s : {0.0, 0.1, 0.3, 0.49}) EXPECT_NEAR(p(s), -s, 1e-15);
  for (double s : {0.5, 0.6, 0.9, 1.0}) EXPECT_NEAR(p(s), 1 - s, 1e-15);
  EXPECT_NEAR(p.left_limit(0.5), -0.5, 1e-15);
}

TEST(Bridge, MatchesDefinition) {
  Engine rng = make_engine(31);
  for (int rep = 0; rep < 50; ++rep) {
    const EventSeries s = random_series(rng, 1 + uniform_index(rng, 40), 7.0);
    const double gamma = 0.2 + 2 * uniform_open(rng);
    const BridgePath p(s, gamma);
    for (int k = 0; k < 50; ++k) {
      const double u = uniform_open(rng);
      EXPECT_NEAR(p(u), direct_value(s, gamma, u), 1e-12);
    }
    for (double t : s.times()) {
      EXPECT_NEAR(p(t / s.tau()), direct_value(s, gamma, t / s.tau()), 1e-12);
    }
  }
}

TEST(Bridge, TiedDownAtBothEnds) {
  Engine rng = make_engine(32);
  for (int rep = 0; rep < 100; ++rep) {
    const EventSeries s = random_series(rng, 1 + uniform_index(rng, 40), 3.0);
    const BridgePath p(s, 0.7);
    EXPECT_EQ(p(0.0), 0.0);
    EXPECT_NEAR(p(1.0), 0.0, 1e-15);
  }
  // Event exactly at tau still ties down.
  EXPECT_NEAR(BridgePath(series_of({1, 2}, 2), 1.0)(1.0), 0.0, 1e-15);
}

TEST(Bridge, GammaScaling) {
  Engine rng = make_engine(33);
  const EventSeries s = random_series(rng, 25, 4.0);
  const BridgePath a(s, 0.8);
  for (double c : {0.5, 2.0, 7.5}) {
    const BridgePath b(s, 0.8 * c);
    for (double u = 0; u <= 1.0; u += 0.01) EXPECT_NEAR(b(u), a(u) / c, 1e-13);
  }
}

TEST(Bridge, Errors) {
  EXPECT_THROW(BridgePath(series_of({1}, 2), 0.0), ParameterError);
  EXPECT_THROW(BridgePath(series_of({1}, 2), -1.0), ParameterError);
  EXPECT_THROW(BridgePath(series_of({}, 2), 1.0), ParameterError);
  EXPECT_THROW(quad_functional(BridgePath(series_of({1}, 2), 1.0), Functional::l2(), 999),
               ParameterError);
}

TEST(Bridge, VerticesCoverBothSidesOfJumps) {
  const EventSeries s = lhd_series();
  const BridgePath p(s, 1.0);
  const auto v = p.vertices();
  ASSERT_EQ(v.size(), 2 * s.size() + 2);
  EXPECT_EQ(v.front().first, 0.0);
  EXPECT_EQ(v.back().first, 1.0);
  // LHD: early excursion above zero, late excursion below.
  double max_early = -1e9;
  double min_late = 1e9;
  for (const auto& [x, y] : v) {
    if (x < 0.5) max_early = std::max(max_early, y);
    if (x > 0.5) min_late = std::min(min_late, y);
  }
  EXPECT_GT(max_early, 0.0);
  EXPECT_LT(min_late, 0.0);
}

TEST(Quadrature, SignedAreaOfSymmetricPath) {
  const BridgePath p(series_of({5}, 10), 1.0);
  EXPECT_NEAR(quad_functional(p, Functional::signed_area(), 1000), 0.0, 1e-12);
  // Grid quadrature, so O(h^2) error.
  EXPECT_NEAR(quad_functional(p, Functional::l2(), 1000), 1.0 / 12.0, 1e-6);
}

TEST(Quadrature, L2MatchesClosedFormOnLhd) {
  const EventSeries s = lhd_series();
  const double gamma = 0.888;
  EXPECT_NEAR(quad_functional(BridgePath(s, gamma), Functional::l2(), 1'000'000),
              cvm_value(s, gamma), 1e-6);
}

TEST(Quadrature, SupAbsApproachesKsFromBelow) {
  Engine rng = make_engine(34);
  const std::size_t grid = 100'000;
  for (int rep = 0; rep < 20; ++rep) {
    const EventSeries s = random_series(rng, 1 + uniform_index(rng, 60), 1.0);
    const double gamma = 0.5 + uniform_open(rng);
    const double ks = ks_value(s, gamma);
    const double q = quad_functional(BridgePath(s, gamma), Functional::sup_abs(), grid);
    const double slope = std::sqrt(static_cast<double>(s.size())) / gamma;
    EXPECT_LE(q, ks + 1e-12);
    EXPECT_GE(q, ks - slope / static_cast<double>(grid) - 1e-12);
  }
}

// Brownian-bridge variance at s = 1/2 from unit-rate Poisson processes.
TEST(Bridge, MidpointVarianceIsOneQuarter) {
  const TrpModel model{ConstantTrend{1.0}, 1.0};
  const int reps = 20'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  int used = 0;
  for (int r = 0; r < reps; ++r) {
    Engine rng = make_engine(35, {static_cast<std::uint64_t>(r)});
    const EventSeries s = simulate_trp(model, 500.0, rng);
    if (s.empty()) continue;
    const double v = BridgePath(s, 1.0)(0.5);
    sum += v;
    sum_sq += v * v;
    ++used;
  }
  const double m = sum / used;
  const double var = sum_sq / used - m * m;
  EXPECT_NEAR(var, 0.25, 0.25 * 0.05);
}

}  // namespace
}  // namespace rptrend
