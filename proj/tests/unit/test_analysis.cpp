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

#include <nlohmann/json.hpp>

#include "rptrend/analysis.hpp"
#include "rptrend/error.hpp"
#include "rptrend/trp_sim.hpp"

namespace rptrend {
namespace {

MultiProcessData three_processes() {
  std::vector<Process> procs;
  for (int j = 0; j < 3; ++j) {
    procs.push_back({"p" + std::to_string(j),
                     simulate_trp({PowerLaw{1.2}, 1.5}, 40.0, 300 + j)});
  }
  return MultiProcessData(std::move(procs));
}

TEST(Analysis, MatchesDirectCalls) {
  const EventSeries s = lhd_series();
  const Estimates est = sample_estimates(s);
  EXPECT_DOUBLE_EQ(run_test(s, {TestKind::LR}).test.statistic, lr_statistic(s, est).statistic);
  EXPECT_DOUBLE_EQ(run_test(s, {TestKind::KS}).test.p_value, ks_statistic(s, est).p_value);
  EXPECT_DOUBLE_EQ(run_test(s, {TestKind::CvM}).test.p_value, cvm_statistic(s, est).p_value);
  TestSpec elr{TestKind::ELR};
  elr.a = 0.3;
  EXPECT_DOUBLE_EQ(run_test(s, elr).test.statistic,
                   elr_statistic(s, est, ElrConfig{0.3}).statistic);
  TestSpec cens{TestKind::AD};
  cens.estimator = EstimatorMethod::CensoredAware;
  EXPECT_DOUBLE_EQ(run_test(s, cens).test.statistic,
                   ad_statistic(s, censored_estimates(s)).statistic);
}

TEST(Analysis, MultiProcessEstimates) {
  const MultiProcessData d = three_processes();
  TestSpec lrm{TestKind::LRm};
  EXPECT_EQ(estimates_for(d, lrm).size(), 3u);
  lrm.pooled = true;
  const auto pooled = estimates_for(d, lrm);
  ASSERT_EQ(pooled.size(), 1u);
  EXPECT_DOUBLE_EQ(run_test(d, lrm).test.statistic, lr_multi_value(d, pooled));
  EXPECT_TRUE(estimates_for(d, {TestKind::GL}).empty());
  EXPECT_DOUBLE_EQ(run_test(d, {TestKind::GL}).test.statistic,
                   gl_statistic(d).statistic);
}

TEST(Analysis, ShapeErrors) {
  const MultiProcessData d = three_processes();
  EXPECT_THROW(run_test(d, {TestKind::LR}), ParameterError);
  PValueOptions mc;
  mc.mode = PValueMode::MonteCarlo;
  mc.mc_size = 2000;
  mc.mc_grid = 1000;
  EXPECT_THROW(run_test(lhd_series(), {TestKind::LR}, mc), ParameterError);
  EXPECT_THROW(run_test(lhd_series(), {TestKind::ELR}, mc), ParameterError);
  EXPECT_NO_THROW(run_test(lhd_series(), {TestKind::KS}, mc));
  EXPECT_EQ(run_test(lhd_series(), {TestKind::CvM}, mc).test.p_method,
            PMethod::MonteCarloLimit);
}

TEST(Analysis, PermutationMode) {
  PValueOptions perm;
  perm.mode = PValueMode::Permutation;
  perm.permutations = 199;
  perm.seed = 3;
  const AnalysisResult a = run_test(lhd_series(), {TestKind::LR}, perm);
  const AnalysisResult b = run_test(lhd_series(), {TestKind::LR}, perm);
  EXPECT_EQ(a.test.p_method, PMethod::Permutation);
  EXPECT_DOUBLE_EQ(a.test.p_value, b.test.p_value);
  EXPECT_GE(a.test.p_value, 1.0 / 200.0);
  EXPECT_LE(a.test.p_value, 1.0);
  // Permutation needs no limit law, so the multi-process tests work too.
  EXPECT_NO_THROW(run_test(three_processes(), {TestKind::LRm}, perm));
}

TEST(Analysis, ModeNames) {
  for (PValueMode m : {PValueMode::Asymptotic, PValueMode::Permutation, PValueMode::MonteCarlo}) {
    EXPECT_EQ(pvalue_mode_from_string(to_string(m)), m);
  }
  EXPECT_THROW(pvalue_mode_from_string("bootstrap"), ParameterError);
}

TEST(Analysis, JsonShape) {
  TestSpec spec{TestKind::ELR};
  const auto j = nlohmann::json::parse(to_json(run_test(lhd_series(), spec)));
  EXPECT_EQ(j.at("test"), "elr");
  EXPECT_DOUBLE_EQ(j.at("a").get<double>(), 0.5);
  EXPECT_EQ(j.at("p_method"), to_string(PMethod::AsymptoticNormal));
  EXPECT_EQ(j.at("sidedness"), "two");
  EXPECT_EQ(j.at("n_effective"), 36);
  EXPECT_TRUE(j.at("warnings").is_array());
  ASSERT_EQ(j.at("estimates").size(), 1u);
  EXPECT_NEAR(j.at("estimates")[0].at("sigma").get<double>(), 48.61, 0.01);

  const auto k = nlohmann::json::parse(to_json(run_test(lhd_series(), {TestKind::KS})));
  EXPECT_TRUE(k.at("a").is_null());
  EXPECT_TRUE(k.at("sidedness").is_null());
}

}  // namespace
}  // namespace rptrend
