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


// One entry point that estimates gamma, computes any statistic and attaches
// a p-value from the requested engine. The CLI and the study harness both go
// through here.

#ifndef RPTREND_ANALYSIS_HPP_
#define RPTREND_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rptrend/estimators.hpp"
#include "rptrend/event_data.hpp"
#include "rptrend/null_dist.hpp"
#include "rptrend/trend_tests.hpp"

namespace rptrend {

struct TestSpec {
  TestKind kind = TestKind::LR;
  double a = 0.5;  // ELR / ELRm split point
  EstimatorMethod estimator = EstimatorMethod::Sample;
  // Multi-process tests: one pooled estimate instead of one per process.
  bool pooled = false;
  Sidedness sided = Sidedness::TwoSided;  // signed statistics only
  CvmWeights weights = CvmWeights::ProportionalTau;
};

enum class PValueMode { Asymptotic, Permutation, MonteCarlo };

std::string_view to_string(PValueMode mode);
// Accepts asymptotic, permutation, mc.
PValueMode pvalue_mode_from_string(std::string_view name);

struct PValueOptions {
  PValueMode mode = PValueMode::Asymptotic;
  std::size_t permutations = 999;
  // Monte Carlo mode: fresh limit table of this size on mc_grid points.
  std::size_t mc_size = 100'000;
  std::size_t mc_grid = 4096;
  std::uint64_t seed = 1;
};

struct AnalysisResult {
  TestResult test;
  // Estimates used: one (single process or pooled) or one per process.
  // Empty for GL, which needs none.
  std::vector<Estimates> estimates;
};

// Estimates for the given test on the given data.
std::vector<Estimates> estimates_for(const MultiProcessData& data, const TestSpec& spec);

// Single-process tests need exactly one process in data. Permutation mode
// re-estimates gamma on every permuted data set. Monte Carlo mode applies
// to KS, CvM, AD and CvMm only.
AnalysisResult run_test(const MultiProcessData& data, const TestSpec& spec,
                        const PValueOptions& options = {});
AnalysisResult run_test(const EventSeries& series, const TestSpec& spec,
                        const PValueOptions& options = {});

// Stable JSON rendering of a result (one object, no trailing newline).
std::string to_json(const AnalysisResult& result);

}  // namespace rptrend

#endif  // RPTREND_ANALYSIS_HPP_
