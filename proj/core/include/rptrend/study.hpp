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


// Level and power studies: simulate many data sets from a TRP design, run a
// set of tests on each at level alpha and report rejection proportions.

#ifndef RPTREND_STUDY_HPP_
#define RPTREND_STUDY_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rptrend/estimators.hpp"
#include "rptrend/null_dist.hpp"
#include "rptrend/trend_tests.hpp"
#include "rptrend/trp_sim.hpp"

namespace rptrend {

// Grid meaning per scenario:
//   LevelRP         expected number of events (constant unit trend)
//   PowerMonotonic  power-law exponent b, tau = expected_n^(1/b)
//   PowerBathtub    bathtub height c, equal phases of expected_n events each
//   MultiProcess    power-law exponent b shared by `processes` processes
enum class Scenario { LevelRP, PowerMonotonic, PowerBathtub, MultiProcess };

std::string_view to_string(Scenario scenario);
// Accepts level, monotonic, bathtub, multi.
Scenario scenario_from_string(std::string_view name);

struct StudyConfig {
  Scenario scenario = Scenario::LevelRP;
  std::vector<double> shapes{0.75, 1.5};  // Weibull renewal shapes
  std::vector<double> grid;
  std::vector<TestKind> tests;
  std::size_t replications = 10'000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  double expected_n = 30.0;  // unused by LevelRP
  std::size_t processes = 5;  // MultiProcess only
  EstimatorMethod estimator = EstimatorMethod::Sample;
  bool pooled = false;  // multi-process tests: one pooled gamma
  double elr_a = 0.5;
  CvmWeights cvm_weights = CvmWeights::ProportionalTau;
  // Wall-clock budget in seconds; 0 means unlimited. Checked between grid
  // points, so one grid point may overrun it.
  double max_seconds = 0.0;
  // Limit tables; the shipped ones when null.
  const LimitTable* cvm_table = nullptr;
  const LimitTable* ad_table = nullptr;
};

// Default grid and tests for a scenario.
std::vector<double> default_grid(Scenario scenario);
std::vector<TestKind> default_tests(Scenario scenario);
double default_expected_n(Scenario scenario);

// Throws ParameterError on R < 100, alpha outside (0, 1), unknown or
// mismatched tests (single-process tests in MultiProcess and vice versa).
void validate(const StudyConfig& cfg);

struct StudyCell {
  double shape = 0.0;
  double grid_value = 0.0;
  TestKind test = TestKind::LR;
  std::size_t rejections = 0;
  std::size_t replications = 0;
  // Replicates where the test was undefined (too few events, estimator
  // failure); counted as non-rejections.
  std::size_t undefined = 0;

  double proportion() const;
  double standard_error() const;  // sqrt(p (1 - p) / R)

  friend bool operator==(const StudyCell&, const StudyCell&) = default;
};

struct StudyResult {
  Scenario scenario = Scenario::LevelRP;
  std::vector<StudyCell> cells;  // shape-major, then grid, then test
  std::size_t grid_points_total = 0;
  std::size_t grid_points_done = 0;
  bool partial() const { return grid_points_done < grid_points_total; }

  friend bool operator==(const StudyResult&, const StudyResult&) = default;
};

// Replicate r at grid point (shape i, grid g) uses stream (seed, i, g, r),
// so results do not depend on thread count.
StudyResult run_study(const StudyConfig& cfg);

// Tidy CSV: scenario,shape,grid_value,test,rejection,se,replications,undefined
void write_study_csv(std::ostream& out, const StudyResult& result);
std::string study_summary_json(const StudyConfig& cfg, const StudyResult& result);

// Writes <dir>/study_<scenario>.csv and <dir>/study_<scenario>.json,
// creating dir if needed. Throws ResourceError on I/O failure.
void emit_results(const StudyConfig& cfg, const StudyResult& result,
                  const std::filesystem::path& dir);

}  // namespace rptrend

#endif  // RPTREND_STUDY_HPP_
