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


#include "rptrend/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rptrend/error.hpp"
#include "rptrend/random.hpp"

namespace rptrend {

namespace {

enum Outcome : std::uint8_t { kAccept = 0, kReject = 1, kUndefined = 2 };

struct Design {
  TrendFunction trend;
  double tau = 0.0;
};

Design design_for(Scenario scenario, double value, double expected_n) {
  switch (scenario) {
    case Scenario::LevelRP:
      if (!(value > 0.0)) throw ParameterError("expected counts must be positive");
      return {ConstantTrend{1.0}, value};
    case Scenario::PowerMonotonic:
    case Scenario::MultiProcess: {
      if (!(value > 0.0)) throw ParameterError("power-law b must be positive");
      const PowerLaw p{value};
      return {p, tau_for_expected(p, expected_n)};
    }
    case Scenario::PowerBathtub: {
      const Bathtub bt = bathtub_equal_phases(value, expected_n);
      return {bt, bt.tau};
    }
  }
  throw ParameterError("unknown scenario");
}

// Tables shared by every replicate; CvMm tables are indexed by the number of
// retained processes (equal tau makes the weights 1/k).
struct Tables {
  const LimitTable* cvm = nullptr;
  const LimitTable* ad = nullptr;
  std::map<std::size_t, LimitTable> cvm_sums;
  CvmMultiOptions cvmm;
};

bool uses(const StudyConfig& cfg, TestKind kind) {
  return std::find(cfg.tests.begin(), cfg.tests.end(), kind) != cfg.tests.end();
}

Tables prepare_tables(const StudyConfig& cfg) {
  Tables t;
  if (uses(cfg, TestKind::CvM) || uses(cfg, TestKind::CvMm)) {
    t.cvm = cfg.cvm_table ? cfg.cvm_table : &shipped_limit_table(LimitKind::CvM);
  }
  if (uses(cfg, TestKind::AD)) {
    t.ad = cfg.ad_table ? cfg.ad_table : &shipped_limit_table(LimitKind::AD);
  }
  if (uses(cfg, TestKind::CvMm)) {
    for (std::size_t k = 2; k <= cfg.processes && k < t.cvmm.normal_from; ++k) {
      const std::vector<double> w(k, 1.0 / static_cast<double>(k));
      t.cvm_sums.emplace(k, weighted_sum_from_table(*t.cvm, w, t.cvmm.mc_size, t.cvmm.seed));
    }
  }
  return t;
}

double two_sided(double z) { return normal_pvalue(z, Sidedness::TwoSided); }

double single_pvalue(TestKind kind, const EventSeries& s, double gamma, const StudyConfig& cfg,
                     const Tables& tables) {
  switch (kind) {
    case TestKind::LR:
      return two_sided(lr_value(s, gamma));
    case TestKind::KS:
      return 1.0 - kolmogorov_cdf(ks_value(s, gamma));
    case TestKind::CvM:
      return limit_pvalue(*tables.cvm, cvm_value(s, gamma));
    case TestKind::AD:
      return limit_pvalue(*tables.ad, ad_value(s, gamma));
    case TestKind::ELR:
      return two_sided(elr_value(s, gamma, ElrConfig{cfg.elr_a}));
    default:
      throw ParameterError("not a single-process test");
  }
}

double multi_pvalue(TestKind kind, const MultiProcessData& d, std::span<const Estimates> ests,
                    const StudyConfig& cfg, const Tables& tables) {
  switch (kind) {
    case TestKind::LRm:
      return two_sided(lr_multi_value(d, ests));
    case TestKind::ELRm:
      return two_sided(elr_multi_value(d, ests, ElrConfig{cfg.elr_a}));
    case TestKind::GL:
      return two_sided(gl_value(d));
    case TestKind::CvMm: {
      const double stat = cvm_multi_value(d, ests, CvmWeights::ProportionalTau);
      std::size_t k = 0;
      for (const auto& p : d.processes()) k += p.series.empty() ? 0 : 1;
      if (k >= tables.cvmm.normal_from) {
        const double z = (stat - 1.0 / 6.0) / std::sqrt(1.0 / (45.0 * static_cast<double>(k)));
        return normal_pvalue(z, Sidedness::Greater);
      }
      if (k == 1) return limit_pvalue(*tables.cvm, stat);
      return limit_pvalue(tables.cvm_sums.at(k), stat);
    }
    default:
      throw ParameterError("not a multi-process test");
  }
}

void run_replicate(const StudyConfig& cfg, const Design& design, double shape,
                   const Tables& tables, Engine& rng, std::span<std::uint8_t> out) {
  const TrpModel model{design.trend, shape};
  auto decide = [&](std::size_t t, auto&& pvalue) {
    try {
      out[t] = pvalue() <= cfg.alpha ? kReject : kAccept;
    } catch (const Error&) {
      out[t] = kUndefined;
    }
  };

  if (cfg.scenario != Scenario::MultiProcess) {
    const EventSeries s = simulate_trp(model, design.tau, rng);
    std::optional<Estimates> est;
    try {
      est = estimate(s, cfg.estimator);
    } catch (const Error&) {
    }
    for (std::size_t t = 0; t < cfg.tests.size(); ++t) {
      if (!est) {
        out[t] = kUndefined;
        continue;
      }
      decide(t, [&] { return single_pvalue(cfg.tests[t], s, est->gamma, cfg, tables); });
    }
    return;
  }

  std::vector<Process> procs;
  procs.reserve(cfg.processes);
  for (std::size_t j = 0; j < cfg.processes; ++j) {
    procs.push_back({std::to_string(j + 1), simulate_trp(model, design.tau, rng)});
  }
  const MultiProcessData d(std::move(procs));
  std::vector<Estimates> ests;
  bool have_estimates = true;
  try {
    if (cfg.pooled) {
      ests.push_back(estimate_pooled(d, cfg.estimator));
    } else {
      for (const auto& p : d.processes()) {
        ests.push_back(p.series.empty() ? Estimates{} : estimate(p.series, cfg.estimator));
      }
    }
  } catch (const Error&) {
    have_estimates = false;
  }
  for (std::size_t t = 0; t < cfg.tests.size(); ++t) {
    const TestKind kind = cfg.tests[t];
    if (!have_estimates && kind != TestKind::GL) {
      out[t] = kUndefined;
      continue;
    }
    decide(t, [&] { return multi_pvalue(kind, d, ests, cfg, tables); });
  }
}

std::string format_number(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::LevelRP:
      return "level";
    case Scenario::PowerMonotonic:
      return "monotonic";
    case Scenario::PowerBathtub:
      return "bathtub";
    case Scenario::MultiProcess:
      return "multi";
  }
  return "?";
}

Scenario scenario_from_string(std::string_view name) {
  if (name == "level") return Scenario::LevelRP;
  if (name == "monotonic") return Scenario::PowerMonotonic;
  if (name == "bathtub") return Scenario::PowerBathtub;
  if (name == "multi") return Scenario::MultiProcess;
  throw ParameterError("unknown scenario '" + std::string(name) + "'");
}

std::vector<double> default_grid(Scenario scenario) {
  switch (scenario) {
    case Scenario::LevelRP:
      return {10, 20, 30, 40, 50, 60};
    case Scenario::PowerMonotonic:
      return {0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4};
    case Scenario::PowerBathtub:
      return {0, 1, 2, 4, 6, 8, 10};
    case Scenario::MultiProcess:
      return {0.8, 0.9, 1.0, 1.1, 1.2};
  }
  return {};
}

std::vector<TestKind> default_tests(Scenario scenario) {
  switch (scenario) {
    case Scenario::LevelRP:
    case Scenario::PowerBathtub:
      return {TestKind::LR, TestKind::KS, TestKind::AD, TestKind::ELR};
    case Scenario::PowerMonotonic:
      return {TestKind::LR, TestKind::KS, TestKind::CvM, TestKind::AD};
    case Scenario::MultiProcess:
      return {TestKind::LRm, TestKind::CvMm, TestKind::GL};
  }
  return {};
}

double default_expected_n(Scenario scenario) {
  switch (scenario) {
    case Scenario::LevelRP:
    case Scenario::PowerMonotonic:
      return 30.0;
    case Scenario::PowerBathtub:
    case Scenario::MultiProcess:
      return 20.0;
  }
  return 30.0;
}

void validate(const StudyConfig& cfg) {
  if (cfg.replications < 100) throw ParameterError("a study needs at least 100 replications");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
  if (cfg.shapes.empty()) throw ParameterError("no Weibull shapes given");
  for (double b : cfg.shapes) {
    if (!(b > 0.0)) throw ParameterError("Weibull shapes must be positive");
  }
  if (cfg.tests.empty()) throw ParameterError("no tests given");
  if (cfg.scenario != Scenario::LevelRP && !(cfg.expected_n > 0.0)) {
    throw ParameterError("expected count must be positive");
  }
  if (!(cfg.elr_a >= 0.0 && cfg.elr_a <= 1.0)) throw ParameterError("ELR a must be in [0, 1]");
  const bool multi = cfg.scenario == Scenario::MultiProcess;
  if (multi && cfg.processes < 1) throw ParameterError("need at least one process");
  for (TestKind t : cfg.tests) {
    if (is_multi_process(t) != multi) {
      throw ParameterError("test '" + std::string(to_string(t)) + "' does not fit scenario '" +
                           std::string(to_string(cfg.scenario)) + "'");
    }
  }
  if (multi && uses(cfg, TestKind::CvMm) && cfg.cvm_weights != CvmWeights::ProportionalTau) {
    throw ParameterError("studies support the cvmm test with tau weights only");
  }
}

double StudyCell::proportion() const {
  return replications == 0 ? 0.0
                           : static_cast<double>(rejections) / static_cast<double>(replications);
}

double StudyCell::standard_error() const {
  if (replications == 0) return 0.0;
  const double p = proportion();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(replications));
}

StudyResult run_study(const StudyConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const Tables tables = prepare_tables(cfg);
  const std::size_t R = cfg.replications;
  const std::size_t T = cfg.tests.size();

  StudyResult result;
  result.scenario = cfg.scenario;
  result.grid_points_total = cfg.shapes.size() * cfg.grid.size();
  std::vector<std::uint8_t> outcomes(R * T);

  for (std::size_t i = 0; i < cfg.shapes.size(); ++i) {
    for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
      if (cfg.max_seconds > 0.0) {
        const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
        if (spent.count() > cfg.max_seconds) return result;
      }
      const Design design = design_for(cfg.scenario, cfg.grid[g], cfg.expected_n);
      parallel_for(R, [&](std::size_t r) {
        Engine rng = make_engine(cfg.seed, {i, g, r});
        run_replicate(cfg, design, cfg.shapes[i], tables, rng,
                      std::span<std::uint8_t>(outcomes).subspan(r * T, T));
      });
      for (std::size_t t = 0; t < T; ++t) {
        StudyCell cell;
        cell.shape = cfg.shapes[i];
        cell.grid_value = cfg.grid[g];
        cell.test = cfg.tests[t];
        cell.replications = R;
        for (std::size_t r = 0; r < R; ++r) {
          const std::uint8_t o = outcomes[r * T + t];
          cell.rejections += o == kReject;
          cell.undefined += o == kUndefined;
        }
        result.cells.push_back(cell);
      }
      ++result.grid_points_done;
    }
  }
  return result;
}

void write_study_csv(std::ostream& out, const StudyResult& result) {
  out << "scenario,shape,grid_value,test,rejection,se,replications,undefined\n";
  for (const StudyCell& c : result.cells) {
    out << to_string(result.scenario) << ',' << format_number(c.shape) << ','
        << format_number(c.grid_value) << ',' << to_string(c.test) << ','
        << format_number(c.proportion()) << ',' << format_number(c.standard_error()) << ','
        << c.replications << ',' << c.undefined << '\n';
  }
}

std::string study_summary_json(const StudyConfig& cfg, const StudyResult& result) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json c;
  c["scenario"] = to_string(cfg.scenario);
  c["shapes"] = cfg.shapes;
  c["grid"] = cfg.grid;
  auto tests = nlohmann::ordered_json::array();
  for (TestKind t : cfg.tests) tests.push_back(to_string(t));
  c["tests"] = tests;
  c["replications"] = cfg.replications;
  c["alpha"] = cfg.alpha;
  c["seed"] = cfg.seed;
  c["expected_n"] = cfg.expected_n;
  c["processes"] = cfg.processes;
  c["estimator"] = to_string(cfg.estimator);
  c["pooled"] = cfg.pooled;
  c["elr_a"] = cfg.elr_a;
  j["config"] = std::move(c);
  j["partial"] = result.partial();
  j["grid_points_done"] = result.grid_points_done;
  j["grid_points_total"] = result.grid_points_total;
  auto cells = nlohmann::ordered_json::array();
  for (const StudyCell& cell : result.cells) {
    cells.push_back({{"shape", cell.shape},
                     {"grid_value", cell.grid_value},
                     {"test", to_string(cell.test)},
                     {"rejection", cell.proportion()},
                     {"se", cell.standard_error()},
                     {"rejections", cell.rejections},
                     {"replications", cell.replications},
                     {"undefined", cell.undefined}});
  }
  j["cells"] = std::move(cells);
  return j.dump(2);
}

void emit_results(const StudyConfig& cfg, const StudyResult& result,
                  const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create " + dir.string() + ": " + ec.message());
  const std::string stem = "study_" + std::string(to_string(result.scenario));
  {
    std::ofstream csv(dir / (stem + ".csv"));
    if (!csv) throw ResourceError("cannot write " + (dir / (stem + ".csv")).string());
    write_study_csv(csv, result);
    if (!csv) throw ResourceError("write failed for " + (dir / (stem + ".csv")).string());
  }
  std::ofstream json(dir / (stem + ".json"));
  if (!json) throw ResourceError("cannot write " + (dir / (stem + ".json")).string());
  json << study_summary_json(cfg, result) << '\n';
  if (!json) throw ResourceError("write failed for " + (dir / (stem + ".json")).string());
}

}  // namespace rptrend
