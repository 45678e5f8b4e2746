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


#include "rptrend/analysis.hpp"

#include <nlohmann/json.hpp>

#include "rptrend/error.hpp"

namespace rptrend {

namespace {

std::vector<Estimates> multi_estimates(const MultiProcessData& data, const TestSpec& spec) {
  if (spec.pooled) return {estimate_pooled(data, spec.estimator)};
  std::vector<Estimates> ests;
  ests.reserve(data.size());
  for (const auto& p : data.processes()) {
    // Empty processes are dropped by the tests; keep the slot aligned.
    ests.push_back(p.series.empty() ? Estimates{} : estimate(p.series, spec.estimator));
  }
  return ests;
}

const EventSeries& only_series(const MultiProcessData& data, TestKind kind) {
  if (data.size() != 1) {
    throw ParameterError("test '" + std::string(to_string(kind)) +
                         "' needs exactly one process; select one with --process");
  }
  return data[0].series;
}

// Statistic value under given estimates; the building block of both the
// asymptotic result and the permutation replicates.
double statistic_value(const MultiProcessData& data, const TestSpec& spec,
                       std::span<const Estimates> ests) {
  const ElrConfig cfg{spec.a};
  switch (spec.kind) {
    case TestKind::LR:
      return lr_value(data[0].series, ests[0].gamma);
    case TestKind::KS:
      return ks_value(data[0].series, ests[0].gamma);
    case TestKind::CvM:
      return cvm_value(data[0].series, ests[0].gamma);
    case TestKind::AD:
      return ad_value(data[0].series, ests[0].gamma);
    case TestKind::ELR:
      return elr_value(data[0].series, ests[0].gamma, cfg);
    case TestKind::LRm:
      return lr_multi_value(data, ests);
    case TestKind::ELRm:
      return elr_multi_value(data, ests, cfg);
    case TestKind::GL:
      return gl_value(data);
    case TestKind::CvMm:
      return cvm_multi_value(data, ests, spec.weights);
  }
  throw ParameterError("unknown test");
}

TestResult asymptotic_result(const MultiProcessData& data, const TestSpec& spec,
                             std::span<const Estimates> ests, const PValueOptions& options) {
  const ElrConfig cfg{spec.a};
  const bool mc = options.mode == PValueMode::MonteCarlo;
  if (mc && (spec.kind == TestKind::LR || spec.kind == TestKind::ELR ||
             spec.kind == TestKind::LRm || spec.kind == TestKind::ELRm ||
             spec.kind == TestKind::GL)) {
    throw ParameterError("Monte Carlo p-values apply to ks, cvm, ad and cvmm");
  }
  switch (spec.kind) {
    case TestKind::LR:
      return lr_statistic(data[0].series, ests[0], spec.sided);
    case TestKind::KS: {
      if (!mc) return ks_statistic(data[0].series, ests[0]);
      TestResult r = ks_statistic(data[0].series, ests[0]);
      const LimitTable table = build_limit_table(LimitKind::SupAbs, options.mc_size,
                                                 options.mc_grid, options.seed);
      r.p_value = limit_pvalue(table, r.statistic);
      r.p_method = PMethod::MonteCarloLimit;
      return r;
    }
    case TestKind::CvM:
      if (!mc) return cvm_statistic(data[0].series, ests[0]);
      return cvm_statistic(data[0].series, ests[0],
                           build_limit_table(LimitKind::CvM, options.mc_size,
                                             options.mc_grid, options.seed));
    case TestKind::AD:
      if (!mc) return ad_statistic(data[0].series, ests[0]);
      return ad_statistic(data[0].series, ests[0],
                          build_limit_table(LimitKind::AD, options.mc_size,
                                            options.mc_grid, options.seed));
    case TestKind::ELR:
      return elr_statistic(data[0].series, ests[0], cfg, spec.sided);
    case TestKind::LRm:
      return lr_multi(data, ests, spec.sided);
    case TestKind::ELRm:
      return elr_multi(data, ests, cfg, spec.sided);
    case TestKind::GL:
      return gl_statistic(data, spec.sided);
    case TestKind::CvMm: {
      CvmMultiOptions opts;
      opts.seed = options.seed;
      if (mc) {
        const LimitTable base = build_limit_table(LimitKind::CvM, options.mc_size,
                                                  options.mc_grid, options.seed);
        opts.normal_from = 0;
        opts.mc_size = options.mc_size;
        opts.cvm_table = &base;
        return cvm_multi(data, ests, spec.weights, opts);
      }
      return cvm_multi(data, ests, spec.weights, opts);
    }
  }
  throw ParameterError("unknown test");
}

}  // namespace

std::string_view to_string(PValueMode mode) {
  switch (mode) {
    case PValueMode::Asymptotic:
      return "asymptotic";
    case PValueMode::Permutation:
      return "permutation";
    case PValueMode::MonteCarlo:
      return "mc";
  }
  return "?";
}

PValueMode pvalue_mode_from_string(std::string_view name) {
  if (name == "asymptotic") return PValueMode::Asymptotic;
  if (name == "permutation") return PValueMode::Permutation;
  if (name == "mc") return PValueMode::MonteCarlo;
  throw ParameterError("unknown p-value mode '" + std::string(name) + "'");
}

std::vector<Estimates> estimates_for(const MultiProcessData& data, const TestSpec& spec) {
  if (spec.kind == TestKind::GL) return {};
  if (is_multi_process(spec.kind)) return multi_estimates(data, spec);
  return {estimate(only_series(data, spec.kind), spec.estimator)};
}

AnalysisResult run_test(const MultiProcessData& data, const TestSpec& spec,
                        const PValueOptions& options) {
  if (!is_multi_process(spec.kind)) only_series(data, spec.kind);
  if (data.size() == 0) throw DataError("no processes in the data");

  AnalysisResult out;
  out.estimates = estimates_for(data, spec);
  if (options.mode != PValueMode::Permutation) {
    out.test = asymptotic_result(data, spec, out.estimates, options);
    return out;
  }

  TestResult r;
  r.test = spec.kind;
  if (spec.kind == TestKind::ELR || spec.kind == TestKind::ELRm) r.a = spec.a;
  r.statistic = statistic_value(data, spec, out.estimates);
  r.p_method = PMethod::Permutation;
  r.n_effective = data.total_events();
  Tail tail = Tail::Upper;
  if (is_signed(spec.kind)) {
    r.sidedness = spec.sided;
    tail = tail_for(spec.sided);
  }
  if (is_multi_process(spec.kind)) {
    const DataStatistic stat = [&spec](const MultiProcessData& d) {
      const std::vector<Estimates> e = estimates_for(d, spec);
      return statistic_value(d, spec, e);
    };
    r.p_value = permutation_pvalue(data, stat, tail, options.permutations, options.seed);
  } else {
    const SeriesStatistic stat = [&spec](const EventSeries& s) {
      const MultiProcessData d("1", s);
      const std::vector<Estimates> e{estimate(s, spec.estimator)};
      return statistic_value(d, spec, e);
    };
    r.p_value =
        permutation_pvalue(data[0].series, stat, tail, options.permutations, options.seed);
  }
  out.test = std::move(r);
  return out;
}

AnalysisResult run_test(const EventSeries& series, const TestSpec& spec,
                        const PValueOptions& options) {
  return run_test(MultiProcessData("1", series), spec, options);
}

std::string to_json(const AnalysisResult& result) {
  const TestResult& t = result.test;
  nlohmann::ordered_json j;
  j["test"] = to_string(t.test);
  j["a"] = t.a ? nlohmann::ordered_json(*t.a) : nlohmann::ordered_json(nullptr);
  j["statistic"] = t.statistic;
  j["p_value"] = t.p_value;
  j["p_method"] = to_string(t.p_method);
  j["sidedness"] = t.sidedness ? nlohmann::ordered_json(to_string(*t.sidedness))
                               : nlohmann::ordered_json(nullptr);
  j["n_effective"] = t.n_effective;
  j["warnings"] = t.warnings;
  auto ests = nlohmann::ordered_json::array();
  for (const Estimates& e : result.estimates) {
    ests.push_back({{"method", to_string(e.method)},
                    {"mu", e.mu},
                    {"sigma", e.sigma},
                    {"gamma", e.gamma}});
  }
  j["estimates"] = std::move(ests);
  return j.dump();
}

}  // namespace rptrend
