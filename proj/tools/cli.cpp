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


#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rptrend/analysis.hpp"
#include "rptrend/bridge.hpp"
#include "rptrend/error.hpp"
#include "rptrend/estimators.hpp"
#include "rptrend/event_data.hpp"
#include "rptrend/null_dist.hpp"
#include "rptrend/random.hpp"
#include "rptrend/study.hpp"
#include "rptrend/trend_tests.hpp"
#include "rptrend/trp_sim.hpp"

namespace rptrend::cli {

namespace {

const std::vector<std::string> kTests{"lr", "ks", "cvm", "ad", "elr",
                                      "lrm", "elrm", "gl", "cvmm"};
const std::vector<std::string> kEstimators{"sample", "censored", "diff", "weibull"};

// Where the data comes from and how to read it.
struct DataArgs {
  std::string source;
  std::string format;  // empty: from the extension
  std::optional<double> tau;
  std::string process;  // empty: all processes

  void add_to(CLI::App* app) {
    app->add_option("--data", source, "Bundled dataset id (lhd) or a CSV/JSON path, - for stdin")
        ->required();
    app->add_option("--format", format, "Input format (default from the extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--tau", tau, "Censoring time for processes without one");
    app->add_option("--process", process, "Use only this process id");
  }

  MultiProcessData load() const {
    MultiProcessData data = [&] {
      for (const std::string& id : bundled_dataset_ids()) {
        if (source == id) return bundled_dataset(id);
      }
      DataFormat fmt = format.empty() ? format_from_path(source)
                                      : (format == "json" ? DataFormat::Json : DataFormat::LongCsv);
      if (source == "-") return parse_events(std::cin, fmt, tau);
      std::ifstream in(source);
      if (!in) throw DataError("cannot open '" + source + "'");
      return parse_events(in, fmt, tau);
    }();
    if (process.empty()) return data;
    const Process* p = data.find(process);
    if (!p) throw DataError("no process '" + process + "' in the data");
    return MultiProcessData({*p});
  }
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParameterError("invalid number '" + text + "' for " + what);
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const std::string& s : split(text, ',')) values.push_back(parse_number(s, what));
  return values;
}

// kind:key=value,key=value
TrendFunction parse_trend(const std::string& text, std::optional<double>& tau,
                          std::optional<double> expected_n) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    for (const std::string& item : split(text.substr(colon + 1), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParameterError("expected key=value in '" + item + "'");
      kv[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "--trend " + item.substr(0, eq));
    }
  }
  auto take = [&](const std::string& key, std::optional<double> fallback) {
    const auto it = kv.find(key);
    if (it != kv.end()) {
      const double v = it->second;
      kv.erase(it);
      return v;
    }
    if (!fallback) throw ParameterError("--trend " + kind + " needs " + key + "=...");
    return *fallback;
  };
  TrendFunction trend;
  if (kind == "powerlaw") {
    trend = PowerLaw{take("b", std::nullopt)};
  } else if (kind == "constant") {
    trend = ConstantTrend{take("d", 1.0)};
  } else if (kind == "bathtub") {
    const double c = take("c", std::nullopt);
    const double d = take("d", 1.0);
    if (expected_n) {
      if (kv.count("e") || tau) {
        throw ParameterError("bathtub with --expected-n derives e and tau; drop e and --tau");
      }
      const Bathtub bt = bathtub_equal_phases(c, *expected_n / 3.0, d);
      tau = bt.tau;
      trend = bt;
    } else {
      if (!tau) throw ParameterError("bathtub trends need --tau or --expected-n");
      trend = make_bathtub(c, d, take("e", std::nullopt), *tau);
    }
  } else {
    throw ParameterError("unknown trend '" + kind + "' (powerlaw, bathtub, constant)");
  }
  if (!kv.empty()) throw ParameterError("unknown trend parameter '" + kv.begin()->first + "'");
  return trend;
}

void print_estimates(std::ostream& out, const Estimates& e) {
  out << to_string(e.method) << ": mu=" << fmt(e.mu) << " sigma=" << fmt(e.sigma)
      << " gamma=" << fmt(e.gamma);
}

// ---------------------------------------------------------------------------

struct TestArgs {
  DataArgs data;
  std::string test;
  double a = 0.5;
  std::string estimator = "sample";
  bool pooled = false;
  std::string sided = "two";
  std::string pvalue = "asymptotic";
  std::size_t mc_size = 100'000;
  std::size_t mc_grid = 4096;
  std::size_t permutations = 999;
  std::uint64_t seed = 1;
  std::string weights = "tau";
  bool json = false;
};

int do_test(const TestArgs& args, std::ostream& out) {
  const MultiProcessData data = args.data.load();
  TestSpec spec;
  spec.kind = test_from_string(args.test);
  spec.a = args.a;
  spec.estimator = estimator_from_string(args.estimator);
  spec.pooled = args.pooled;
  spec.sided = sidedness_from_string(args.sided);
  spec.weights = cvm_weights_from_string(args.weights);
  PValueOptions opts;
  opts.mode = pvalue_mode_from_string(args.pvalue);
  opts.mc_size = args.mc_size;
  opts.mc_grid = args.mc_grid;
  opts.permutations = args.permutations;
  opts.seed = args.seed;

  const AnalysisResult r = run_test(data, spec, opts);
  if (args.json) {
    out << to_json(r) << '\n';
    return kExitOk;
  }
  const TestResult& t = r.test;
  out << "test:       " << to_string(t.test);
  if (t.a) out << " (a=" << fmt(*t.a) << ")";
  out << '\n';
  out << "statistic:  " << fmt(t.statistic) << '\n';
  out << "p-value:    " << fmt(t.p_value, 4) << '\n';
  out << "method:     " << to_string(t.p_method);
  if (t.sidedness) out << ", " << to_string(*t.sidedness) << "-sided";
  out << '\n';
  if (r.estimates.empty()) {
    out << "estimator:  none\n";
  } else if (r.estimates.size() == 1) {
    out << "estimator:  ";
    print_estimates(out, r.estimates[0]);
    out << (spec.pooled && is_multi_process(spec.kind) ? " (pooled)\n" : "\n");
  } else {
    for (std::size_t j = 0; j < r.estimates.size(); ++j) {
      out << "estimator:  [" << data[j].id << "] ";
      if (data[j].series.empty()) {
        out << "no events\n";
        continue;
      }
      print_estimates(out, r.estimates[j]);
      out << '\n';
    }
  }
  out << "events:     " << t.n_effective << '\n';
  for (const std::string& w : t.warnings) out << "warning:    " << w << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  DataArgs data;
  std::string estimator = "all";
  bool pooled = false;
  bool json = false;
};

int do_estimate(const EstimateArgs& args, std::ostream& out) {
  const MultiProcessData data = args.data.load();
  std::vector<EstimatorMethod> methods;
  if (args.estimator == "all") {
    for (const std::string& m : kEstimators) methods.push_back(estimator_from_string(m));
  } else {
    methods.push_back(estimator_from_string(args.estimator));
  }
  const bool single_method = methods.size() == 1;

  struct Row {
    std::string process;
    EstimatorMethod method;
    std::optional<Estimates> est;
    std::optional<WeibullFit> fit;
    std::string error;
  };
  std::vector<Row> rows;
  auto run = [&](const std::string& label, const MultiProcessData& d) {
    for (EstimatorMethod m : methods) {
      Row row{label, m, std::nullopt, std::nullopt, {}};
      try {
        if (m == EstimatorMethod::WeibullMle) {
          row.fit = fit_weibull_rp(d);
          row.est = row.fit->derived;
        } else {
          row.est = d.size() == 1 ? estimate(d[0].series, m) : estimate_pooled(d, m);
        }
      } catch (const NumericError& e) {
        if (single_method) throw;
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  };
  if (args.pooled || data.size() == 1) {
    run(data.size() == 1 ? data[0].id : "pooled", data);
  } else {
    for (const Process& p : data.processes()) run(p.id, MultiProcessData({p}));
  }

  if (args.json) {
    auto arr = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
      nlohmann::ordered_json j;
      j["process"] = r.process;
      j["method"] = to_string(r.method);
      if (r.est) {
        j["mu"] = r.est->mu;
        j["sigma"] = r.est->sigma;
        j["gamma"] = r.est->gamma;
      }
      if (r.fit) {
        j["shape"] = r.fit->shape;
        j["scale"] = r.fit->scale;
        j["log_likelihood"] = r.fit->log_likelihood;
      }
      if (!r.error.empty()) j["error"] = r.error;
      arr.push_back(std::move(j));
    }
    out << arr.dump() << '\n';
    return kExitOk;
  }
  for (const Row& r : rows) {
    out << r.process << '\t';
    if (!r.est) {
      out << to_string(r.method) << ": undefined (" << r.error << ")\n";
      continue;
    }
    print_estimates(out, *r.est);
    if (r.fit) out << " shape=" << fmt(r.fit->shape) << " scale=" << fmt(r.fit->scale);
    out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string trend;
  double beta = 1.0;
  std::optional<double> tau;
  std::optional<double> expected_n;
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  std::string out_path;
  std::string format = "csv";
};

int do_simulate(const SimulateArgs& args, std::ostream& out) {
  std::optional<double> tau = args.tau;
  const TrendFunction trend = parse_trend(args.trend, tau, args.expected_n);
  if (!tau) {
    if (!args.expected_n) throw ParameterError("give --tau or --expected-n");
    tau = tau_for_expected(trend, *args.expected_n);
  } else if (args.expected_n && !std::holds_alternative<Bathtub>(trend)) {
    throw ParameterError("--tau and --expected-n are mutually exclusive");
  }
  if (args.reps < 1) throw ParameterError("--reps must be at least 1");
  const TrpModel model{trend, args.beta};
  std::vector<Process> procs;
  for (std::size_t r = 0; r < args.reps; ++r) {
    Engine rng = make_engine(args.seed, {r});
    procs.push_back({std::to_string(r + 1), simulate_trp(model, *tau, rng)});
  }
  const MultiProcessData data(std::move(procs));
  auto write = [&](std::ostream& o) {
    if (args.format == "json") {
      write_json(o, data);
    } else {
      write_long_csv(o, data);
    }
  };
  if (args.out_path.empty() || args.out_path == "-") {
    write(out);
  } else {
    std::ofstream f(args.out_path);
    if (!f) throw DataError("cannot write '" + args.out_path + "'");
    write(f);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct StudyArgs {
  std::string scenario = "level";
  std::string grid;
  std::string betas = "0.75,1.5";
  std::string tests;
  std::size_t reps = 10'000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::optional<double> expected_n;
  std::size_t processes = 5;
  std::string estimator = "sample";
  bool pooled = false;
  double a = 0.5;
  double max_seconds = 0.0;
  std::string out_dir;
};

int do_study(const StudyArgs& args, std::ostream& out) {
  StudyConfig cfg;
  cfg.scenario = scenario_from_string(args.scenario);
  cfg.grid = args.grid.empty() ? default_grid(cfg.scenario) : parse_list(args.grid, "--grid");
  cfg.shapes = parse_list(args.betas, "--betas");
  if (args.tests.empty()) {
    cfg.tests = default_tests(cfg.scenario);
  } else {
    for (const std::string& t : split(args.tests, ',')) cfg.tests.push_back(test_from_string(t));
  }
  cfg.replications = args.reps;
  cfg.alpha = args.alpha;
  cfg.seed = args.seed;
  cfg.expected_n = args.expected_n.value_or(default_expected_n(cfg.scenario));
  cfg.processes = args.processes;
  cfg.estimator = estimator_from_string(args.estimator);
  cfg.pooled = args.pooled;
  cfg.elr_a = args.a;
  cfg.max_seconds = args.max_seconds;

  const StudyResult result = run_study(cfg);
  if (!args.out_dir.empty()) {
    emit_results(cfg, result, args.out_dir);
  }
  write_study_csv(out, result);
  if (result.partial()) {
    out << "# partial: " << result.grid_points_done << " of " << result.grid_points_total
        << " grid points completed within the time budget\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct PlotArgs {
  DataArgs data;
  std::optional<double> gamma;
  std::string estimator = "sample";
};

int do_plot_bridge(const PlotArgs& args, std::ostream& out) {
  const MultiProcessData data = args.data.load();
  if (data.size() != 1) throw ParameterError("plot-bridge needs one process; use --process");
  const EventSeries& s = data[0].series;
  const double gamma =
      args.gamma ? *args.gamma : estimate(s, estimator_from_string(args.estimator)).gamma;
  const BridgePath path(s, gamma);
  out << "s,v\n" << std::setprecision(17);
  for (const auto& [x, v] : path.vertices()) out << x << ',' << v << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TablesArgs {
  std::string kind = "all";
  std::size_t size = kShippedTableSize;
  std::size_t grid = kShippedTableGrid;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

int do_tables(const TablesArgs& args, std::ostream& out) {
  std::vector<LimitKind> kinds;
  if (args.kind == "all" || args.kind == "cvm") kinds.push_back(LimitKind::CvM);
  if (args.kind == "all" || args.kind == "ad") kinds.push_back(LimitKind::AD);
  if (args.kind == "all" || args.kind == "sup-abs") kinds.push_back(LimitKind::SupAbs);
  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) throw ResourceError("cannot create '" + args.out_dir + "': " + ec.message());
  for (LimitKind kind : kinds) {
    const std::uint64_t seed = args.seed.value_or(shipped_table_seed(kind));
    const LimitTable table = build_limit_table(kind, args.size, args.grid, seed);
    const std::filesystem::path path =
        std::filesystem::path(args.out_dir) / std::string(shipped_table_filename(kind));
    save_limit_table(table, path);
    out << to_string(kind) << ": M=" << table.size() << " grid=" << table.grid_n()
        << " seed=0x" << std::hex << seed << std::dec << " mean=" << fmt(table.mean())
        << " q95=" << fmt(table.quantile(0.95)) << " -> " << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trend tests for time-censored recurrent event data", "rptrend"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rptrend 0.1.0");
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads for Monte Carlo loops (0: all cores)")
      ->capture_default_str();

  TestArgs test_args;
  CLI::App* test = app.add_subcommand("test", "Run a trend test");
  test_args.data.add_to(test);
  test->add_option("--test", test_args.test, "Test statistic")
      ->required()
      ->check(CLI::IsMember(kTests));
  test->add_option("--a", test_args.a, "Split point of the extended test, in [0, 1]")
      ->capture_default_str();
  test->add_option("--estimator", test_args.estimator, "Estimator for gamma")
      ->check(CLI::IsMember(kEstimators))
      ->capture_default_str();
  test->add_flag("--pooled", test_args.pooled,
                 "Multi-process tests: one pooled gamma for all processes");
  test->add_option("--sided", test_args.sided, "Alternative for signed statistics")
      ->check(CLI::IsMember({"two", "greater", "less"}))
      ->capture_default_str();
  test->add_option("--pvalue", test_args.pvalue, "p-value engine")
      ->check(CLI::IsMember({"asymptotic", "permutation", "mc"}))
      ->capture_default_str();
  test->add_option("--mc-size", test_args.mc_size, "Monte Carlo table size for --pvalue mc")
      ->capture_default_str();
  test->add_option("--mc-grid", test_args.mc_grid, "Bridge grid points for --pvalue mc")
      ->capture_default_str();
  test->add_option("-B,--permutations", test_args.permutations,
                   "Permutations for --pvalue permutation")
      ->capture_default_str();
  test->add_option("--seed", test_args.seed, "Seed for permutation and Monte Carlo p-values")
      ->capture_default_str();
  test->add_option("--weights", test_args.weights, "cvmm process weights")
      ->check(CLI::IsMember({"tau", "gamma"}))
      ->capture_default_str();
  test->add_flag("--json", test_args.json, "Emit the result as JSON");

  EstimateArgs est_args;
  CLI::App* est = app.add_subcommand("estimate", "Estimate mu, sigma and gamma");
  est_args.data.add_to(est);
  est->add_option("--estimator", est_args.estimator, "Estimator, or all")
      ->check(CLI::IsMember({"all", "sample", "censored", "diff", "weibull"}))
      ->capture_default_str();
  est->add_flag("--pooled", est_args.pooled, "Pool all processes");
  est->add_flag("--json", est_args.json, "Emit JSON");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "Simulate trend-renewal processes as Long CSV");
  sim->add_option("--trend", sim_args.trend,
                  "powerlaw:b=B | bathtub:c=C[,d=D][,e=E] | constant:d=D")
      ->required();
  sim->add_option("--beta", sim_args.beta, "Weibull shape of the unit-mean renewal law")
      ->capture_default_str();
  sim->add_option("--tau", sim_args.tau, "Censoring time");
  sim->add_option("--expected-n", sim_args.expected_n,
                  "Expected number of events; solves tau from Lambda(tau) = n");
  sim->add_option("--seed", sim_args.seed, "Random seed")->capture_default_str();
  sim->add_option("--reps", sim_args.reps, "Number of independent series")
      ->capture_default_str();
  sim->add_option("--out", sim_args.out_path, "Output file (default stdout)");
  sim->add_option("--format", sim_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  StudyArgs study_args;
  CLI::App* study = app.add_subcommand("study", "Level and power studies");
  study->add_option("--scenario", study_args.scenario, "Simulation design")
      ->check(CLI::IsMember({"level", "monotonic", "bathtub", "multi"}))
      ->capture_default_str();
  study->add_option("--grid", study_args.grid,
                    "Comma-separated grid: expected n (level), b (monotonic, multi), c (bathtub)");
  study->add_option("--betas", study_args.betas, "Comma-separated Weibull shapes")
      ->capture_default_str();
  study->add_option("--tests", study_args.tests, "Comma-separated tests (default per scenario)");
  study->add_option("--reps", study_args.reps, "Replications per grid point")
      ->capture_default_str();
  study->add_option("--alpha", study_args.alpha, "Nominal level")->capture_default_str();
  study->add_option("--seed", study_args.seed, "Random seed")->capture_default_str();
  study->add_option("--expected-n", study_args.expected_n,
                    "Expected events per series (per phase for bathtub, per process for multi)");
  study->add_option("--m", study_args.processes, "Processes per data set (multi)")
      ->capture_default_str();
  study->add_option("--estimator", study_args.estimator, "Estimator for gamma")
      ->check(CLI::IsMember(kEstimators))
      ->capture_default_str();
  study->add_flag("--pooled", study_args.pooled, "Multi: one pooled gamma per data set");
  study->add_option("--a", study_args.a, "Split point of the extended test")
      ->capture_default_str();
  study->add_option("--max-seconds", study_args.max_seconds,
                    "Time budget; remaining grid points are skipped (0: none)")
      ->capture_default_str();
  study->add_option("--out", study_args.out_dir, "Directory for the CSV and JSON summary");

  PlotArgs plot_args;
  CLI::App* plot = app.add_subcommand("plot-bridge", "Emit the tied-down path as CSV");
  plot_args.data.add_to(plot);
  plot->add_option("--gamma", plot_args.gamma, "Coefficient of variation (default: estimated)");
  plot->add_option("--estimator", plot_args.estimator, "Estimator when --gamma is absent")
      ->check(CLI::IsMember(kEstimators))
      ->capture_default_str();

  TablesArgs tables_args;
  CLI::App* tables = app.add_subcommand("tables", "Build Monte Carlo limit tables");
  tables->add_option("--kind", tables_args.kind, "Table to build")
      ->check(CLI::IsMember({"all", "cvm", "ad", "sup-abs"}))
      ->capture_default_str();
  tables->add_option("--size", tables_args.size, "Number of simulated bridges")
      ->capture_default_str();
  tables->add_option("--grid", tables_args.grid, "Grid points per bridge")
      ->capture_default_str();
  tables->add_option("--seed", tables_args.seed, "Seed (default: the shipped seed per kind)");
  tables->add_option("--out", tables_args.out_dir, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* failed = &app;
    for (CLI::App* sub : app.get_subcommands()) failed = sub;
    err << failed->help();
    return kExitUsage;
  }

  set_worker_threads(threads);
  try {
    if (test->parsed()) return do_test(test_args, out);
    if (est->parsed()) return do_estimate(est_args, out);
    if (sim->parsed()) return do_simulate(sim_args, out);
    if (study->parsed()) return do_study(study_args, out);
    if (plot->parsed()) return do_plot_bridge(plot_args, out);
    if (tables->parsed()) return do_tables(tables_args, out);
  } catch (const ParameterError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace rptrend::cli
