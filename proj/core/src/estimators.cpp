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

#include "rptrend/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "rptrend/error.hpp"

namespace rptrend {

namespace {

constexpr double kShapeRelTol = 1e-10;
constexpr std::uintmax_t kMaxIterations = 200;
constexpr int kMaxBracketExpansions = 60;

struct Moments {
  double sum = 0.0;
  double sum_sq_dev = 0.0;
  std::size_t n = 0;
};

// Two-pass mean and sum of squared deviations.
Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = xs.size();
  if (m.n == 0) return m;
  m.sum = std::accumulate(xs.begin(), xs.end(), 0.0);
  const double mean = m.sum / static_cast<double>(m.n);
  for (double x : xs) m.sum_sq_dev += (x - mean) * (x - mean);
  return m;
}

Estimates sample_from_gaps(std::span<const double> gaps) {
  if (gaps.size() < 2) {
    throw EstimatorUndefined("sample estimator needs at least 2 complete gaps");
  }
  const Moments m = moments(gaps);
  const double n = static_cast<double>(m.n);
  return Estimates::from_moments(m.sum / n, std::sqrt(m.sum_sq_dev / (n - 1.0)),
                                 EstimatorMethod::Sample);
}

// Squared successive differences of one series' gaps.
double diff_sum_sq(std::span<const double> gaps) {
  double s = 0.0;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const double d = gaps[i] - gaps[i - 1];
    s += d * d;
  }
  return s;
}

Estimates censored_from_totals(double total_time, double sum_sq,
                               std::size_t events) {
  if (events == 0) {
    throw EstimatorUndefined("censored-aware estimator needs at least 1 event");
  }
  const double n = static_cast<double>(events);
  const double mu = total_time / n;
  double var = sum_sq / n - mu * mu;
  // Cancellation noise around an exact zero is not a negative variance.
  if (var < 0.0 && var > -1e-12 * mu * mu) var = 0.0;
  if (var < 0.0) {
    throw EstimatorUndefined(
        "censored-aware variance estimate is negative: " + std::to_string(var),
        var);
  }
  return Estimates::from_moments(mu, std::sqrt(var),
                                 EstimatorMethod::CensoredAware);
}

struct PooledGaps {
  std::vector<double> complete;
  std::vector<double> censored;  // positive remainders only
};

PooledGaps pool(const MultiProcessData& data) {
  PooledGaps out;
  for (const auto& p : data.processes()) {
    Gaps g = interevent_times(p.series);
    out.complete.insert(out.complete.end(), g.complete.begin(),
                        g.complete.end());
    if (g.remainder > 0.0) out.censored.push_back(g.remainder);
  }
  return out;
}

// Profiled score in the shape parameter, computed on values rescaled to
// (0, 1] so that y^shape cannot overflow. Strictly decreasing in shape.
class ProfileScore {
 public:
  explicit ProfileScore(const PooledGaps& gaps) {
    double top = 0.0;
    for (double x : gaps.complete) top = std::max(top, x);
    for (double r : gaps.censored) top = std::max(top, r);
    top_ = top;
    for (double x : gaps.complete) {
      const double y = x / top;
      log_complete_.push_back(std::log(y));
    }
    log_all_ = log_complete_;
    for (double r : gaps.censored) log_all_.push_back(std::log(r / top));
    sum_log_complete_ =
        std::accumulate(log_complete_.begin(), log_complete_.end(), 0.0);
  }

  double operator()(double shape) const {
    double s0 = 0.0;
    double s1 = 0.0;
    for (double ly : log_all_) {
      const double w = std::exp(shape * ly);
      s0 += w;
      s1 += w * ly;
    }
    const double n = static_cast<double>(log_complete_.size());
    return n / shape + sum_log_complete_ - n * s1 / s0;
  }

  double scale(double shape) const {
    double s0 = 0.0;
    for (double ly : log_all_) s0 += std::exp(shape * ly);
    const double n = static_cast<double>(log_complete_.size());
    return top_ * std::pow(s0 / n, 1.0 / shape);
  }

 private:
  double top_ = 1.0;
  std::vector<double> log_complete_;
  std::vector<double> log_all_;
  double sum_log_complete_ = 0.0;
};

double log_likelihood(const PooledGaps& gaps, double shape, double scale) {
  double ll = 0.0;
  const double log_shape = std::log(shape);
  const double log_scale = std::log(scale);
  for (double x : gaps.complete) {
    const double lz = std::log(x) - log_scale;
    ll += log_shape - log_scale + (shape - 1.0) * lz - std::exp(shape * lz);
  }
  for (double r : gaps.censored) {
    ll -= std::exp(shape * (std::log(r) - log_scale));
  }
  return ll;
}

WeibullFit fit_pooled(const PooledGaps& gaps) {
  if (gaps.complete.empty()) {
    throw EstimatorUndefined("Weibull fit needs at least one complete gap");
  }
  const auto [lo_it, hi_it] =
      std::minmax_element(gaps.complete.begin(), gaps.complete.end());
  const bool censored_beyond = std::any_of(
      gaps.censored.begin(), gaps.censored.end(),
      [hi = *hi_it](double r) { return r > hi; });
  if (*lo_it == *hi_it && !censored_beyond) {
    throw EstimatorUndefined(
        "all gaps identical: Weibull likelihood is unbounded in the shape");
  }

  const ProfileScore score(gaps);
  double lo = 0.1;
  double hi = 10.0;
  double f_lo = score(lo);
  double f_hi = score(hi);
  for (int k = 0; f_lo < 0.0; ++k) {
    if (k == kMaxBracketExpansions) {
      throw NonConvergence("could not bracket the Weibull shape", lo);
    }
    hi = lo;
    f_hi = f_lo;
    lo /= 2.0;
    f_lo = score(lo);
  }
  for (int k = 0; f_hi > 0.0; ++k) {
    if (k == kMaxBracketExpansions) {
      throw NonConvergence("could not bracket the Weibull shape", hi);
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = score(hi);
  }

  double shape = 0.0;
  if (f_lo == 0.0) {
    shape = lo;
  } else if (f_hi == 0.0) {
    shape = hi;
  } else {
    std::uintmax_t iterations = kMaxIterations;
    const auto tol = [](double a, double b) {
      return std::fabs(a - b) <= kShapeRelTol * std::min(std::fabs(a), std::fabs(b));
    };
    const auto [a, b] = boost::math::tools::toms748_solve(score, lo, hi, f_lo,
                                                          f_hi, tol, iterations);
    shape = 0.5 * (a + b);
    if (iterations >= kMaxIterations && !tol(a, b)) {
      throw NonConvergence("Weibull shape did not converge", shape);
    }
  }

  WeibullFit fit;
  fit.shape = shape;
  fit.scale = score.scale(shape);
  fit.log_likelihood = log_likelihood(gaps, fit.shape, fit.scale);
  fit.derived = weibull_moments(fit.shape, fit.scale);
  return fit;
}

}  // namespace

std::string_view to_string(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::Sample: return "sample";
    case EstimatorMethod::CensoredAware: return "censored";
    case EstimatorMethod::Difference: return "diff";
    case EstimatorMethod::WeibullMle: return "weibull";
  }
  return "unknown";
}

EstimatorMethod estimator_from_string(std::string_view name) {
  if (name == "sample") return EstimatorMethod::Sample;
  if (name == "censored") return EstimatorMethod::CensoredAware;
  if (name == "diff") return EstimatorMethod::Difference;
  if (name == "weibull") return EstimatorMethod::WeibullMle;
  throw ParameterError("unknown estimator '" + std::string(name) + "'");
}

Estimates Estimates::from_moments(double mu, double sigma,
                                  EstimatorMethod method) {
  return Estimates{mu, sigma, sigma / mu, method};
}

Estimates sample_estimates(const EventSeries& series) {
  return sample_from_gaps(interevent_times(series).complete);
}

Estimates censored_estimates(const EventSeries& series) {
  const Gaps g = interevent_times(series);
  double sum_sq = g.remainder * g.remainder;
  for (double x : g.complete) sum_sq += x * x;
  return censored_from_totals(series.tau(), sum_sq, series.size());
}

Estimates diff_variance(const EventSeries& series) {
  const Gaps g = interevent_times(series);
  if (g.complete.size() < 2) {
    throw EstimatorUndefined("difference estimator needs at least 2 gaps");
  }
  const double n = static_cast<double>(g.complete.size());
  const double var = diff_sum_sq(g.complete) / (2.0 * (n - 1.0));
  const double mu = std::accumulate(g.complete.begin(), g.complete.end(), 0.0) / n;
  return Estimates::from_moments(mu, std::sqrt(var), EstimatorMethod::Difference);
}

Estimates weibull_moments(double shape, double scale) {
  const double g1 = std::tgamma(1.0 + 1.0 / shape);
  const double g2 = std::tgamma(1.0 + 2.0 / shape);
  return Estimates::from_moments(scale * g1, scale * std::sqrt(g2 - g1 * g1),
                                 EstimatorMethod::WeibullMle);
}

WeibullFit fit_weibull_rp(const MultiProcessData& data) {
  return fit_pooled(pool(data));
}

WeibullFit fit_weibull_rp(const EventSeries& series) {
  return fit_weibull_rp(MultiProcessData("series", series));
}

double weibull_profile_scale(const MultiProcessData& data, double shape) {
  if (!(shape > 0.0)) throw ParameterError("Weibull shape must be positive");
  const PooledGaps gaps = pool(data);
  if (gaps.complete.empty()) {
    throw EstimatorUndefined("Weibull fit needs at least one complete gap");
  }
  return ProfileScore(gaps).scale(shape);
}

double weibull_log_likelihood(const MultiProcessData& data, double shape,
                              double scale) {
  return log_likelihood(pool(data), shape, scale);
}

Estimates estimate(const EventSeries& series, EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::Sample: return sample_estimates(series);
    case EstimatorMethod::CensoredAware: return censored_estimates(series);
    case EstimatorMethod::Difference: return diff_variance(series);
    case EstimatorMethod::WeibullMle: return fit_weibull_rp(series).derived;
  }
  throw ParameterError("unknown estimator");
}

Estimates estimate_pooled(const MultiProcessData& data, EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::Sample:
      return sample_from_gaps(pool(data).complete);
    case EstimatorMethod::CensoredAware: {
      double total = 0.0;
      double sum_sq = 0.0;
      for (const auto& p : data.processes()) {
        const Gaps g = interevent_times(p.series);
        total += p.series.tau();
        sum_sq += g.remainder * g.remainder;
        for (double x : g.complete) sum_sq += x * x;
      }
      return censored_from_totals(total, sum_sq, data.total_events());
    }
    case EstimatorMethod::Difference: {
      double num = 0.0;
      double pairs = 0.0;
      std::vector<double> all;
      for (const auto& p : data.processes()) {
        const Gaps g = interevent_times(p.series);
        all.insert(all.end(), g.complete.begin(), g.complete.end());
        if (g.complete.size() >= 2) {
          num += diff_sum_sq(g.complete);
          pairs += static_cast<double>(g.complete.size() - 1);
        }
      }
      if (pairs == 0.0) {
        throw EstimatorUndefined("difference estimator needs a process with 2 gaps");
      }
      const double mu = std::accumulate(all.begin(), all.end(), 0.0) /
                        static_cast<double>(all.size());
      return Estimates::from_moments(mu, std::sqrt(num / (2.0 * pairs)),
                                     EstimatorMethod::Difference);
    }
    case EstimatorMethod::WeibullMle:
      return fit_weibull_rp(data).derived;
  }
  throw ParameterError("unknown estimator");
}

}  // namespace rptrend
