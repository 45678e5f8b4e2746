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

// Estimators of the mean mu, standard deviation sigma and coefficient of
// variation gamma = sigma / mu of the interevent times under a renewal
// process null.

#ifndef RPTREND_ESTIMATORS_HPP_
#define RPTREND_ESTIMATORS_HPP_

#include <string_view>

#include "rptrend/event_data.hpp"

namespace rptrend {

enum class EstimatorMethod { Sample, CensoredAware, Difference, WeibullMle };

std::string_view to_string(EstimatorMethod method);
// Accepts "sample", "censored", "diff", "weibull".
EstimatorMethod estimator_from_string(std::string_view name);

struct Estimates {
  double mu = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  EstimatorMethod method = EstimatorMethod::Sample;

  // Sets gamma = sigma / mu.
  static Estimates from_moments(double mu, double sigma, EstimatorMethod method);
};

// Sample mean and standard deviation of the complete gaps. The remainder
// tau - T_n is ignored. The variance uses divisor n - 1. Requires n >= 2.
Estimates sample_estimates(const EventSeries& series);

// mu = tau / N, sigma^2 = (sum X_i^2 + (tau - T_N)^2) / N - mu^2.
// Throws EstimatorUndefined carrying sigma^2 when it is negative.
Estimates censored_estimates(const EventSeries& series);

// sigma*^2 = sum (X_{i+1} - X_i)^2 / (2 (N - 1)), paired with the sample
// mean for gamma. Requires N >= 2.
Estimates diff_variance(const EventSeries& series);

struct WeibullFit {
  double shape = 0.0;
  double scale = 0.0;
  double log_likelihood = 0.0;
  Estimates derived;
};

// Maximum likelihood Weibull renewal process fit pooling the complete gaps
// of all processes and treating each positive remainder as right censored.
WeibullFit fit_weibull_rp(const MultiProcessData& data);
WeibullFit fit_weibull_rp(const EventSeries& series);

// Closed-form scale maximizing the likelihood for a fixed shape:
// scale^shape = (sum over complete and censored gaps of x^shape) / n_complete.
double weibull_profile_scale(const MultiProcessData& data, double shape);

// Censored Weibull log-likelihood at (shape, scale).
double weibull_log_likelihood(const MultiProcessData& data, double shape,
                              double scale);

// Mean and standard deviation of a Weibull(shape, scale) distribution.
Estimates weibull_moments(double shape, double scale);

// Dispatches on the method for a single series.
Estimates estimate(const EventSeries& series, EstimatorMethod method);

// One set of estimates from all processes, for the common-distribution null.
// Sample/Difference pool within-process gaps and differences; CensoredAware
// pools total time, events and squared gaps; WeibullMle fits jointly.
Estimates estimate_pooled(const MultiProcessData& data, EstimatorMethod method);

}  // namespace rptrend

#endif  // RPTREND_ESTIMATORS_HPP_
