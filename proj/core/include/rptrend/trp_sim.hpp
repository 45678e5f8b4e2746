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

// Trend-renewal process simulation. A TRP with trend function lambda and
// renewal distribution F has Lambda(T_1), Lambda(T_2), ... forming a renewal
// process with gaps ~ F, where Lambda is the integral of lambda. Here F is a
// Weibull distribution rescaled to mean one, so E N(tau) ~ Lambda(tau).

#ifndef RPTREND_TRP_SIM_HPP_
#define RPTREND_TRP_SIM_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include "rptrend/event_data.hpp"
#include "rptrend/random.hpp"

namespace rptrend {

// lambda(t) = b t^(b - 1), Lambda(t) = t^b.
struct PowerLaw {
  double b = 1.0;
};

// lambda(t) = d, Lambda(t) = d t.
struct ConstantTrend {
  double d = 1.0;
};

// Symmetric piecewise-linear bathtub on [0, tau]:
//   [0, e]:           h + c (1 - t / e)       (decreasing)
//   [e, tau - e]:     h                       (flat)
//   [tau - e, tau]:   h + c (t - tau + e) / e (increasing)
// with h = d - c e / tau so that the average of lambda over [0, tau] is d.
// Requires c >= 0, d > 0, 0 < e < tau / 2 and h >= 0.
struct Bathtub {
  double c = 0.0;
  double d = 1.0;
  double e = 1.0;
  double tau = 3.0;

  double floor() const { return d - c * e / tau; }
};

Bathtub make_bathtub(double c, double d, double e, double tau);

// Bathtub with d fixed and tau, e chosen so each of the three phases has
// expected count `per_phase`: tau = 3 per_phase / d and e the smaller root of
// e (d - c e / tau + c / 2) = per_phase.
Bathtub bathtub_equal_phases(double c, double per_phase, double d = 1.0);

using TrendFunction = std::variant<PowerLaw, ConstantTrend, Bathtub>;

std::string describe(const TrendFunction& trend);

double trend_rate(const TrendFunction& trend, double t);        // lambda(t)
double cumulative_trend(const TrendFunction& trend, double t);  // Lambda(t)

// Lambda^{-1}(u) for u >= 0. For the bathtub, u beyond Lambda(tau) throws
// ParameterError.
double lambda_inverse(const TrendFunction& trend, double u);

// Censoring time giving Lambda(tau) = n. Bathtub trends carry their own
// tau and are rejected.
double tau_for_expected(const TrendFunction& trend, double n);

struct TrpModel {
  TrendFunction trend = ConstantTrend{};
  double weibull_shape = 1.0;
};

// Draws unit-mean Weibull gaps W_i, forms S_k = W_1 + ... + W_k and returns
// T_k = Lambda^{-1}(S_k) for every S_k <= Lambda(tau).
EventSeries simulate_trp(const TrpModel& model, double tau, Engine& rng);
EventSeries simulate_trp(const TrpModel& model, double tau, std::uint64_t seed);

}  // namespace rptrend

#endif  // RPTREND_TRP_SIM_HPP_
