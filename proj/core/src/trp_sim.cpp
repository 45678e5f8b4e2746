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

#include "rptrend/trp_sim.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "rptrend/error.hpp"

namespace rptrend {

namespace {

constexpr std::size_t kMaxEvents = 50'000'000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Cumulative bathtub intensity at the two inner phase boundaries.
struct BathtubMarks {
  double first;   // Lambda(e)
  double second;  // Lambda(tau - e)
  double total;   // Lambda(tau)
};

BathtubMarks marks(const Bathtub& bt) {
  const double h = bt.floor();
  const double first = (h + 0.5 * bt.c) * bt.e;
  const double second = first + h * (bt.tau - 2.0 * bt.e);
  return {first, second, bt.d * bt.tau};
}

double bathtub_cumulative(const Bathtub& bt, double t) {
  const double h = bt.floor();
  const BathtubMarks m = marks(bt);
  if (t <= 0.0) return 0.0;
  if (t <= bt.e) return (h + bt.c) * t - 0.5 * bt.c * t * t / bt.e;
  if (t <= bt.tau - bt.e) return m.first + h * (t - bt.e);
  const double x = std::min(t, bt.tau) - (bt.tau - bt.e);
  return m.second + h * x + 0.5 * bt.c * x * x / bt.e;
}

double bathtub_inverse(const Bathtub& bt, double u) {
  const double h = bt.floor();
  const BathtubMarks m = marks(bt);
  if (u > m.total * (1.0 + 1e-12)) {
    throw ParameterError("u lies beyond Lambda(tau) of the bathtub trend");
  }
  if (u <= 0.0) return 0.0;
  const double slope = bt.c / bt.e;
  if (u <= m.first) {
    // (c / 2e) t^2 - (h + c) t + u = 0, smaller root in stable form.
    const double top = h + bt.c;
    return 2.0 * u / (top + std::sqrt(std::max(0.0, top * top - 2.0 * slope * u)));
  }
  if (u <= m.second) return h > 0.0 ? bt.e + (u - m.first) / h : bt.e;
  // (c / 2e) x^2 + h x - v = 0.
  const double v = u - m.second;
  const double x = 2.0 * v / (h + std::sqrt(h * h + 2.0 * slope * v));
  return std::min(bt.tau, bt.tau - bt.e + x);
}

}  // namespace

Bathtub make_bathtub(double c, double d, double e, double tau) {
  if (!(tau > 0.0)) throw ParameterError("bathtub tau must be positive");
  if (!(c >= 0.0)) throw ParameterError("bathtub c must be non-negative");
  if (!(d > 0.0)) throw ParameterError("bathtub d must be positive");
  if (!(e > 0.0 && e < 0.5 * tau)) throw ParameterError("bathtub e must lie in (0, tau/2)");
  Bathtub bt{c, d, e, tau};
  if (bt.floor() < 0.0) {
    throw ParameterError("bathtub parameters give a negative trend function");
  }
  return bt;
}

Bathtub bathtub_equal_phases(double c, double per_phase, double d) {
  if (!(per_phase > 0.0)) throw ParameterError("per-phase count must be positive");
  if (!(d > 0.0)) throw ParameterError("bathtub d must be positive");
  const double tau = 3.0 * per_phase / d;
  double e = per_phase / d;
  if (c > 0.0) {
    // (c / tau) e^2 - (d + c / 2) e + per_phase = 0; discriminant
    // d^2 - c d / 3 + c^2 / 4 is positive for every c.
    const double b = d + 0.5 * c;
    const double disc = b * b - 4.0 * (c / tau) * per_phase;
    e = 2.0 * per_phase / (b + std::sqrt(disc));
  }
  return make_bathtub(c, d, e, tau);
}

std::string describe(const TrendFunction& trend) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const PowerLaw& p) { out << "powerlaw:b=" << p.b; },
                 [&](const ConstantTrend& k) { out << "constant:d=" << k.d; },
                 [&](const Bathtub& bt) {
                   out << "bathtub:c=" << bt.c << ",d=" << bt.d << ",e=" << bt.e
                       << ",tau=" << bt.tau;
                 },
             },
             trend);
  return out.str();
}

double trend_rate(const TrendFunction& trend, double t) {
  return std::visit(
      Overloaded{
          [&](const PowerLaw& p) { return p.b * std::pow(t, p.b - 1.0); },
          [&](const ConstantTrend& k) { return k.d; },
          [&](const Bathtub& bt) {
            const double h = bt.floor();
            if (t < bt.e) return h + bt.c * (1.0 - t / bt.e);
            if (t <= bt.tau - bt.e) return h;
            return h + bt.c * (t - (bt.tau - bt.e)) / bt.e;
          },
      },
      trend);
}

double cumulative_trend(const TrendFunction& trend, double t) {
  return std::visit(Overloaded{
                        [&](const PowerLaw& p) { return std::pow(t, p.b); },
                        [&](const ConstantTrend& k) { return k.d * t; },
                        [&](const Bathtub& bt) { return bathtub_cumulative(bt, t); },
                    },
                    trend);
}

double lambda_inverse(const TrendFunction& trend, double u) {
  if (!(u >= 0.0)) throw ParameterError("lambda_inverse needs u >= 0");
  return std::visit(Overloaded{
                        [&](const PowerLaw& p) { return std::pow(u, 1.0 / p.b); },
                        [&](const ConstantTrend& k) { return u / k.d; },
                        [&](const Bathtub& bt) { return bathtub_inverse(bt, u); },
                    },
                    trend);
}

double tau_for_expected(const TrendFunction& trend, double n) {
  if (!(n > 0.0)) throw ParameterError("expected count must be positive");
  if (std::holds_alternative<Bathtub>(trend)) {
    throw ParameterError("bathtub trends fix tau through their parameters");
  }
  return lambda_inverse(trend, n);
}

EventSeries simulate_trp(const TrpModel& model, double tau, Engine& rng) {
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  if (!(model.weibull_shape > 0.0)) throw ParameterError("Weibull shape must be positive");
  std::visit(Overloaded{
                 [](const PowerLaw& p) {
                   if (!(p.b > 0.0)) throw ParameterError("power-law b must be positive");
                 },
                 [](const ConstantTrend& k) {
                   if (!(k.d > 0.0)) throw ParameterError("constant rate must be positive");
                 },
                 [&](const Bathtub& bt) {
                   if (tau > bt.tau * (1.0 + 1e-12)) {
                     throw ParameterError("tau exceeds the bathtub's domain");
                   }
                 },
             },
             model.trend);

  const double scale = unit_mean_weibull_scale(model.weibull_shape);
  const double horizon = cumulative_trend(model.trend, tau);
  std::vector<double> times;
  double s = 0.0;
  for (;;) {
    s += weibull_draw(rng, model.weibull_shape, scale);
    if (s > horizon) break;
    double t = std::min(lambda_inverse(model.trend, s), tau);
    // Rounding can collapse two nearby arrivals; keep the order strict.
    if (!times.empty() && t <= times.back()) {
      t = std::nextafter(times.back(), std::numeric_limits<double>::infinity());
      if (t > tau) break;
    }
    if (t <= 0.0) continue;
    times.push_back(t);
    if (times.size() > kMaxEvents) throw ResourceError("simulated series is too long");
  }
  return EventSeries(std::move(times), tau);
}

EventSeries simulate_trp(const TrpModel& model, double tau, std::uint64_t seed) {
  Engine rng = make_engine(seed);
  return simulate_trp(model, tau, rng);
}

}  // namespace rptrend
