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

// The tied-down, gamma-normalized counting process
//
//   V(s) = (N(s tau) - s N(tau)) / (gamma sqrt(N(tau))),  0 <= s <= 1,
//
// which converges to a Brownian bridge under the renewal null. Every trend
// statistic in this library is a functional of this path.

#ifndef RPTREND_BRIDGE_HPP_
#define RPTREND_BRIDGE_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rptrend/event_data.hpp"

namespace rptrend {

class BridgePath {
 public:
  // Jump points s_i = T_i / tau. Throws ParameterError unless gamma > 0 and
  // the series has at least one event.
  BridgePath(const EventSeries& series, double gamma);

  std::span<const double> jump_points() const noexcept { return jumps_; }
  std::size_t n_events() const noexcept { return jumps_.size(); }
  double gamma() const noexcept { return gamma_; }

  // Right-continuous evaluation: events at exactly s tau are counted.
  double operator()(double s) const;

  // Value just before s (events at s tau not yet counted).
  double left_limit(double s) const;

  // (s, V(s)) at 0, at both sides of every jump, and at 1.
  std::vector<std::pair<double, double>> vertices() const;

 private:
  double value(double count, double s) const {
    return (count - s * n_) * scale_;
  }

  std::vector<double> jumps_;
  double gamma_;
  double n_;
  double scale_;  // 1 / (gamma sqrt(N))
};

BridgePath build_bridge(const EventSeries& series, double gamma);

enum class FunctionalKind { SignedArea, SupAbs, L2, WeightedL2, SplitArea };

struct Functional {
  FunctionalKind kind = FunctionalKind::L2;
  double split = 0.5;  // SplitArea only: int_0^a V - int_a^1 V

  static Functional signed_area() { return {FunctionalKind::SignedArea}; }
  static Functional sup_abs() { return {FunctionalKind::SupAbs}; }
  static Functional l2() { return {FunctionalKind::L2}; }
  static Functional weighted_l2() { return {FunctionalKind::WeightedL2}; }
  static Functional split_area(double a) { return {FunctionalKind::SplitArea, a}; }
};

// Numerical value of a functional of the path on a uniform grid of
// `grid_size` cells over [0, 1]. Integrals use the trapezoid rule on every
// cell, with cells split at jump points so each piece is smooth. SupAbs is
// the maximum over grid nodes only. WeightedL2 integrates V^2 / (s (1 - s))
// over [eps, 1 - eps] with eps = 1 / (10 grid_size). Requires
// grid_size >= 1000.
double quad_functional(const BridgePath& path, Functional functional,
                       std::size_t grid_size);

}  // namespace rptrend

#endif  // RPTREND_BRIDGE_HPP_
