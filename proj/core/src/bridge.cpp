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

#include "rptrend/bridge.hpp"

#include <algorithm>
#include <cmath>

#include "rptrend/error.hpp"

namespace rptrend {

BridgePath::BridgePath(const EventSeries& series, double gamma)
    : gamma_(gamma), n_(static_cast<double>(series.size())) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be positive");
  }
  if (series.empty()) {
    throw ParameterError("the bridge path needs at least one event");
  }
  jumps_.reserve(series.size());
  for (double t : series.times()) jumps_.push_back(t / series.tau());
  // T_n == tau must map to exactly 1 for the tie-down.
  if (series.last_event() == series.tau()) jumps_.back() = 1.0;
  scale_ = 1.0 / (gamma_ * std::sqrt(n_));
}

double BridgePath::operator()(double s) const {
  const auto count = std::upper_bound(jumps_.begin(), jumps_.end(), s) - jumps_.begin();
  return value(static_cast<double>(count), s);
}

double BridgePath::left_limit(double s) const {
  const auto count = std::lower_bound(jumps_.begin(), jumps_.end(), s) - jumps_.begin();
  return value(static_cast<double>(count), s);
}

std::vector<std::pair<double, double>> BridgePath::vertices() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(2 * jumps_.size() + 2);
  out.emplace_back(0.0, 0.0);
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const double s = jumps_[i];
    out.emplace_back(s, value(static_cast<double>(i), s));
    out.emplace_back(s, value(static_cast<double>(i + 1), s));
  }
  if (jumps_.back() < 1.0) out.emplace_back(1.0, 0.0);
  return out;
}

BridgePath build_bridge(const EventSeries& series, double gamma) {
  return BridgePath(series, gamma);
}

namespace {

// Walks [lo, hi] cell by cell, splitting cells at jump points, and hands each
// smooth piece [u, v] to `piece(u, v, left_value_at_u, left_limit_at_v)`.
template <typename Piece>
void for_each_piece(const BridgePath& path, std::size_t grid_size, double lo,
                    double hi, Piece&& piece) {
  const auto jumps = path.jump_points();
  const double h = 1.0 / static_cast<double>(grid_size);
  std::size_t next = static_cast<std::size_t>(
      std::upper_bound(jumps.begin(), jumps.end(), lo) - jumps.begin());
  double u = lo;
  double fu = path(u);
  for (std::size_t k = 1; u < hi; ++k) {
    const double cell_end = std::min(hi, static_cast<double>(k) * h);
    if (cell_end <= u) continue;
    while (next < jumps.size() && jumps[next] <= cell_end) {
      const double v = jumps[next];
      if (v > u) {
        piece(u, v, fu, path.left_limit(v));
        u = v;
      }
      fu = path(u);
      ++next;
    }
    if (cell_end > u) {
      const double fv = path.left_limit(cell_end);
      piece(u, cell_end, fu, fv);
      u = cell_end;
      fu = path(u);
    }
  }
}

}  // namespace

double quad_functional(const BridgePath& path, Functional functional,
                       std::size_t grid_size) {
  if (grid_size < 1000) throw ParameterError("grid_size must be at least 1000");
  double acc = 0.0;
  switch (functional.kind) {
    case FunctionalKind::SignedArea:
      for_each_piece(path, grid_size, 0.0, 1.0,
                     [&](double u, double v, double fu, double fv) {
                       acc += 0.5 * (v - u) * (fu + fv);
                     });
      return acc;
    case FunctionalKind::SplitArea: {
      const double a = functional.split;
      if (a < 0.0 || a > 1.0) throw ParameterError("split point must be in [0, 1]");
      // Integrate each side separately so that a is a piece boundary.
      double left = 0.0;
      double right = 0.0;
      if (a > 0.0) {
        for_each_piece(path, grid_size, 0.0, a,
                       [&](double u, double v, double fu, double fv) {
                         left += 0.5 * (v - u) * (fu + fv);
                       });
      }
      if (a < 1.0) {
        for_each_piece(path, grid_size, a, 1.0,
                       [&](double u, double v, double fu, double fv) {
                         right += 0.5 * (v - u) * (fu + fv);
                       });
      }
      return left - right;
    }
    case FunctionalKind::L2:
      for_each_piece(path, grid_size, 0.0, 1.0,
                     [&](double u, double v, double fu, double fv) {
                       acc += 0.5 * (v - u) * (fu * fu + fv * fv);
                     });
      return acc;
    case FunctionalKind::WeightedL2: {
      const double eps = 1.0 / (10.0 * static_cast<double>(grid_size));
      const auto weighted = [](double s, double f) {
        return f * f / (s * (1.0 - s));
      };
      for_each_piece(path, grid_size, eps, 1.0 - eps,
                     [&](double u, double v, double fu, double fv) {
                       acc += 0.5 * (v - u) * (weighted(u, fu) + weighted(v, fv));
                     });
      return acc;
    }
    case FunctionalKind::SupAbs: {
      const double n = static_cast<double>(grid_size);
      for (std::size_t k = 0; k <= grid_size; ++k) {
        acc = std::max(acc, std::fabs(path(static_cast<double>(k) / n)));
      }
      return acc;
    }
  }
  throw ParameterError("unknown functional");
}

}  // namespace rptrend
