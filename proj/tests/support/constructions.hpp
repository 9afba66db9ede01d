/*
 * Copyright 2026 The poibench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Inputs with a known analytic answer, shared by the unit tests and the
// acceptance checks.

#ifndef POIBENCH_TESTS_SUPPORT_CONSTRUCTIONS_HPP_
#define POIBENCH_TESTS_SUPPORT_CONSTRUCTIONS_HPP_

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "poibench/core.hpp"
#include "poibench/kde.hpp"

namespace poibench::testing {

inline constexpr Coordinate kOrigin{40.75, -73.98};

/// Point at (x, y) km east/north of the origin.
inline Coordinate at_km(double x, double y) {
  const double lat = kOrigin.latitude + y / (kEarthRadiusKm * std::numbers::pi / 180.0);
  const double lon = kOrigin.longitude +
                     x / (kEarthRadiusKm * std::cos(deg_to_rad(kOrigin.latitude)) *
                          std::numbers::pi / 180.0);
  return {lat, lon};
}

/// Midpoint-rule integral of the density over [-half, half]^2 km.
inline double grid_mass(const AdaptiveKdeModel& m, double half_km, double step_km) {
  double mass = 0.0;
  for (double x = -half_km + step_km / 2; x < half_km; x += step_km) {
    for (double y = -half_km + step_km / 2; y < half_km; y += step_km) {
      mass += score_geo(m, at_km(x, y)) * step_km * step_km;
    }
  }
  return mass;
}

/// Inverse-CDF draws from a Pareto with x_min = 1 and exponent alpha.
inline std::vector<double> pareto(Rng& rng, double alpha, std::size_t n) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = std::pow(1.0 - uniform01(rng), -1.0 / (alpha - 1.0));
  return xs;
}

/// Distances whose 20 log-spaced bins over [0.01, 10] km hold counts
/// proportional to d^-1.5. With `points`, also returns the (log centre,
/// log frequency) pairs a least-squares fit sees.
inline std::vector<double> power_law_distances(std::vector<std::pair<double, double>>* points) {
  const double lo = std::log(0.01), span = std::log(10.0) - lo;
  std::vector<double> d;
  std::vector<double> counts;
  const double top = std::exp(lo + span * 19.5 / 20);
  for (int k = 0; k < 20; ++k) {
    const double c = std::exp(lo + span * (k + 0.5) / 20);
    const auto n = static_cast<std::size_t>(std::llround(200.0 * std::pow(c / top, -1.5)));
    d.insert(d.end(), n, c);
    counts.push_back(static_cast<double>(n) + (k == 19 ? 1.0 : 0.0));
  }
  // Pins the upper end of the range to 10 km.
  d.push_back(10.0);
  if (points) {
    for (int k = 0; k < 20; ++k) {
      points->emplace_back(lo + span * (k + 0.5) / 20, std::log(counts[k] / d.size()));
    }
  }
  return d;
}

}  // namespace poibench::testing

#endif  // POIBENCH_TESTS_SUPPORT_CONSTRUCTIONS_HPP_
