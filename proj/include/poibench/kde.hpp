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

#ifndef POIBENCH_KDE_HPP_
#define POIBENCH_KDE_HPP_

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "poibench/core.hpp"

namespace poibench {

/// Kernel terms below this value contribute nothing.
inline constexpr double kKernelUnderflow = 1e-300;

/// Radially symmetric bivariate normal density at distance d (km) for
/// bandwidth h (km).
inline double gaussian_kernel_2d(double distance_km, double bandwidth_km) {
  const double h2 = bandwidth_km * bandwidth_km;
  const double value = std::exp(-distance_km * distance_km / (2.0 * h2)) /
                       (2.0 * std::numbers::pi * h2);
  return value < kKernelUnderflow ? 0.0 : value;
}

/// Adaptive-bandwidth Gaussian KDE over one user's visited locations.
///
/// The pilot bandwidth follows Silverman's rule on the km-projected points,
/// h = 1.06 * sigma * n^(-1/5), with sigma the mean of the two per-axis
/// standard deviations. Each point then gets a local bandwidth
/// h_i = h * (f(x_i) / g)^(-1/2), where f is the fixed-bandwidth pilot density
/// and g the geometric mean of f over the points, so sparse regions get wider
/// kernels.
struct AdaptiveKdeModel {
  std::vector<Coordinate> points;
  std::vector<UnitVector> embedded;
  double pilot_bandwidth = 1.0;
  std::vector<double> local_bandwidths;
  // Squared unit-sphere chord beyond which point i's kernel underflows.
  std::vector<double> cutoff_chord2;

  std::size_t size() const { return points.size(); }
};

inline constexpr double kFallbackBandwidthKm = 1.0;

inline AdaptiveKdeModel fit_geo_kde(std::span<const Coordinate> visits) {
  if (visits.empty()) throw ColdUserError("cannot fit a KDE without visits");
  const std::size_t n = visits.size();

  AdaptiveKdeModel m;
  m.points.assign(visits.begin(), visits.end());
  m.embedded.reserve(n);
  for (const auto& c : visits) m.embedded.push_back(UnitVector::from(c));

  double lat0 = 0.0, lon0 = 0.0;
  for (const auto& c : visits) {
    lat0 += c.latitude;
    lon0 += c.longitude;
  }
  lat0 /= static_cast<double>(n);
  lon0 /= static_cast<double>(n);

  double sigma = 0.0;
  if (n >= 2) {
    const double kx = kEarthRadiusKm * std::cos(deg_to_rad(lat0));
    double mx = 0.0, my = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = kx * deg_to_rad(visits[i].longitude - lon0);
      ys[i] = kEarthRadiusKm * deg_to_rad(visits[i].latitude - lat0);
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      vx += (xs[i] - mx) * (xs[i] - mx);
      vy += (ys[i] - my) * (ys[i] - my);
    }
    vx /= static_cast<double>(n - 1);
    vy /= static_cast<double>(n - 1);
    sigma = 0.5 * (std::sqrt(vx) + std::sqrt(vy));
  }

  // Sub-metre spreads are treated as coincident points.
  if (n < 2 || !(sigma > 1e-9)) {
    m.pilot_bandwidth = kFallbackBandwidthKm;
    m.local_bandwidths.assign(n, kFallbackBandwidthKm);
  } else {
    const double h = 1.06 * sigma * std::pow(static_cast<double>(n), -0.2);
    m.pilot_bandwidth = h;
    std::vector<double> pilot(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double k =
            gaussian_kernel_2d(m.embedded[i].distance_km(m.embedded[j]), h);
        pilot[i] += k;
        if (j != i) pilot[j] += k;
      }
    }
    double log_mean = 0.0;
    for (double& f : pilot) {
      f /= static_cast<double>(n);
      log_mean += std::log(f);
    }
    const double g = std::exp(log_mean / static_cast<double>(n));
    m.local_bandwidths.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      m.local_bandwidths[i] = h * std::pow(pilot[i] / g, -0.5);
    }
  }

  m.cutoff_chord2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = m.local_bandwidths[i];
    // exp(-d^2 / 2h^2) / (2 pi h^2) < underflow  <=>  d > d_max
    const double e_max = -std::log(kKernelUnderflow * 2.0 * std::numbers::pi * h * h);
    const double d_max = e_max > 0 ? h * std::sqrt(2.0 * e_max) : 0.0;
    const double angle = std::min(d_max / kEarthRadiusKm, std::numbers::pi);
    const double chord = 2.0 * std::sin(angle / 2.0);
    // Slack keeps borderline points on the exact path.
    m.cutoff_chord2[i] = chord * chord * (1.0 + 1e-9) + 1e-18;
  }
  return m;
}

inline double score_geo(const AdaptiveKdeModel& m, const UnitVector& candidate) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.embedded[i].chord2(candidate) > m.cutoff_chord2[i]) continue;
    sum += gaussian_kernel_2d(m.embedded[i].distance_km(candidate),
                              m.local_bandwidths[i]);
  }
  return sum / static_cast<double>(m.size());
}

/// Density at `candidate` in 1/km^2.
inline double score_geo(const AdaptiveKdeModel& m, const Coordinate& candidate) {
  return score_geo(m, UnitVector::from(candidate));
}

}  // namespace poibench

#endif  // POIBENCH_KDE_HPP_
