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

#ifndef POIBENCH_POWER_LAW_HPP_
#define POIBENCH_POWER_LAW_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace poibench {

/// CDF of a continuous power law with x_min = 1, used to squash heavy-tailed
/// frequencies into [0, 1).
struct PowerLawCdf {
  double alpha = 2.0;
  double x_min = 1.0;

  double transform(double x) const {
    if (x < x_min) return 0.0;
    return 1.0 - std::pow(x / x_min, 1.0 - alpha);
  }
};

inline constexpr std::size_t kPowerLawMinSamples = 10;
inline constexpr double kPowerLawDefaultAlpha = 2.0;
inline constexpr double kPowerLawMaxAlpha = 10.0;

/// Streaming maximum-likelihood fit: alpha = 1 + n / sum(ln x_i). Samples
/// below x_min are outside the support and ignored.
class PowerLawFitter {
 public:
  void add(double x) {
    if (!(x >= 1.0)) return;
    ++n_;
    log_sum_ += std::log(x);
  }

  std::size_t samples() const { return n_; }

  PowerLawCdf fit() const {
    PowerLawCdf cdf;
    if (n_ < kPowerLawMinSamples) {
      cdf.alpha = kPowerLawDefaultAlpha;
    } else if (log_sum_ <= 0.0) {
      cdf.alpha = kPowerLawMaxAlpha;
    } else {
      cdf.alpha = std::min(kPowerLawMaxAlpha,
                           1.0 + static_cast<double>(n_) / log_sum_);
    }
    return cdf;
  }

 private:
  std::size_t n_ = 0;
  double log_sum_ = 0.0;
};

inline PowerLawCdf fit_power_law(std::span<const double> samples) {
  PowerLawFitter fitter;
  for (double x : samples) fitter.add(x);
  return fitter.fit();
}

}  // namespace poibench

#endif  // POIBENCH_POWER_LAW_HPP_
