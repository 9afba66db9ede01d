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

#ifndef POIBENCH_FUSION_HPP_
#define POIBENCH_FUSION_HPP_

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "poibench/context.hpp"
#include "poibench/metrics.hpp"
#include "poibench/ranking.hpp"

namespace poibench {

/// Coefficients of the polynomial context fusion
///   rec = l1 c1 + l2 c2 + l3 c3 + l12 c1c2 + l13 c1c3 + l23 c2c3 + l123 c1c2c3.
struct FusionWeights {
  double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
  double lambda12 = 0.0, lambda13 = 0.0, lambda23 = 0.0;
  double lambda123 = 0.0;

  friend bool operator==(const FusionWeights&, const FusionWeights&) = default;
};

inline double fuse(const FusionWeights& w, const std::array<double, 3>& c) {
  return w.lambda1 * c[0] + w.lambda2 * c[1] + w.lambda3 * c[2] +
         w.lambda12 * c[0] * c[1] + w.lambda13 * c[0] * c[2] +
         w.lambda23 * c[1] * c[2] + w.lambda123 * c[0] * c[1] * c[2];
}

/// Product: every linear and pair weight 0, triple weight 1.
inline constexpr FusionWeights product_rule() {
  FusionWeights w;
  w.lambda123 = 1.0;
  return w;
}

/// Sum: the three linear weights are 1, the rest 0.
inline constexpr FusionWeights sum_rule() {
  FusionWeights w;
  w.lambda1 = w.lambda2 = w.lambda3 = 1.0;
  return w;
}

inline constexpr FusionWeights weighted_sum(double l1, double l2, double l3) {
  FusionWeights w;
  w.lambda1 = l1;
  w.lambda2 = l2;
  w.lambda3 = l3;
  return w;
}

/// Fuses every candidate and keeps the best list_limit.
inline RankedList rank_candidates(const ContextScores& s, const FusionWeights& w,
                                  std::size_t list_limit) {
  std::vector<double> fused(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) fused[i] = fuse(w, s.triple(i));
  return top_n(s.user, s.candidates, fused, list_limit);
}

// ---------------------------------------------------------------------------
// Weighted-sum tuning

/// Grid step 1/10 on the unit simplex: 66 weight triples in lexicographic
/// order of (l1, l2, l3).
inline std::vector<FusionWeights> simplex_grid() {
  std::vector<FusionWeights> grid;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; i + j <= 10; ++j) {
      grid.push_back(weighted_sum(i / 10.0, j / 10.0, (10 - i - j) / 10.0));
    }
  }
  std::sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) {
    return std::tie(a.lambda1, a.lambda2, a.lambda3) <
           std::tie(b.lambda1, b.lambda2, b.lambda3);
  });
  return grid;
}

/// Accumulates nDCG@k per grid point over tune users, then picks the best
/// point; ties go to the lexicographically smallest (l1, l2, l3).
class WeightedSumTuner {
 public:
  explicit WeightedSumTuner(std::size_t k) : k_(k), grid_(simplex_grid()), sum_(grid_.size(), 0.0) {}

  const std::vector<FusionWeights>& grid() const { return grid_; }
  std::size_t k() const { return k_; }
  std::size_t users() const { return users_; }

  /// Per-grid-point nDCG@k of one user; users with empty truth return empty.
  std::vector<double> user_ndcg(const ContextScores& s, std::span<const PoiId> truth) const {
    if (truth.empty()) return {};
    std::vector<double> out(grid_.size());
    for (std::size_t g = 0; g < grid_.size(); ++g) {
      out[g] = ndcg_at_k(rank_candidates(s, grid_[g], k_).top(k_), truth, k_);
    }
    return out;
  }

  /// Adds a user_ndcg() result. Callers add users in a fixed order so the
  /// floating-point sums are reproducible.
  void add(std::span<const double> per_grid) {
    if (per_grid.empty()) return;
    for (std::size_t g = 0; g < grid_.size(); ++g) sum_[g] += per_grid[g];
    ++users_;
  }

  void add(const ContextScores& s, std::span<const PoiId> truth) { add(user_ndcg(s, truth)); }

  std::size_t best_index() const {
    if (users_ == 0) throw ConfigError("weighted-sum tuning needs a nonempty tune split");
    std::size_t best = 0;
    for (std::size_t g = 1; g < grid_.size(); ++g) {
      if (sum_[g] > sum_[best]) best = g;
    }
    return best;
  }

  FusionWeights best() const { return grid_[best_index()]; }

  double mean_ndcg(std::size_t g) const {
    return users_ ? sum_[g] / static_cast<double>(users_) : 0.0;
  }

 private:
  std::size_t k_;
  std::vector<FusionWeights> grid_;
  std::vector<double> sum_;
  std::size_t users_ = 0;
};

/// `truths[i]` is the tune-split POI set of `scores[i].user`.
inline FusionWeights tune_weighted_sum(std::span<const ContextScores> scores,
                                       std::span<const std::vector<PoiId>> truths,
                                       std::size_t k) {
  WeightedSumTuner tuner(k);
  for (std::size_t i = 0; i < scores.size(); ++i) tuner.add(scores[i], truths[i]);
  return tuner.best();
}

}  // namespace poibench

#endif  // POIBENCH_FUSION_HPP_
