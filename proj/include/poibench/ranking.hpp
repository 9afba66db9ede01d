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

#ifndef POIBENCH_RANKING_HPP_
#define POIBENCH_RANKING_HPP_

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "poibench/core.hpp"

namespace poibench {

struct RankedItem {
  PoiId poi = 0;
  double score = 0.0;

  friend bool operator==(const RankedItem&, const RankedItem&) = default;
};

/// A user's recommendations, best first. Ties are broken by lower POI id.
struct RankedList {
  UserId user = 0;
  std::vector<RankedItem> items;

  std::size_t size() const { return items.size(); }

  /// POI ids of the first min(k, size) items.
  std::vector<PoiId> top(std::size_t k) const {
    std::vector<PoiId> out;
    const std::size_t n = std::min(k, items.size());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(items[i].poi);
    return out;
  }

  friend bool operator==(const RankedList&, const RankedList&) = default;
};

/// Orders by score descending, then POI id ascending.
inline bool ranks_before(const RankedItem& a, const RankedItem& b) {
  return a.score != b.score ? a.score > b.score : a.poi < b.poi;
}

/// Selects the best `limit` of (candidates[i], scores[i]).
inline RankedList top_n(UserId user, std::span<const PoiId> candidates,
                        std::span<const double> scores, std::size_t limit) {
  RankedList list;
  list.user = user;
  const std::size_t n = std::min(limit, candidates.size());
  if (n == 0) return list;
  std::vector<RankedItem> items(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) items[i] = {candidates[i], scores[i]};
  std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(n),
                    items.end(), ranks_before);
  // Copy rather than shrink: callers keep many lists alive at once.
  list.items.assign(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(n));
  return list;
}

}  // namespace poibench

#endif  // POIBENCH_RANKING_HPP_
