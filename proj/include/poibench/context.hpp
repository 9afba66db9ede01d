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

#ifndef POIBENCH_CONTEXT_HPP_
#define POIBENCH_CONTEXT_HPP_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "poibench/dataset.hpp"

namespace poibench {

using ChannelNames = std::array<std::string_view, 3>;

/// Three context channels for one user over that user's candidate POIs.
/// values[c][i] is channel c's score for candidates[i].
struct ContextScores {
  UserId user = 0;
  ChannelNames channels{};
  std::vector<PoiId> candidates;
  std::array<std::vector<double>, 3> values;

  std::size_t size() const { return candidates.size(); }

  std::array<double, 3> triple(std::size_t i) const {
    return {values[0][i], values[1][i], values[2][i]};
  }
};

/// All POIs the user has no train check-in at, ascending.
inline std::vector<PoiId> candidate_set(const DatasetBundle& b, UserId user) {
  std::vector<PoiId> out;
  out.reserve(b.pois());
  const auto row = b.train.row(user);
  auto it = row.begin();
  for (PoiId p = 0; p < b.pois(); ++p) {
    while (it != row.end() && it->poi < p) ++it;
    if (it != row.end() && it->poi == p) continue;
    out.push_back(p);
  }
  return out;
}

/// Picks dense per-POI values at the candidate positions.
inline std::vector<double> gather(std::span<const double> dense,
                                  std::span<const PoiId> candidates) {
  std::vector<double> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = dense[candidates[i]];
  return out;
}

/// Divides by the maximum; an all-zero channel stays all-zero.
inline void max_normalize(std::span<double> values) {
  double max = 0.0;
  for (double v : values) max = std::max(max, v);
  if (max <= 0.0) return;
  for (double& v : values) v /= max;
}

inline void max_normalize(ContextScores& s) {
  for (auto& channel : s.values) max_normalize(std::span<double>(channel));
}

inline ContextScores zero_scores(UserId user, ChannelNames channels,
                                 std::vector<PoiId> candidates) {
  ContextScores s;
  s.user = user;
  s.channels = channels;
  for (auto& v : s.values) v.assign(candidates.size(), 0.0);
  s.candidates = std::move(candidates);
  return s;
}

/// A model that produces three context channels per user.
class ContextModel {
 public:
  virtual ~ContextModel() = default;
  virtual std::string_view name() const = 0;
  virtual ChannelNames channels() const = 0;
  /// Thread-safe; the model is immutable after construction.
  virtual ContextScores scores(UserId user) const = 0;
};

}  // namespace poibench

#endif  // POIBENCH_CONTEXT_HPP_
