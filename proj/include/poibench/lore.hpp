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

#ifndef POIBENCH_LORE_HPP_
#define POIBENCH_LORE_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "poibench/context.hpp"
#include "poibench/geosoca.hpp"

namespace poibench {

/// First-order POI-to-POI transitions from consecutive train check-ins.
/// Rows are sorted by destination; every nonempty row of `probability` sums
/// to one.
class TransitionModel {
 public:
  struct Transition {
    PoiId to = 0;
    std::uint32_t count = 0;
    double probability = 0.0;
  };

  TransitionModel() : offsets_(1, 0) {}

  /// Consecutive check-ins of the train split, one sequence per user.
  static TransitionModel build(const CheckInMatrix& train) {
    std::vector<std::vector<PoiId>> sequences(train.users());
    for (UserId u = 0; u < train.users(); ++u) sequences[u] = train.ordered_history(u);
    return from_sequences(train.pois(), sequences);
  }

  /// Self-transitions (A -> A) are kept.
  static TransitionModel from_sequences(std::size_t pois,
                                        const std::vector<std::vector<PoiId>>& sequences) {
    std::vector<std::pair<PoiId, PoiId>> pairs;
    for (const auto& seq : sequences) {
      for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i - 1] >= pois || seq[i] >= pois) {
          throw ValidationError("transition sequence names poi outside [0, " +
                                std::to_string(pois) + ")");
        }
        pairs.emplace_back(seq[i - 1], seq[i]);
      }
    }
    std::sort(pairs.begin(), pairs.end());

    TransitionModel m;
    m.offsets_.assign(pois + 1, 0);
    for (std::size_t i = 0; i < pairs.size();) {
      std::size_t j = i;
      while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
      m.cells_.push_back({pairs[i].second, static_cast<std::uint32_t>(j - i), 0.0});
      ++m.offsets_[pairs[i].first + 1];
      i = j;
    }
    for (std::size_t p = 0; p < pois; ++p) m.offsets_[p + 1] += m.offsets_[p];
    for (std::size_t p = 0; p < pois; ++p) {
      double total = 0.0;
      for (std::size_t k = m.offsets_[p]; k < m.offsets_[p + 1]; ++k) total += m.cells_[k].count;
      for (std::size_t k = m.offsets_[p]; k < m.offsets_[p + 1]; ++k) {
        m.cells_[k].probability = m.cells_[k].count / total;
      }
    }
    return m;
  }

  std::size_t pois() const { return offsets_.size() - 1; }

  std::span<const Transition> row(PoiId from) const {
    return {cells_.data() + offsets_[from], cells_.data() + offsets_[from + 1]};
  }

  std::uint32_t count(PoiId from, PoiId to) const {
    const auto* t = find(from, to);
    return t ? t->count : 0;
  }

  double probability(PoiId from, PoiId to) const {
    const auto* t = find(from, to);
    return t ? t->probability : 0.0;
  }

 private:
  const Transition* find(PoiId from, PoiId to) const {
    const auto r = row(from);
    auto it = std::lower_bound(r.begin(), r.end(), to,
                               [](const Transition& t, PoiId p) { return t.to < p; });
    return it != r.end() && it->to == to ? &*it : nullptr;
  }

  std::vector<std::size_t> offsets_;
  std::vector<Transition> cells_;
};

inline TransitionModel build_transition_model(const DatasetBundle& b) {
  return TransitionModel::build(b.train);
}

/// Additive Markov chain: score(p) = sum_i 2^-(n-i) * T(l_i, p) over the
/// history l_1..l_n, so the most recent check-in carries weight 1. Dense over
/// POIs.
inline std::vector<double> score_sequential(const TransitionModel& model,
                                            std::span<const PoiId> history) {
  std::vector<double> score(model.pois(), 0.0);
  const std::size_t n = history.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n - 1 - i, 2000)));
    if (weight == 0.0) continue;
    for (const auto& t : model.row(history[i])) score[t.to] += weight * t.probability;
  }
  return score;
}

/// Geographical (KDE), sequential and social channels.
class Lore final : public ContextModel {
 public:
  explicit Lore(const DatasetBundle& b) : bundle_(b) {
    if (!b.has_social()) {
      throw ContextUnavailableError("LORE requires social relations, missing in " +
                                    b.name);
    }
    embedded_ = embed_pois(b);
    transitions_ = build_transition_model(b);
    social_transform_ = fit_social_transform(b);
  }

  std::string_view name() const override { return "LORE"; }
  ChannelNames channels() const override { return {"geo", "sequential", "social"}; }

  ContextScores scores(UserId user) const override {
    auto candidates = candidate_set(bundle_, user);
    if (bundle_.train.row(user).empty()) {
      return zero_scores(user, channels(), std::move(candidates));
    }
    ContextScores s;
    s.user = user;
    s.channels = channels();
    s.values[0] = kde_channel(*fit_user_kde(bundle_, user), embedded_, candidates);
    const auto history = bundle_.train.ordered_history(user);
    s.values[1] = gather(score_sequential(transitions_, history), candidates);
    s.values[2] = score_social(bundle_, social_transform_, user, candidates);
    s.candidates = std::move(candidates);
    max_normalize(s);
    return s;
  }

  const TransitionModel& transitions() const { return transitions_; }

 private:
  const DatasetBundle& bundle_;
  std::vector<UnitVector> embedded_;
  TransitionModel transitions_;
  PowerLawCdf social_transform_;
};

}  // namespace poibench

#endif  // POIBENCH_LORE_HPP_
