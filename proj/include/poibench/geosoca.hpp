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

#ifndef POIBENCH_GEOSOCA_HPP_
#define POIBENCH_GEOSOCA_HPP_

#include <optional>
#include <span>
#include <vector>

#include "poibench/context.hpp"
#include "poibench/dataset.hpp"
#include "poibench/kde.hpp"
#include "poibench/power_law.hpp"

namespace poibench {

// ---------------------------------------------------------------------------
// Geographical channel (shared with LORE)

/// Every POI's unit-sphere embedding, computed once per bundle.
inline std::vector<UnitVector> embed_pois(const DatasetBundle& b) {
  std::vector<UnitVector> out(b.pois());
  for (PoiId p = 0; p < b.pois(); ++p) {
    if (b.geo.has(p)) out[p] = UnitVector::from(b.geo.at(p));
  }
  return out;
}

/// KDE over the user's distinct train POIs; nullopt for cold users.
inline std::optional<AdaptiveKdeModel> fit_user_kde(const DatasetBundle& b,
                                                    UserId user) {
  const auto row = b.train.row(user);
  if (row.empty()) return std::nullopt;
  std::vector<Coordinate> visits;
  visits.reserve(row.size());
  for (const auto& c : row) visits.push_back(b.geo.at(c.poi));
  return fit_geo_kde(visits);
}

inline std::vector<double> kde_channel(const AdaptiveKdeModel& model,
                                       std::span<const UnitVector> embedded_pois,
                                       std::span<const PoiId> candidates) {
  std::vector<double> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out[i] = score_geo(model, embedded_pois[candidates[i]]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Social channel (shared with LORE)

/// raw(p) = sum over friends f of trainFrequency(f, p), dense over POIs.
inline std::vector<double> raw_social(const DatasetBundle& b, UserId user) {
  std::vector<double> raw(b.pois(), 0.0);
  for (UserId f : b.social.friends(user)) {
    for (const auto& c : b.train.row(f)) raw[c.poi] += c.frequency;
  }
  return raw;
}

/// Fitted once on every positive raw social frequency over all users and POIs.
inline PowerLawCdf fit_social_transform(const DatasetBundle& b) {
  PowerLawFitter fitter;
  std::vector<double> raw(b.pois(), 0.0);
  std::vector<PoiId> touched;
  for (UserId u = 0; u < b.users(); ++u) {
    for (UserId f : b.social.friends(u)) {
      for (const auto& c : b.train.row(f)) {
        if (raw[c.poi] == 0.0) touched.push_back(c.poi);
        raw[c.poi] += c.frequency;
      }
    }
    for (PoiId p : touched) {
      fitter.add(raw[p]);
      raw[p] = 0.0;
    }
    touched.clear();
  }
  return fitter.fit();
}

inline std::vector<double> score_social(const DatasetBundle& b,
                                        const PowerLawCdf& transform, UserId user,
                                        std::span<const PoiId> candidates) {
  if (!b.has_social()) {
    throw ContextUnavailableError("dataset " + b.name + " has no social relations");
  }
  const auto raw = raw_social(b, user);
  std::vector<double> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out[i] = transform.transform(raw[candidates[i]]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Categorical channel

struct CategoricalIndex {
  std::vector<double> poi_popularity;                // total train frequency
  std::vector<std::vector<PoiId>> pois_by_category;  // inverted CategoryIndex
};

inline CategoricalIndex build_categorical_index(const DatasetBundle& b) {
  CategoricalIndex idx;
  idx.poi_popularity.assign(b.pois(), 0.0);
  for (UserId u = 0; u < b.users(); ++u) {
    for (const auto& c : b.train.row(u)) idx.poi_popularity[c.poi] += c.frequency;
  }
  idx.pois_by_category.resize(b.categories.category_count());
  for (PoiId p = 0; p < b.pois(); ++p) {
    for (CategoryId c : b.categories.categories(p)) idx.pois_by_category[c].push_back(p);
  }
  return idx;
}

/// userBias(cat) = user's train frequency within cat / user's total train
/// frequency; raw(p) = poiPop(p) * sum over cats(p) of userBias(cat).
inline std::vector<double> raw_categorical(const DatasetBundle& b,
                                           const CategoricalIndex& idx,
                                           UserId user) {
  std::vector<double> raw(b.pois(), 0.0);
  const double total = static_cast<double>(b.train.total_frequency(user));
  if (total <= 0.0) return raw;
  std::vector<double> bias(b.categories.category_count(), 0.0);
  for (const auto& c : b.train.row(user)) {
    for (CategoryId cat : b.categories.categories(c.poi)) bias[cat] += c.frequency;
  }
  for (CategoryId cat = 0; cat < bias.size(); ++cat) {
    if (bias[cat] == 0.0) continue;
    const double w = bias[cat] / total;
    for (PoiId p : idx.pois_by_category[cat]) raw[p] += w;
  }
  for (PoiId p = 0; p < b.pois(); ++p) raw[p] *= idx.poi_popularity[p];
  return raw;
}

inline PowerLawCdf fit_categorical_transform(const DatasetBundle& b,
                                             const CategoricalIndex& idx) {
  PowerLawFitter fitter;
  for (UserId u = 0; u < b.users(); ++u) {
    for (double v : raw_categorical(b, idx, u)) {
      if (v > 0.0) fitter.add(v);
    }
  }
  return fitter.fit();
}

inline std::vector<double> score_categorical(const DatasetBundle& b,
                                             const CategoricalIndex& idx,
                                             const PowerLawCdf& transform,
                                             UserId user,
                                             std::span<const PoiId> candidates) {
  if (!b.has_categories()) {
    throw ContextUnavailableError("dataset " + b.name + " has no POI categories");
  }
  const auto raw = raw_categorical(b, idx, user);
  std::vector<double> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    out[i] = transform.transform(raw[candidates[i]]);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Geographical, social and categorical channels. Construction runs the
/// transform-fitting pre-passes; scores() is pure afterwards.
class GeoSoCa final : public ContextModel {
 public:
  explicit GeoSoCa(const DatasetBundle& b) : bundle_(b) {
    if (!b.has_social()) {
      throw ContextUnavailableError("GeoSoCa requires social relations, missing in " +
                                    b.name);
    }
    if (!b.has_categories()) {
      throw ContextUnavailableError("GeoSoCa requires POI categories, missing in " +
                                    b.name);
    }
    embedded_ = embed_pois(b);
    categorical_ = build_categorical_index(b);
    social_transform_ = fit_social_transform(b);
    categorical_transform_ = fit_categorical_transform(b, categorical_);
  }

  std::string_view name() const override { return "GeoSoCa"; }
  ChannelNames channels() const override { return {"geo", "social", "categorical"}; }

  ContextScores scores(UserId user) const override {
    auto candidates = candidate_set(bundle_, user);
    if (bundle_.train.row(user).empty()) {
      return zero_scores(user, channels(), std::move(candidates));
    }
    ContextScores s;
    s.user = user;
    s.channels = channels();
    s.values[0] = kde_channel(*fit_user_kde(bundle_, user), embedded_, candidates);
    s.values[1] = score_social(bundle_, social_transform_, user, candidates);
    s.values[2] = score_categorical(bundle_, categorical_, categorical_transform_,
                                    user, candidates);
    s.candidates = std::move(candidates);
    max_normalize(s);
    return s;
  }

  const PowerLawCdf& social_transform() const { return social_transform_; }
  const PowerLawCdf& categorical_transform() const { return categorical_transform_; }

 private:
  const DatasetBundle& bundle_;
  std::vector<UnitVector> embedded_;
  CategoricalIndex categorical_;
  PowerLawCdf social_transform_;
  PowerLawCdf categorical_transform_;
};

}  // namespace poibench

#endif  // POIBENCH_GEOSOCA_HPP_
