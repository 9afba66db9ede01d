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

#ifndef POIBENCH_USG_HPP_
#define POIBENCH_USG_HPP_

#include <cmath>
#include <iostream>
#include <span>
#include <vector>

#include "poibench/context.hpp"
#include "poibench/geosoca.hpp"

namespace poibench {

/// Train visitors of each POI, ascending user id.
inline std::vector<std::vector<UserId>> poi_visitors(const CheckInMatrix& train) {
  std::vector<std::vector<UserId>> visitors(train.pois());
  for (UserId u = 0; u < train.users(); ++u) {
    for (const auto& c : train.row(u)) visitors[c.poi].push_back(u);
  }
  return visitors;
}

// ---------------------------------------------------------------------------
// User interest: user-based CF with cosine similarity on binary train vectors.
// Only users sharing at least one POI are neighbours (others have cosine 0).

inline std::vector<double> user_interest_scores(
    const DatasetBundle& b, const std::vector<std::vector<UserId>>& visitors,
    UserId user) {
  std::vector<double> score(b.pois(), 0.0);
  const auto row = b.train.row(user);
  if (row.empty()) return score;

  std::vector<std::uint32_t> overlap(b.users(), 0);
  std::vector<UserId> neighbours;
  for (const auto& c : row) {
    for (UserId v : visitors[c.poi]) {
      if (v == user) continue;
      if (overlap[v]++ == 0) neighbours.push_back(v);
    }
  }
  std::sort(neighbours.begin(), neighbours.end());

  const double self_norm = std::sqrt(static_cast<double>(row.size()));
  double denominator = 0.0;
  for (UserId v : neighbours) {
    const auto vrow = b.train.row(v);
    const double sim = overlap[v] / (self_norm * std::sqrt(static_cast<double>(vrow.size())));
    denominator += sim;
    for (const auto& c : vrow) score[c.poi] += sim;
  }
  if (denominator <= 0.0) {
    std::fill(score.begin(), score.end(), 0.0);
    return score;
  }
  for (double& s : score) s /= denominator;
  return score;
}

// ---------------------------------------------------------------------------
// Social influence

/// Jaccard similarity of the closed friend neighbourhoods N[u] = F(u) + {u}.
inline double social_similarity(const SocialGraph& g, UserId u, UserId f) {
  auto closed = [&](UserId x) {
    std::vector<UserId> n(g.friends(x).begin(), g.friends(x).end());
    n.insert(std::lower_bound(n.begin(), n.end(), x), x);
    return n;
  };
  const auto a = closed(u);
  const auto c = closed(f);
  std::size_t common = 0;
  for (auto i = a.begin(), j = c.begin(); i != a.end() && j != c.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t unite = a.size() + c.size() - common;
  return unite == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(unite);
}

inline std::vector<double> social_interest_scores(const DatasetBundle& b, UserId user) {
  if (!b.has_social()) {
    throw ContextUnavailableError("dataset " + b.name + " has no social relations");
  }
  std::vector<double> score(b.pois(), 0.0);
  double denominator = 0.0;
  for (UserId f : b.social.friends(user)) {
    const double si = social_similarity(b.social, user, f);
    if (si == 0.0) continue;
    denominator += si;
    for (const auto& c : b.train.row(f)) score[c.poi] += si;
  }
  if (denominator <= 0.0) {
    std::fill(score.begin(), score.end(), 0.0);
    return score;
  }
  for (double& s : score) s /= denominator;
  return score;
}

// ---------------------------------------------------------------------------
// Geographical influence: check-in probability of a POI pair decays as a
// power law of their distance, w(d) = a * d^b.

struct GeoPowerLaw {
  double a = 1.0;
  double b = -1.0;
  double d_min = 0.01;  // km
  bool fallback = true;

  double log_weight(double distance_km) const {
    return std::log(a) + b * std::log(std::max(distance_km, d_min));
  }
  double weight(double distance_km) const { return std::exp(log_weight(distance_km)); }
};

inline constexpr std::size_t kDistanceBins = 20;
inline constexpr double kMinDistanceKm = 0.01;
inline constexpr double kLogScoreClamp = 700.0;

/// Bins distances into kDistanceBins log-spaced bins over [d_min, max],
/// takes each bin's share of all pairs as its probability and fits
/// ln p = ln a + b ln d by least squares at the bins' geometric centres.
/// Fewer than two nonempty bins yields the fallback a = 1, b = -1.
inline GeoPowerLaw fit_distance_power_law(std::span<const double> distances_km) {
  GeoPowerLaw law;
  law.d_min = kMinDistanceKm;
  if (distances_km.empty()) return law;
  double max_d = law.d_min;
  for (double d : distances_km) max_d = std::max(max_d, d);
  if (!(max_d > law.d_min)) return law;

  const double log_lo = std::log(law.d_min);
  const double log_span = std::log(max_d) - log_lo;
  std::vector<double> counts(kDistanceBins, 0.0);
  for (double d : distances_km) {
    const double x = std::log(std::max(d, law.d_min));
    auto bin = static_cast<std::size_t>(kDistanceBins * (x - log_lo) / log_span);
    counts[std::min(bin, kDistanceBins - 1)] += 1.0;
  }
  const double total = static_cast<double>(distances_km.size());
  std::vector<std::pair<double, double>> points;  // (ln d, ln p)
  for (std::size_t k = 0; k < kDistanceBins; ++k) {
    if (counts[k] == 0.0) continue;
    const double center = log_lo + log_span * (k + 0.5) / kDistanceBins;
    points.emplace_back(center, std::log(counts[k] / total));
  }
  if (points.size() < 2) return law;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  law.a = std::exp(intercept);
  law.b = slope;
  law.fallback = false;
  return law;
}

/// Pairwise distances inside every user's train POI set.
inline GeoPowerLaw fit_geo_power_law(const DatasetBundle& b) {
  std::vector<double> distances;
  std::size_t eligible_users = 0;
  std::vector<UnitVector> pts;
  for (UserId u = 0; u < b.users(); ++u) {
    const auto row = b.train.row(u);
    if (row.size() < 2) continue;
    ++eligible_users;
    pts.clear();
    for (const auto& c : row) pts.push_back(UnitVector::from(b.geo.at(c.poi)));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        distances.push_back(pts[i].distance_km(pts[j]));
      }
    }
  }
  GeoPowerLaw law;
  if (eligible_users >= 2) law = fit_distance_power_law(distances);
  if (law.fallback) {
    std::cerr << "warning: too few distance pairs in " << b.name
              << " for a power-law fit; using w(d) = 1/d\n";
  }
  return law;
}

/// Sum over the user's train POIs of ln w(dist), clamped to +-700. Log-space
/// product of pairwise probabilities, per candidate.
inline std::vector<double> geo_log_scores(const GeoPowerLaw& law,
                                          std::span<const UnitVector> embedded_pois,
                                          const DatasetBundle& b, UserId user,
                                          std::span<const PoiId> candidates) {
  std::vector<double> out(candidates.size(), 0.0);
  const auto row = b.train.row(user);
  std::vector<UnitVector> history;
  history.reserve(row.size());
  for (const auto& c : row) history.push_back(embedded_pois[c.poi]);
  const double log_a = std::log(law.a);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& p = embedded_pois[candidates[i]];
    double sum = 0.0;
    for (const auto& l : history) {
      sum += log_a + law.b * std::log(std::max(l.distance_km(p), law.d_min));
    }
    out[i] = std::clamp(sum, -kLogScoreClamp, kLogScoreClamp);
  }
  return out;
}

inline std::vector<double> geo_scores(const GeoPowerLaw& law,
                                      std::span<const UnitVector> embedded_pois,
                                      const DatasetBundle& b, UserId user,
                                      std::span<const PoiId> candidates) {
  auto out = geo_log_scores(law, embedded_pois, b, user, candidates);
  for (double& v : out) v = std::exp(v);
  return out;
}

/// Interest, social and geographical channels. Mixing weights of the
/// original model are left to the fusion rules.
class Usg final : public ContextModel {
 public:
  explicit Usg(const DatasetBundle& b) : bundle_(b) {
    if (!b.has_social()) {
      throw ContextUnavailableError("USG requires social relations, missing in " +
                                    b.name);
    }
    embedded_ = embed_pois(b);
    visitors_ = poi_visitors(b.train);
    geo_ = fit_geo_power_law(b);
  }

  std::string_view name() const override { return "USG"; }
  ChannelNames channels() const override { return {"interest", "social", "geo"}; }

  ContextScores scores(UserId user) const override {
    auto candidates = candidate_set(bundle_, user);
    if (bundle_.train.row(user).empty()) {
      return zero_scores(user, channels(), std::move(candidates));
    }
    ContextScores s;
    s.user = user;
    s.channels = channels();
    s.values[0] = gather(user_interest_scores(bundle_, visitors_, user), candidates);
    s.values[1] = gather(social_interest_scores(bundle_, user), candidates);
    // Normalized in log space so products far below 1e-308 keep their order.
    auto logs = geo_log_scores(geo_, embedded_, bundle_, user, candidates);
    double max_log = -std::numeric_limits<double>::infinity();
    for (double l : logs) max_log = std::max(max_log, l);
    for (double& l : logs) l = std::exp(l - max_log);
    s.values[2] = std::move(logs);
    s.candidates = std::move(candidates);
    max_normalize(std::span<double>(s.values[0]));
    max_normalize(std::span<double>(s.values[1]));
    return s;
  }

  const GeoPowerLaw& geo_law() const { return geo_; }

 private:
  const DatasetBundle& bundle_;
  std::vector<UnitVector> embedded_;
  std::vector<std::vector<UserId>> visitors_;
  GeoPowerLaw geo_;
};

}  // namespace poibench

#endif  // POIBENCH_USG_HPP_
