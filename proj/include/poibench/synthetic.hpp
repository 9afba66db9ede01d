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

#ifndef POIBENCH_SYNTHETIC_HPP_
#define POIBENCH_SYNTHETIC_HPP_

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "poibench/core.hpp"
#include "poibench/dataset.hpp"

namespace poibench {

/// Parameters of a generated check-in dataset. Users live near one of a few
/// hotspots, prefer a couple of categories, follow friends, and move between
/// nearby venues, so every context channel carries signal.
struct SyntheticSpec {
  std::string name = "Synthetic";
  std::size_t users = 50;
  std::size_t pois = 200;
  std::size_t categories = 12;   // 0 disables the categories file
  std::size_t hotspots = 4;
  double region_km = 30.0;
  double hotspot_sigma_km = 2.5;
  std::size_t mean_visits = 14;  // distinct POIs per user
  std::size_t friends_per_user = 4;  // 0 disables the social file
  double train_fraction = 0.7;
  double tune_fraction = 0.1;
  bool timestamps = true;
  Coordinate origin{40.75, -73.98};
  std::uint64_t seed = 7;
};

inline DatasetBundle make_synthetic_dataset(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const double km_lat = 1.0 / 111.195;
  const double km_lon = km_lat / std::cos(deg_to_rad(spec.origin.latitude));
  auto offset = [&](double x_km, double y_km) {
    return Coordinate{spec.origin.latitude + y_km * km_lat,
                      spec.origin.longitude + x_km * km_lon};
  };

  std::vector<std::pair<double, double>> hotspots(std::max<std::size_t>(spec.hotspots, 1));
  for (auto& h : hotspots) {
    h = {uniform_real(rng, 0, spec.region_km), uniform_real(rng, 0, spec.region_km)};
  }

  // POIs
  std::vector<std::pair<double, double>> poi_xy(spec.pois);
  std::vector<std::size_t> poi_hotspot(spec.pois);
  std::vector<double> poi_weight(spec.pois);
  std::vector<std::vector<CategoryId>> poi_cats(spec.pois);
  for (std::size_t p = 0; p < spec.pois; ++p) {
    const std::size_t h = uniform_index(rng, hotspots.size());
    poi_hotspot[p] = h;
    poi_xy[p] = {hotspots[h].first + spec.hotspot_sigma_km * standard_normal(rng),
                 hotspots[h].second + spec.hotspot_sigma_km * standard_normal(rng)};
    // Pareto(1.2) popularity
    poi_weight[p] = std::pow(1.0 - uniform01(rng), -1.0 / 1.2);
    if (spec.categories > 0) {
      poi_cats[p].push_back(static_cast<CategoryId>(p < spec.categories
                                                        ? p
                                                        : uniform_index(rng, spec.categories)));
      if (uniform01(rng) < 0.3) {
        const auto extra = static_cast<CategoryId>(uniform_index(rng, spec.categories));
        if (extra != poi_cats[p][0]) poi_cats[p].push_back(extra);
      }
    }
  }

  // Users
  std::vector<std::size_t> home(spec.users);
  std::vector<std::vector<CategoryId>> taste(spec.users);
  for (std::size_t u = 0; u < spec.users; ++u) {
    home[u] = uniform_index(rng, hotspots.size());
    if (spec.categories > 0) {
      for (int i = 0; i < 2; ++i) {
        taste[u].push_back(static_cast<CategoryId>(uniform_index(rng, spec.categories)));
      }
    }
  }

  // Friendships, mostly within the same hotspot.
  std::vector<std::pair<UserId, UserId>> edges;
  if (spec.friends_per_user > 0 && spec.users > 1) {
    std::vector<std::vector<UserId>> by_home(hotspots.size());
    for (UserId u = 0; u < spec.users; ++u) by_home[home[u]].push_back(u);
    for (UserId u = 0; u < spec.users; ++u) {
      const std::size_t want = spec.friends_per_user / 2 + uniform_index(rng, 2);
      for (std::size_t i = 0; i < want; ++i) {
        const auto& local = by_home[home[u]];
        UserId v = (uniform01(rng) < 0.8 && local.size() > 1)
                       ? local[uniform_index(rng, local.size())]
                       : static_cast<UserId>(uniform_index(rng, spec.users));
        if (v != u) edges.emplace_back(u, v);
      }
    }
  }
  SocialGraph social = SocialGraph::from_edges(spec.users, edges);

  // Visits. Each step samples from the POIs of the home hotspot, of the
  // hotspot of the previous venue and those visited by friends.
  std::vector<std::vector<PoiId>> pois_by_hotspot(hotspots.size());
  for (PoiId p = 0; p < spec.pois; ++p) pois_by_hotspot[poi_hotspot[p]].push_back(p);
  std::vector<std::vector<PoiId>> visited(spec.users);
  std::vector<CheckInEntry> train, tune, test;
  std::vector<double> social_boost(spec.pois, 0.0);
  std::vector<char> taken(spec.pois, 0);
  std::vector<char> in_pool(spec.pois, 0);
  std::int64_t clock = 1'600'000'000;
  for (UserId u = 0; u < spec.users; ++u) {
    const std::size_t visits = std::min<std::size_t>(
        spec.pois, 2 + uniform_index(rng, 2 * std::max<std::size_t>(spec.mean_visits, 2) - 3));
    std::vector<PoiId> boosted;
    for (UserId f : social.friends(u)) {
      for (PoiId p : visited[f]) {
        if (social_boost[p] == 0.0) boosted.push_back(p);
        social_boost[p] += 1.0;
      }
    }
    std::pair<double, double> here = hotspots[home[u]];
    std::size_t here_hotspot = home[u];
    std::vector<CheckInEntry> seq;
    std::vector<PoiId> pool;
    std::vector<double> w;
    for (std::size_t i = 0; i < visits; ++i) {
      pool.clear();
      auto add = [&](PoiId p) {
        if (!taken[p] && !in_pool[p]) {
          in_pool[p] = 1;
          pool.push_back(p);
        }
      };
      for (PoiId p : pois_by_hotspot[home[u]]) add(p);
      for (PoiId p : pois_by_hotspot[here_hotspot]) add(p);
      for (PoiId p : boosted) add(p);
      if (pool.empty()) {
        for (PoiId p = 0; p < spec.pois; ++p) add(p);
      }
      std::sort(pool.begin(), pool.end());
      w.assign(pool.size(), 0.0);
      double total = 0.0;
      for (std::size_t k = 0; k < pool.size(); ++k) {
        const PoiId p = pool[k];
        in_pool[p] = 0;
        const double dx = poi_xy[p].first - here.first;
        const double dy = poi_xy[p].second - here.second;
        const double d = std::sqrt(dx * dx + dy * dy);
        double cat = 1.0;
        for (CategoryId c : poi_cats[p]) {
          for (CategoryId t : taste[u]) {
            if (c == t) cat += 3.0;
          }
        }
        w[k] = poi_weight[p] * cat * (1.0 + 2.0 * social_boost[p]) * std::exp(-d / 3.0);
        total += w[k];
      }
      if (pool.empty() || !(total > 0.0)) break;
      double r = uniform01(rng) * total;
      std::size_t k = 0;
      for (; k + 1 < pool.size(); ++k) {
        r -= w[k];
        if (r <= 0.0) break;
      }
      const PoiId pick = pool[k];
      taken[pick] = 1;
      visited[u].push_back(pick);
      clock += 600 + static_cast<std::int64_t>(uniform_index(rng, 86'400));
      const auto freq = static_cast<std::uint32_t>(1 + std::floor(-std::log(1.0 - uniform01(rng)) * 1.5));
      seq.push_back({u, pick, freq, clock});
      here = poi_xy[pick];
      here_hotspot = poi_hotspot[pick];
    }
    for (PoiId p : visited[u]) taken[p] = 0;
    for (PoiId p : boosted) social_boost[p] = 0.0;
    const auto n = seq.size();
    const auto n_train = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(spec.train_fraction * n)));
    const auto n_tune = std::min(n - std::min(n, n_train),
                                 static_cast<std::size_t>(std::llround(spec.tune_fraction * n)));
    for (std::size_t i = 0; i < n; ++i) {
      (i < n_train ? train : i < n_train + n_tune ? tune : test).push_back(seq[i]);
    }
  }

  DatasetBundle b;
  b.name = spec.name;
  auto strip = [&](std::vector<CheckInEntry>& v) {
    if (!spec.timestamps) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i].order = static_cast<std::int64_t>(i);
    }
  };
  strip(train);
  strip(tune);
  strip(test);
  b.train = CheckInMatrix::from_entries(spec.users, spec.pois, std::move(train), spec.timestamps);
  b.tune = CheckInMatrix::from_entries(spec.users, spec.pois, std::move(tune), spec.timestamps);
  b.test = CheckInMatrix::from_entries(spec.users, spec.pois, std::move(test), spec.timestamps);
  b.social = std::move(social);
  b.geo = GeoIndex(spec.pois);
  for (PoiId p = 0; p < spec.pois; ++p) {
    const auto c = offset(poi_xy[p].first, poi_xy[p].second);
    // Coordinates pass through text files; round to 1e-7 degrees so the
    // written form reloads bit-identically.
    b.geo.set(p, {std::round(c.latitude * 1e7) / 1e7, std::round(c.longitude * 1e7) / 1e7});
  }
  std::vector<std::pair<PoiId, CategoryId>> pairs;
  for (PoiId p = 0; p < spec.pois; ++p) {
    for (CategoryId c : poi_cats[p]) pairs.emplace_back(p, c);
  }
  b.categories = CategoryIndex::from_pairs(spec.pois, std::move(pairs));
  return b;
}

}  // namespace poibench

#endif  // POIBENCH_SYNTHETIC_HPP_
