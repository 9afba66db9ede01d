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

#ifndef POIBENCH_TESTS_SUPPORT_FIXTURES_HPP_
#define POIBENCH_TESTS_SUPPORT_FIXTURES_HPP_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "poibench/poibench.hpp"

namespace poibench::testing {

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "poibench") {
    static std::atomic<unsigned> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(stamp) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Builds small bundles by hand. Train entries get their insertion index as
/// order key unless one is given.
class BundleBuilder {
 public:
  BundleBuilder(std::size_t users, std::size_t pois) : users_(users), pois_(pois) {
    for (PoiId p = 0; p < pois; ++p) {
      coords_.emplace_back(40.0 + 0.01 * p, -74.0 + 0.005 * (p % 7));
    }
  }

  BundleBuilder& name(std::string n) {
    name_ = std::move(n);
    return *this;
  }
  BundleBuilder& train(UserId u, PoiId p, std::uint32_t freq = 1) {
    train_.push_back({u, p, freq, static_cast<std::int64_t>(train_.size())});
    return *this;
  }
  BundleBuilder& test(UserId u, PoiId p, std::uint32_t freq = 1) {
    test_.push_back({u, p, freq, static_cast<std::int64_t>(test_.size())});
    return *this;
  }
  BundleBuilder& tune(UserId u, PoiId p, std::uint32_t freq = 1) {
    tune_.push_back({u, p, freq, static_cast<std::int64_t>(tune_.size())});
    return *this;
  }
  BundleBuilder& friends(UserId u, UserId v) {
    edges_.emplace_back(u, v);
    return *this;
  }
  BundleBuilder& category(PoiId p, CategoryId c) {
    cats_.emplace_back(p, c);
    return *this;
  }
  BundleBuilder& coordinate(PoiId p, double lat, double lon) {
    coords_[p] = {lat, lon};
    return *this;
  }

  DatasetBundle build() const {
    DatasetBundle b;
    b.name = name_;
    b.train = CheckInMatrix::from_entries(users_, pois_, train_, false);
    b.test = CheckInMatrix::from_entries(users_, pois_, test_, false);
    b.tune = CheckInMatrix::from_entries(users_, pois_, tune_, false);
    b.social = SocialGraph::from_edges(users_, edges_);
    b.geo = GeoIndex(pois_);
    for (PoiId p = 0; p < pois_; ++p) b.geo.set(p, {coords_[p].first, coords_[p].second});
    b.categories = CategoryIndex::from_pairs(pois_, cats_);
    return b;
  }

 private:
  std::string name_ = "Hand";
  std::size_t users_, pois_;
  std::vector<CheckInEntry> train_, test_, tune_;
  std::vector<std::pair<UserId, UserId>> edges_;
  std::vector<std::pair<PoiId, CategoryId>> cats_;
  std::vector<std::pair<double, double>> coords_;
};

/// The micro dataset used by end-to-end tests.
inline SyntheticSpec micro_spec(std::string name = "Micro", std::uint64_t seed = 7) {
  SyntheticSpec s;
  s.name = std::move(name);
  s.users = 30;
  s.pois = 80;
  s.categories = 8;
  s.hotspots = 3;
  s.mean_visits = 10;
  s.friends_per_user = 4;
  s.seed = seed;
  return s;
}

/// Random ranked lists over `pois` POIs for users 0..users-1.
inline std::vector<RankedList> random_lists(Rng& rng, std::size_t users, std::size_t pois,
                                            std::size_t length) {
  std::vector<RankedList> lists(users);
  for (UserId u = 0; u < users; ++u) {
    std::vector<PoiId> all(pois);
    for (PoiId p = 0; p < pois; ++p) all[p] = p;
    shuffle(all, rng);
    lists[u].user = u;
    const std::size_t n = std::min(length, pois);
    for (std::size_t i = 0; i < n; ++i) {
      lists[u].items.push_back({all[i], 1.0 - static_cast<double>(i) / (n + 1.0)});
    }
  }
  return lists;
}

/// A random bundle with the given shape: every user gets 1..max_visits train
/// POIs and a disjoint random test set.
inline DatasetBundle random_bundle(Rng& rng, std::size_t users, std::size_t pois,
                                   std::size_t max_visits = 8) {
  BundleBuilder bb(users, pois);
  for (UserId u = 0; u < users; ++u) {
    std::vector<PoiId> all(pois);
    for (PoiId p = 0; p < pois; ++p) all[p] = p;
    shuffle(all, rng);
    const std::size_t n = 1 + uniform_index(rng, std::min(max_visits, pois - 1));
    for (std::size_t i = 0; i < n; ++i) {
      bb.train(u, all[i], static_cast<std::uint32_t>(1 + uniform_index(rng, 4)));
    }
    const std::size_t t = uniform_index(rng, std::min<std::size_t>(5, pois - n) + 1);
    for (std::size_t i = 0; i < t; ++i) bb.test(u, all[n + i]);
  }
  for (UserId u = 0; u + 1 < users; ++u) {
    if (uniform01(rng) < 0.5) bb.friends(u, static_cast<UserId>(u + 1 + uniform_index(rng, users - u - 1)));
  }
  for (PoiId p = 0; p < pois; ++p) {
    bb.category(p, static_cast<CategoryId>(p % 5));
    bb.coordinate(p, 40.0 + uniform_real(rng, 0, 0.2), -74.0 + uniform_real(rng, 0, 0.2));
  }
  return bb.build();
}

}  // namespace poibench::testing

#endif  // POIBENCH_TESTS_SUPPORT_FIXTURES_HPP_
