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

#ifndef POIBENCH_DATASET_HPP_
#define POIBENCH_DATASET_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "poibench/core.hpp"

namespace poibench {

/// One (user, poi) cell of a check-in matrix. `order` is the unix timestamp
/// when the source file carries one, otherwise the line index in the file.
struct CheckIn {
  PoiId poi = 0;
  std::uint32_t frequency = 0;
  std::int64_t order = 0;

  friend bool operator==(const CheckIn&, const CheckIn&) = default;
};

struct CheckInEntry {
  UserId user = 0;
  PoiId poi = 0;
  std::uint32_t frequency = 0;
  std::int64_t order = 0;
};

/// Sparse user x POI visit-frequency matrix in compressed row form. Rows are
/// sorted by POI id; zero cells are never stored.
class CheckInMatrix {
 public:
  CheckInMatrix() : offsets_(1, 0) {}

  CheckInMatrix(std::size_t users, std::size_t pois)
      : users_(users), pois_(pois), offsets_(users + 1, 0) {}

  /// Builds from unsorted entries. Duplicate cells are merged (frequencies
  /// summed, earliest order kept). Throws ValidationError on ids outside the
  /// declared ranges or zero frequencies.
  static CheckInMatrix from_entries(std::size_t users, std::size_t pois,
                                    std::vector<CheckInEntry> entries,
                                    bool timestamped = false) {
    CheckInMatrix m(users, pois);
    m.timestamped_ = timestamped;
    for (const auto& e : entries) {
      if (e.user >= users) {
        throw ValidationError("user id " + std::to_string(e.user) +
                              " out of range (users = " + std::to_string(users) +
                              ")");
      }
      if (e.poi >= pois) {
        throw ValidationError("poi id " + std::to_string(e.poi) +
                              " out of range (pois = " + std::to_string(pois) +
                              ")");
      }
      if (e.frequency == 0) {
        throw ValidationError("zero frequency for user " +
                              std::to_string(e.user) + ", poi " +
                              std::to_string(e.poi));
      }
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return a.user != b.user ? a.user < b.user : a.poi < b.poi;
    });
    m.cells_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
      const auto& first = entries[i];
      CheckIn cell{first.poi, 0, first.order};
      std::size_t j = i;
      for (; j < entries.size() && entries[j].user == first.user &&
             entries[j].poi == first.poi;
           ++j) {
        cell.frequency += entries[j].frequency;
        cell.order = std::min(cell.order, entries[j].order);
      }
      m.cells_.push_back(cell);
      ++m.offsets_[first.user + 1];
      i = j;
    }
    for (std::size_t u = 0; u < users; ++u) m.offsets_[u + 1] += m.offsets_[u];
    return m;
  }

  std::size_t users() const { return users_; }
  std::size_t pois() const { return pois_; }
  std::size_t entries() const { return cells_.size(); }
  bool timestamped() const { return timestamped_; }

  /// entries / (users * pois); 0 for an empty shape.
  double density() const {
    const double cells = static_cast<double>(users_) * static_cast<double>(pois_);
    return cells > 0 ? static_cast<double>(cells_.size()) / cells : 0.0;
  }

  std::span<const CheckIn> row(UserId user) const {
    return {cells_.data() + offsets_[user],
            cells_.data() + offsets_[user + 1]};
  }

  std::uint32_t frequency(UserId user, PoiId poi) const {
    const auto r = row(user);
    auto it = std::lower_bound(
        r.begin(), r.end(), poi,
        [](const CheckIn& c, PoiId p) { return c.poi < p; });
    return it != r.end() && it->poi == poi ? it->frequency : 0;
  }

  bool contains(UserId user, PoiId poi) const { return frequency(user, poi) > 0; }

  std::uint64_t total_frequency(UserId user) const {
    std::uint64_t sum = 0;
    for (const auto& c : row(user)) sum += c.frequency;
    return sum;
  }

  /// POIs of a user's row sorted ascending by (order, poi).
  std::vector<PoiId> ordered_history(UserId user) const {
    std::vector<CheckIn> cells(row(user).begin(), row(user).end());
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
      return a.order != b.order ? a.order < b.order : a.poi < b.poi;
    });
    std::vector<PoiId> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(c.poi);
    return out;
  }

  std::vector<CheckInEntry> to_entries() const {
    std::vector<CheckInEntry> out;
    out.reserve(cells_.size());
    for (UserId u = 0; u < users_; ++u) {
      for (const auto& c : row(u)) out.push_back({u, c.poi, c.frequency, c.order});
    }
    return out;
  }

  friend bool operator==(const CheckInMatrix&, const CheckInMatrix&) = default;

 private:
  std::size_t users_ = 0;
  std::size_t pois_ = 0;
  bool timestamped_ = false;
  std::vector<std::size_t> offsets_;
  std::vector<CheckIn> cells_;
};

/// Undirected friendship graph without self-loops.
class SocialGraph {
 public:
  SocialGraph() : offsets_(1, 0) {}

  /// Duplicate and reversed pairs collapse to one edge. Self-loops and ids
  /// >= users throw ValidationError.
  static SocialGraph from_edges(std::size_t users,
                                std::vector<std::pair<UserId, UserId>> edges) {
    for (auto& [a, b] : edges) {
      if (a >= users || b >= users) {
        throw ValidationError("social edge (" + std::to_string(a) + ", " +
                              std::to_string(b) + ") out of range (users = " +
                              std::to_string(users) + ")");
      }
      if (a == b) {
        throw ValidationError("social self-loop on user " + std::to_string(a));
      }
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    SocialGraph g;
    g.users_ = users;
    g.edges_ = edges;
    g.offsets_.assign(users + 1, 0);
    for (const auto& [a, b] : edges) {
      ++g.offsets_[a + 1];
      ++g.offsets_[b + 1];
    }
    for (std::size_t u = 0; u < users; ++u) g.offsets_[u + 1] += g.offsets_[u];
    g.adjacency_.resize(edges.size() * 2);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
      g.adjacency_[fill[a]++] = b;
      g.adjacency_[fill[b]++] = a;
    }
    for (std::size_t u = 0; u < users; ++u) {
      std::sort(g.adjacency_.begin() + g.offsets_[u],
                g.adjacency_.begin() + g.offsets_[u + 1]);
    }
    return g;
  }

  std::size_t users() const { return users_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  /// Sorted neighbour list; empty for users beyond the graph.
  std::span<const UserId> friends(UserId user) const {
    if (user >= users_) return {};
    return {adjacency_.data() + offsets_[user],
            adjacency_.data() + offsets_[user + 1]};
  }

  /// Canonical (low, high) pairs, sorted.
  const std::vector<std::pair<UserId, UserId>>& edges() const { return edges_; }

  friend bool operator==(const SocialGraph& a, const SocialGraph& b) {
    return a.users_ == b.users_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t users_ = 0;
  std::vector<std::pair<UserId, UserId>> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<UserId> adjacency_;
};

class GeoIndex {
 public:
  GeoIndex() = default;
  explicit GeoIndex(std::size_t pois) : coords_(pois), present_(pois, 0) {}

  void set(PoiId poi, Coordinate c) {
    coords_.at(poi) = c;
    present_.at(poi) = 1;
  }
  bool has(PoiId poi) const { return poi < present_.size() && present_[poi]; }
  const Coordinate& at(PoiId poi) const { return coords_[poi]; }
  std::size_t size() const { return coords_.size(); }

  friend bool operator==(const GeoIndex&, const GeoIndex&) = default;

 private:
  std::vector<Coordinate> coords_;
  std::vector<char> present_;
};

/// POI -> category set. Category ids are dense in [0, category_count()).
class CategoryIndex {
 public:
  CategoryIndex() : offsets_(1, 0) {}

  static CategoryIndex from_pairs(std::size_t pois,
                                  std::vector<std::pair<PoiId, CategoryId>> pairs) {
    for (const auto& [p, c] : pairs) {
      if (p >= pois) {
        throw ValidationError("category entry for poi " + std::to_string(p) +
                              " out of range (pois = " + std::to_string(pois) +
                              ")");
      }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    CategoryIndex idx;
    idx.offsets_.assign(pois + 1, 0);
    std::vector<char> seen;
    for (const auto& [p, c] : pairs) {
      ++idx.offsets_[p + 1];
      idx.cats_.push_back(c);
      if (c >= seen.size()) seen.resize(c + 1, 0);
      seen[c] = 1;
    }
    for (std::size_t p = 0; p < pois; ++p) idx.offsets_[p + 1] += idx.offsets_[p];
    for (std::size_t c = 0; c < seen.size(); ++c) {
      if (!seen[c]) {
        throw ValidationError("category ids not dense: id " + std::to_string(c) +
                              " unused below maximum " +
                              std::to_string(seen.size() - 1));
      }
    }
    idx.category_count_ = seen.size();
    return idx;
  }

  std::size_t category_count() const { return category_count_; }
  bool empty() const { return category_count_ == 0; }

  std::span<const CategoryId> categories(PoiId poi) const {
    if (poi + 1 >= offsets_.size()) return {};
    return {cats_.data() + offsets_[poi], cats_.data() + offsets_[poi + 1]};
  }

  std::size_t pois() const { return offsets_.size() - 1; }

  friend bool operator==(const CategoryIndex&, const CategoryIndex&) = default;

 private:
  std::size_t category_count_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<CategoryId> cats_;
};

struct DatasetBundle {
  std::string name;
  CheckInMatrix train;
  CheckInMatrix test;
  CheckInMatrix tune;
  SocialGraph social;
  GeoIndex geo;
  CategoryIndex categories;

  std::size_t users() const { return train.users(); }
  std::size_t pois() const { return train.pois(); }
  bool has_social() const { return !social.empty(); }
  bool has_categories() const { return !categories.empty(); }
};

struct DatasetStats {
  std::size_t users = 0;
  std::size_t pois = 0;
  std::size_t check_ins = 0;
  std::size_t social = 0;
  std::size_t categories = 0;
  double density = 0.0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

struct UserGroups {
  std::vector<UserId> active;    // ascending
  std::vector<UserId> inactive;  // ascending
  double percentage = 0.0;
  std::vector<char> is_active;   // indexed by user id

  std::size_t users() const { return is_active.size(); }
};

// ---------------------------------------------------------------------------
// File layout

struct DatasetFiles {
  std::filesystem::path dir;
  std::string name;

  std::filesystem::path file(std::string_view suffix) const {
    return dir / (name + std::string(suffix));
  }
  std::filesystem::path data_size() const { return file("_data_size.txt"); }
  std::filesystem::path train() const { return file("_train.txt"); }
  std::filesystem::path test() const { return file("_test.txt"); }
  std::filesystem::path tune() const { return file("_tune.txt"); }
  std::filesystem::path social() const { return file("_social_relations.txt"); }
  std::filesystem::path coordinates() const { return file("_poi_coos.txt"); }
  std::filesystem::path categories() const { return file("_poi_categories.txt"); }
};

inline DatasetFiles dataset_files(const std::filesystem::path& data_directory,
                                  const std::string& dataset_name) {
  return {data_directory / dataset_name, dataset_name};
}

/// Which optional contexts a dataset directory provides, from file presence
/// alone (no parsing). Used for run planning.
struct ContextAvailability {
  bool social = false;
  bool categories = false;
};

inline ContextAvailability probe_contexts(const std::filesystem::path& data_directory,
                                          const std::string& dataset_name) {
  namespace fs = std::filesystem;
  const auto files = dataset_files(data_directory, dataset_name);
  auto nonempty = [](const fs::path& p) {
    std::error_code ec;
    return fs::is_regular_file(p, ec) && fs::file_size(p, ec) > 0;
  };
  return {nonempty(files.social()), nonempty(files.categories())};
}

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetIncompleteError(path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

/// Calls fn(line_number, fields) for every non-blank line.
template <typename Fn>
void for_each_record(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto fields = split_fields(line);
    if (!fields.empty()) fn(line_no, fields);
    pos = end + 1;
  }
}

template <typename T>
T field_as(std::string_view field, const std::string& file, std::size_t line,
           const char* what) {
  T value{};
  if (!parse_number(field, value)) {
    throw ParseError(file, line,
                     std::string("malformed ") + what + " '" + std::string(field) +
                         "'");
  }
  return value;
}

inline CheckInMatrix read_check_ins(const std::filesystem::path& path,
                                    std::size_t users, std::size_t pois,
                                    std::size_t keep_users) {
  const std::string file = path.string();
  const std::string text = read_file(path);
  std::vector<CheckInEntry> entries;
  std::optional<bool> timestamped;
  std::int64_t index = 0;
  for_each_record(text, [&](std::size_t line, const auto& fields) {
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(file, line,
                       "expected 'userId poiId frequency [timestamp]', got " +
                           std::to_string(fields.size()) + " fields");
    }
    const bool has_ts = fields.size() == 4;
    if (!timestamped) timestamped = has_ts;
    if (*timestamped != has_ts) {
      throw ParseError(file, line, "timestamp column present on some lines only");
    }
    CheckInEntry e;
    e.user = field_as<UserId>(fields[0], file, line, "user id");
    e.poi = field_as<PoiId>(fields[1], file, line, "poi id");
    e.frequency = field_as<std::uint32_t>(fields[2], file, line, "frequency");
    e.order = has_ts ? field_as<std::int64_t>(fields[3], file, line, "timestamp")
                     : index;
    ++index;
    if (e.user >= users || e.poi >= pois) {
      throw ValidationError(file + ":" + std::to_string(line) + ": id out of " +
                            "declared range (users = " + std::to_string(users) +
                            ", pois = " + std::to_string(pois) + ")");
    }
    if (e.frequency == 0) {
      throw ValidationError(file + ":" + std::to_string(line) +
                            ": frequency must be >= 1");
    }
    if (e.user < keep_users) entries.push_back(e);
  });
  return CheckInMatrix::from_entries(keep_users, pois, std::move(entries),
                                     timestamped.value_or(false));
}

inline void check_disjoint(const CheckInMatrix& a, const CheckInMatrix& b,
                           const char* a_name, const char* b_name) {
  for (UserId u = 0; u < a.users(); ++u) {
    const auto ra = a.row(u);
    const auto rb = b.row(u);
    auto ia = ra.begin();
    auto ib = rb.begin();
    while (ia != ra.end() && ib != rb.end()) {
      if (ia->poi < ib->poi) {
        ++ia;
      } else if (ib->poi < ia->poi) {
        ++ib;
      } else {
        throw ValidationError(std::string(a_name) + " and " + b_name +
                              " splits share entry (user " + std::to_string(u) +
                              ", poi " + std::to_string(ia->poi) + ")");
      }
    }
  }
}

}  // namespace detail

/// Loads `<dir>/<name>/<name>_*.txt`. With limit_users > 0 only user ids
/// below the limit are kept; ids are never renumbered.
inline DatasetBundle load_dataset(const std::filesystem::path& data_directory,
                                  const std::string& dataset_name,
                                  long long limit_users = -1) {
  namespace fs = std::filesystem;
  if (limit_users == 0 || limit_users < -1) {
    throw ConfigError("limitUsers must be -1 or positive, got " +
                      std::to_string(limit_users));
  }
  const auto files = dataset_files(data_directory, dataset_name);
  for (const auto& required : {files.data_size(), files.train(), files.test(),
                               files.tune(), files.coordinates()}) {
    if (!fs::is_regular_file(required)) {
      throw DatasetIncompleteError(required.string());
    }
  }

  std::size_t users = 0, pois = 0;
  {
    const std::string file = files.data_size().string();
    bool seen = false;
    detail::for_each_record(detail::read_file(files.data_size()),
                            [&](std::size_t line, const auto& fields) {
      if (seen || fields.size() != 2) {
        throw ParseError(file, line, "expected a single 'userCount poiCount' line");
      }
      users = detail::field_as<std::size_t>(fields[0], file, line, "user count");
      pois = detail::field_as<std::size_t>(fields[1], file, line, "poi count");
      seen = true;
    });
    if (!seen) throw ParseError(file, 1, "missing 'userCount poiCount' line");
  }
  const std::size_t keep =
      limit_users > 0 ? std::min<std::size_t>(users, static_cast<std::size_t>(limit_users))
                      : users;

  DatasetBundle b;
  b.name = dataset_name;
  b.train = detail::read_check_ins(files.train(), users, pois, keep);
  b.test = detail::read_check_ins(files.test(), users, pois, keep);
  b.tune = detail::read_check_ins(files.tune(), users, pois, keep);
  detail::check_disjoint(b.train, b.test, "train", "test");

  b.geo = GeoIndex(pois);
  {
    const std::string file = files.coordinates().string();
    detail::for_each_record(detail::read_file(files.coordinates()),
                            [&](std::size_t line, const auto& fields) {
      if (fields.size() != 3) {
        throw ParseError(file, line, "expected 'poiId latitude longitude'");
      }
      const auto poi = detail::field_as<PoiId>(fields[0], file, line, "poi id");
      const auto lat = detail::field_as<double>(fields[1], file, line, "latitude");
      const auto lon = detail::field_as<double>(fields[2], file, line, "longitude");
      if (poi >= pois) {
        throw ValidationError(file + ":" + std::to_string(line) +
                              ": poi id out of declared range");
      }
      if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0)) {
        throw ValidationError(file + ":" + std::to_string(line) +
                              ": coordinate out of range");
      }
      b.geo.set(poi, {lat, lon});
    });
  }
  for (const CheckInMatrix* m : {&b.train, &b.test, &b.tune}) {
    for (UserId u = 0; u < m->users(); ++u) {
      for (const auto& c : m->row(u)) {
        if (!b.geo.has(c.poi)) {
          throw ValidationError("poi " + std::to_string(c.poi) +
                                " has check-ins but no coordinate");
        }
      }
    }
  }

  if (fs::is_regular_file(files.social())) {
    const std::string file = files.social().string();
    std::vector<std::pair<UserId, UserId>> edges;
    detail::for_each_record(detail::read_file(files.social()),
                            [&](std::size_t line, const auto& fields) {
      if (fields.size() != 2) throw ParseError(file, line, "expected 'userId1 userId2'");
      const auto a = detail::field_as<UserId>(fields[0], file, line, "user id");
      const auto c = detail::field_as<UserId>(fields[1], file, line, "user id");
      if (a >= users || c >= users) {
        throw ValidationError(file + ":" + std::to_string(line) +
                              ": user id out of declared range");
      }
      if (a == c) {
        throw ValidationError(file + ":" + std::to_string(line) + ": self-loop");
      }
      if (a < keep && c < keep) edges.emplace_back(a, c);
    });
    b.social = SocialGraph::from_edges(keep, std::move(edges));
  } else {
    b.social = SocialGraph::from_edges(keep, {});
  }

  if (fs::is_regular_file(files.categories())) {
    const std::string file = files.categories().string();
    std::vector<std::pair<PoiId, CategoryId>> pairs;
    detail::for_each_record(detail::read_file(files.categories()),
                            [&](std::size_t line, const auto& fields) {
      if (fields.size() != 2) throw ParseError(file, line, "expected 'poiId categoryId'");
      pairs.emplace_back(detail::field_as<PoiId>(fields[0], file, line, "poi id"),
                         detail::field_as<CategoryId>(fields[1], file, line,
                                                      "category id"));
    });
    b.categories = CategoryIndex::from_pairs(pois, std::move(pairs));
  } else {
    b.categories = CategoryIndex::from_pairs(pois, {});
  }
  return b;
}

/// Writes a bundle in the on-disk layout read by load_dataset. Optional files
/// are only written when the corresponding context is non-empty.
inline void write_dataset(const DatasetBundle& b,
                          const std::filesystem::path& data_directory) {
  namespace fs = std::filesystem;
  const auto files = dataset_files(data_directory, b.name);
  fs::create_directories(files.dir);
  auto open = [](const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + p.string());
    return out;
  };
  {
    auto out = open(files.data_size());
    out << b.users() << ' ' << b.pois() << '\n';
  }
  auto write_matrix = [&](const CheckInMatrix& m, const fs::path& p) {
    auto out = open(p);
    // Rows are emitted in order-key order so file-order sequences survive.
    auto entries = m.to_entries();
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& x, const auto& y) { return x.order < y.order; });
    for (const auto& e : entries) {
      out << e.user << ' ' << e.poi << ' ' << e.frequency;
      if (m.timestamped()) out << ' ' << e.order;
      out << '\n';
    }
  };
  write_matrix(b.train, files.train());
  write_matrix(b.test, files.test());
  write_matrix(b.tune, files.tune());
  {
    auto out = open(files.coordinates());
    for (PoiId p = 0; p < b.geo.size(); ++p) {
      if (!b.geo.has(p)) continue;
      out << p << ' ' << format_double(b.geo.at(p).latitude) << ' '
          << format_double(b.geo.at(p).longitude) << '\n';
    }
  }
  if (b.has_social()) {
    auto out = open(files.social());
    for (const auto& [u, v] : b.social.edges()) out << u << ' ' << v << '\n';
  } else {
    fs::remove(files.social());
  }
  if (b.has_categories()) {
    auto out = open(files.categories());
    for (PoiId p = 0; p < b.categories.pois(); ++p) {
      for (CategoryId c : b.categories.categories(p)) out << p << ' ' << c << '\n';
    }
  } else {
    fs::remove(files.categories());
  }
}

/// Check-ins count distinct (user, poi) pairs over train, test and tune.
inline DatasetStats dataset_stats(const DatasetBundle& b) {
  DatasetStats s;
  s.users = b.users();
  s.pois = b.pois();
  std::vector<PoiId> merged;
  for (UserId u = 0; u < b.users(); ++u) {
    merged.clear();
    for (const CheckInMatrix* m : {&b.train, &b.test, &b.tune}) {
      if (u >= m->users()) continue;
      for (const auto& c : m->row(u)) merged.push_back(c.poi);
    }
    std::sort(merged.begin(), merged.end());
    s.check_ins += static_cast<std::size_t>(
        std::unique(merged.begin(), merged.end()) - merged.begin());
  }
  s.social = b.social.edge_count();
  s.categories = b.categories.category_count();
  const double cells = static_cast<double>(s.users) * static_cast<double>(s.pois);
  s.density = cells > 0 ? static_cast<double>(s.check_ins) / cells : 0.0;
  return s;
}

/// Top round(percentage * users) users by total train frequency are active;
/// ties go to the lower user id.
inline UserGroups compute_active_users(const DatasetBundle& b, double percentage) {
  if (!(percentage > 0.0 && percentage < 1.0)) {
    throw ConfigError("activeUsersPercentage must lie in (0, 1), got " +
                      format_double(percentage));
  }
  const std::size_t n = b.users();
  std::vector<std::pair<std::uint64_t, UserId>> ranked(n);
  for (UserId u = 0; u < n; ++u) ranked[u] = {b.train.total_frequency(u), u};
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& c) {
    return a.first != c.first ? a.first > c.first : a.second < c.second;
  });
  const auto active_count = static_cast<std::size_t>(
      std::llround(percentage * static_cast<double>(n)));

  UserGroups g;
  g.percentage = percentage;
  g.is_active.assign(n, 0);
  for (std::size_t i = 0; i < active_count && i < n; ++i) {
    g.is_active[ranked[i].second] = 1;
  }
  for (UserId u = 0; u < n; ++u) (g.is_active[u] ? g.active : g.inactive).push_back(u);
  return g;
}

/// Test-split POIs per user, sorted ascending.
inline std::vector<std::vector<PoiId>> ground_truth(const CheckInMatrix& split) {
  std::vector<std::vector<PoiId>> truth(split.users());
  for (UserId u = 0; u < split.users(); ++u) {
    for (const auto& c : split.row(u)) truth[u].push_back(c.poi);
  }
  return truth;
}

}  // namespace poibench

#endif  // POIBENCH_DATASET_HPP_
