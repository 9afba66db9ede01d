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

#ifndef POIBENCH_METRICS_HPP_
#define POIBENCH_METRICS_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "poibench/dataset.hpp"
#include "poibench/ranking.hpp"

namespace poibench {

// ---------------------------------------------------------------------------
// Per-user accuracy. `truth` is the user's test POI set; lists are assumed
// duplicate-free, as RankedList guarantees.

namespace detail {

inline std::vector<PoiId> sorted_copy(std::span<const PoiId> truth) {
  std::vector<PoiId> t(truth.begin(), truth.end());
  if (!std::is_sorted(t.begin(), t.end())) std::sort(t.begin(), t.end());
  return t;
}

inline bool relevant(const std::vector<PoiId>& sorted_truth, PoiId p) {
  return std::binary_search(sorted_truth.begin(), sorted_truth.end(), p);
}

}  // namespace detail

inline std::size_t hits_at_k(std::span<const PoiId> list, std::span<const PoiId> truth,
                             std::size_t k) {
  const auto t = detail::sorted_copy(truth);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) hits += detail::relevant(t, list[i]);
  return hits;
}

inline double precision_at_k(std::span<const PoiId> list, std::span<const PoiId> truth,
                             std::size_t k) {
  return static_cast<double>(hits_at_k(list, truth, k)) / static_cast<double>(k);
}

inline double recall_at_k(std::span<const PoiId> list, std::span<const PoiId> truth,
                          std::size_t k) {
  if (truth.empty()) return 0.0;
  return static_cast<double>(hits_at_k(list, truth, k)) /
         static_cast<double>(truth.size());
}

/// (sum of precision@i at each hit rank i <= k) / min(|truth|, k).
inline double average_precision_at_k(std::span<const PoiId> list,
                                      std::span<const PoiId> truth, std::size_t k) {
  if (truth.empty()) return 0.0;
  const auto t = detail::sorted_copy(truth);
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
    if (detail::relevant(t, list[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(std::min(t.size(), k));
}

/// Binary-gain nDCG@k.
inline double ndcg_at_k(std::span<const PoiId> list, std::span<const PoiId> truth,
                        std::size_t k) {
  if (truth.empty()) return 0.0;
  const auto t = detail::sorted_copy(truth);
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
    if (detail::relevant(t, list[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  double idcg = 0.0;
  for (std::size_t i = 0; i < std::min(t.size(), k); ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg / idcg;
}

/// Mean AP over users with nonempty truth; truths indexed by list position.
inline double map_at_k(std::span<const RankedList> lists,
                       std::span<const std::vector<PoiId>> truths, std::size_t k) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (truths[i].empty()) continue;
    sum += average_precision_at_k(lists[i].top(k), truths[i], k);
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

// ---------------------------------------------------------------------------
// Beyond accuracy

/// Percentage of the catalog appearing in at least one top-k list.
inline double catalog_coverage(std::span<const RankedList> lists, std::size_t poi_count,
                               std::size_t k) {
  if (poi_count == 0) return 0.0;
  std::vector<char> seen(poi_count, 0);
  std::size_t distinct = 0;
  for (const auto& l : lists) {
    for (PoiId p : l.top(k)) {
      if (p < poi_count && !seen[p]) {
        seen[p] = 1;
        ++distinct;
      }
    }
  }
  return 100.0 * static_cast<double>(distinct) / static_cast<double>(poi_count);
}

/// Fraction of users with a train check-in at each POI, floored at 1/users.
inline std::vector<double> visitor_fraction(const DatasetBundle& b) {
  const double users = static_cast<double>(std::max<std::size_t>(b.users(), 1));
  std::vector<double> pop(b.pois(), 0.0);
  for (UserId u = 0; u < b.users(); ++u) {
    for (const auto& c : b.train.row(u)) pop[c.poi] += 1.0;
  }
  for (double& p : pop) p = std::max(p, 1.0) / users;
  return pop;
}

/// Mean over nonempty lists of the mean self-information -log2 pop(p).
inline std::optional<double> novelty(std::span<const RankedList> lists,
                                     const DatasetBundle& b, std::size_t k) {
  const auto pop = visitor_fraction(b);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& l : lists) {
    const auto top = l.top(k);
    if (top.empty()) continue;
    double s = 0.0;
    for (PoiId p : top) s += -std::log2(pop[p]);
    sum += s / static_cast<double>(top.size());
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

/// Cosine similarity of two POIs' binary train-visitor vectors.
inline double visitor_cosine(const std::vector<UserId>& a, const std::vector<UserId>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
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
  return static_cast<double>(common) /
         std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

/// `visitors[p]` is POI p's ascending train-visitor list.
inline std::optional<double> intra_list_diversity(
    std::span<const RankedList> lists, const std::vector<std::vector<UserId>>& visitors,
    std::size_t k) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& l : lists) {
    const auto top = l.top(k);
    if (top.empty()) continue;
    ++n;
    if (top.size() == 1) {
      sum += 1.0;
      continue;
    }
    double sim = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < top.size(); ++i) {
      for (std::size_t j = i + 1; j < top.size(); ++j) {
        sim += visitor_cosine(visitors[top[i]], visitors[top[j]]);
        ++pairs;
      }
    }
    sum += 1.0 - sim / static_cast<double>(pairs);
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

inline std::optional<double> intra_list_diversity(std::span<const RankedList> lists,
                                                  const DatasetBundle& b, std::size_t k) {
  std::vector<std::vector<UserId>> visitors(b.pois());
  for (UserId u = 0; u < b.users(); ++u) {
    for (const auto& c : b.train.row(u)) visitors[c.poi].push_back(u);
  }
  return intra_list_diversity(lists, visitors, k);
}

inline constexpr std::uint64_t kPersonalizationMaxPairs = 1'000'000;

/// 1 - mean over user pairs of |L_u and L_v| / k. Exhaustive up to
/// `max_pairs` pairs, otherwise a seeded uniform sample of that many pairs.
inline std::optional<double> personalization(std::span<const RankedList> lists,
                                             std::size_t k, std::uint64_t seed = 42,
                                             std::uint64_t max_pairs = kPersonalizationMaxPairs) {
  const std::size_t n = lists.size();
  if (n < 2) return std::nullopt;
  std::vector<std::vector<PoiId>> tops(n);
  for (std::size_t i = 0; i < n; ++i) {
    tops[i] = lists[i].top(k);
    std::sort(tops[i].begin(), tops[i].end());
  }
  auto overlap = [&](std::size_t a, std::size_t b) {
    std::size_t common = 0;
    for (auto i = tops[a].begin(), j = tops[b].begin();
         i != tops[a].end() && j != tops[b].end();) {
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
    return static_cast<double>(common) / static_cast<double>(k);
  };
  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  double sum = 0.0;
  std::uint64_t count = 0;
  if (total_pairs <= max_pairs) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) sum += overlap(a, b);
    }
    count = total_pairs;
  } else {
    Rng rng(seed);
    for (; count < max_pairs; ++count) {
      const auto a = uniform_index(rng, n);
      auto b = uniform_index(rng, n - 1);
      if (b >= a) ++b;
      sum += overlap(a, b);
    }
  }
  return 1.0 - sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Fairness between the active and inactive user groups. Per-user inputs are
// indexed by user id; absent entries are users without a value.

using PerUserValues = std::vector<std::optional<double>>;

/// |mean(active) - mean(inactive)|; undefined when a group has no values.
inline std::optional<double> mad_r(const PerUserValues& values, const UserGroups& groups) {
  auto group_mean = [&](const std::vector<UserId>& members) -> std::optional<double> {
    double sum = 0.0;
    std::size_t n = 0;
    for (UserId u : members) {
      if (u < values.size() && values[u]) {
        sum += *values[u];
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  };
  const auto a = group_mean(groups.active);
  const auto i = group_mean(groups.inactive);
  if (!a || !i) return std::nullopt;
  return std::abs(*a - *i);
}

inline constexpr double kGceProbabilityFloor = 1e-12;

/// Generalized cross entropy between each group's share of the total utility
/// and the uniform fair distribution:
///   GCE = (1 / (beta (1 - beta))) * (sum_j pf_j^beta * p_j^(1 - beta) - 1).
/// Shares are floored at 1e-12. Undefined for zero total utility.
inline std::optional<double> gce(const PerUserValues& utilities, const UserGroups& groups,
                                 double beta = 2.0) {
  if (beta == 0.0 || beta == 1.0) {
    throw ConfigError("GCE beta must not be 0 or 1, got " + format_double(beta));
  }
  const std::vector<UserId>* members[] = {&groups.active, &groups.inactive};
  double group_sum[2] = {0.0, 0.0};
  for (int j = 0; j < 2; ++j) {
    for (UserId u : *members[j]) {
      if (u < utilities.size() && utilities[u]) group_sum[j] += *utilities[u];
    }
  }
  const double total = group_sum[0] + group_sum[1];
  if (!(total > 0.0)) return std::nullopt;
  const double fair = 0.5;
  double sum = 0.0;
  for (double g : group_sum) {
    const double p = std::max(g / total, kGceProbabilityFloor);
    sum += std::pow(fair, beta) * std::pow(p, 1.0 - beta);
  }
  return (sum - 1.0) / (beta * (1.0 - beta));
}

/// Closed form on explicit shares, for callers holding group probabilities.
inline double gce_from_shares(std::span<const double> shares, double beta = 2.0) {
  if (beta == 0.0 || beta == 1.0) {
    throw ConfigError("GCE beta must not be 0 or 1, got " + format_double(beta));
  }
  const double fair = 1.0 / static_cast<double>(shares.size());
  double sum = 0.0;
  for (double s : shares) {
    sum += std::pow(fair, beta) * std::pow(std::max(s, kGceProbabilityFloor), 1.0 - beta);
  }
  return (sum - 1.0) / (beta * (1.0 - beta));
}

// ---------------------------------------------------------------------------
// Run-level evaluation

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "precision", "recall",          "map",  "ndcg", "coverage", "novelty",
      "diversity", "personalization", "madr", "gce"};
  return names;
}

inline std::string canonical_metric(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  const auto& valid = metric_names();
  if (std::find(valid.begin(), valid.end(), lower) == valid.end()) {
    std::string list;
    for (const auto& v : valid) list += (list.empty() ? "" : ", ") + v;
    throw ConfigError("unknown evaluation metric '" + std::string(name) +
                      "'; valid names: " + list);
  }
  return lower;
}

inline bool is_fairness_metric(const std::string& m) { return m == "madr" || m == "gce"; }
inline bool is_accuracy_metric(const std::string& m) {
  return m == "precision" || m == "recall" || m == "map" || m == "ndcg";
}

struct RunMetadata {
  std::string model;
  std::string dataset;
  std::string fusion;
  std::size_t list_limit = 10;
  long long limit_users = -1;
  std::uint64_t seed = 42;
};

using MetricValues = std::vector<std::pair<std::string, double>>;

struct MetricsReport {
  RunMetadata metadata;
  std::size_t top_k = 10;
  MetricValues values;  // "name@k" -> value, in selection order
  std::vector<std::pair<std::string, MetricValues>> groups;

  std::optional<double> get(const std::string& key) const {
    for (const auto& [k, v] : values) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  std::optional<double> group_value(const std::string& group, const std::string& key) const {
    for (const auto& [g, vals] : groups) {
      if (g != group) continue;
      for (const auto& [k, v] : vals) {
        if (k == key) return v;
      }
    }
    return std::nullopt;
  }
};

struct EvaluationSettings {
  std::size_t top_k = 10;
  std::vector<std::string> metrics;
  double gce_beta = 2.0;
  std::uint64_t seed = 42;
};

/// Computes the selected metrics at top_k. Users without test entries are
/// left out of accuracy averages but still count for beyond-accuracy metrics.
/// Fairness metrics need `groups`.
inline MetricsReport evaluate_run(std::span<const RankedList> lists, const DatasetBundle& b,
                                  const UserGroups* groups, const EvaluationSettings& settings,
                                  RunMetadata metadata = {}) {
  if (settings.top_k == 0) throw ConfigError("topK must be positive");
  std::vector<std::string> selected;
  for (const auto& m : settings.metrics) selected.push_back(canonical_metric(m));
  for (const auto& m : selected) {
    if (is_fairness_metric(m) && groups == nullptr) {
      throw ConfigError("metric '" + m + "' needs active/inactive user groups");
    }
  }

  MetricsReport report;
  report.metadata = std::move(metadata);
  report.top_k = settings.top_k;
  const std::size_t k = settings.top_k;
  if (selected.empty()) return report;
  const std::string suffix = "@" + std::to_string(k);

  std::vector<std::vector<PoiId>> truths(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const UserId u = lists[i].user;
    if (u < b.test.users()) {
      for (const auto& c : b.test.row(u)) truths[i].push_back(c.poi);
    }
  }

  struct Accuracy {
    double precision = 0, recall = 0, ap = 0, ndcg = 0;
    std::size_t users = 0;
  };
  auto accuracy = [&](auto&& include) {
    Accuracy a;
    for (std::size_t i = 0; i < lists.size(); ++i) {
      if (truths[i].empty() || !include(lists[i].user)) continue;
      const auto top = lists[i].top(k);
      a.precision += precision_at_k(top, truths[i], k);
      a.recall += recall_at_k(top, truths[i], k);
      a.ap += average_precision_at_k(top, truths[i], k);
      a.ndcg += ndcg_at_k(top, truths[i], k);
      ++a.users;
    }
    if (a.users) {
      const double n = static_cast<double>(a.users);
      a.precision /= n;
      a.recall /= n;
      a.ap /= n;
      a.ndcg /= n;
    }
    return a;
  };
  auto accuracy_value = [](const Accuracy& a, const std::string& m) {
    if (m == "precision") return a.precision;
    if (m == "recall") return a.recall;
    if (m == "map") return a.ap;
    return a.ndcg;
  };

  const Accuracy overall = accuracy([](UserId) { return true; });
  std::optional<std::vector<std::vector<UserId>>> visitors;

  for (const auto& m : selected) {
    std::optional<double> value;
    if (is_accuracy_metric(m)) {
      value = accuracy_value(overall, m);
    } else if (m == "coverage") {
      value = catalog_coverage(lists, b.pois(), k);
    } else if (m == "novelty") {
      value = novelty(lists, b, k);
    } else if (m == "diversity") {
      if (!visitors) {
        visitors.emplace(b.pois());
        for (UserId u = 0; u < b.users(); ++u) {
          for (const auto& c : b.train.row(u)) (*visitors)[c.poi].push_back(u);
        }
      }
      value = intra_list_diversity(lists, *visitors, k);
    } else if (m == "personalization") {
      value = personalization(lists, k, settings.seed);
    } else if (m == "madr") {
      PerUserValues scores(b.users());
      for (const auto& l : lists) {
        const std::size_t n = std::min(k, l.items.size());
        if (n == 0 || l.user >= scores.size()) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += l.items[i].score;
        scores[l.user] = s / static_cast<double>(n);
      }
      value = mad_r(scores, *groups);
    } else if (m == "gce") {
      PerUserValues utilities(b.users());
      for (std::size_t i = 0; i < lists.size(); ++i) {
        if (truths[i].empty() || lists[i].user >= utilities.size()) continue;
        utilities[lists[i].user] = ndcg_at_k(lists[i].top(k), truths[i], k);
      }
      value = gce(utilities, *groups, settings.gce_beta);
    }
    if (value) report.values.emplace_back(m + suffix, *value);
  }

  if (groups != nullptr) {
    for (const auto& [name, active] : {std::pair{"active", true}, std::pair{"inactive", false}}) {
      const Accuracy a = accuracy([&, active = active](UserId u) {
        return u < groups->is_active.size() && static_cast<bool>(groups->is_active[u]) == active;
      });
      MetricValues vals;
      for (const auto& m : selected) {
        if (is_accuracy_metric(m)) vals.emplace_back(m + suffix, accuracy_value(a, m));
      }
      if (!vals.empty()) report.groups.emplace_back(name, std::move(vals));
    }
  }
  return report;
}

}  // namespace poibench

#endif  // POIBENCH_METRICS_HPP_
