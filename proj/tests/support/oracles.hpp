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

// Straight-line reference implementations used as test oracles. They read a
// bundle only through its raw entry, edge, coordinate and category lists and
// use dense tables and std::set instead of the library's indexed paths.

#ifndef POIBENCH_TESTS_SUPPORT_ORACLES_HPP_
#define POIBENCH_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "poibench/poibench.hpp"

namespace poibench::oracle {

using Dense = std::vector<std::vector<double>>;  // [user][poi]

/// Frequency table of a split.
inline Dense frequencies(const CheckInMatrix& m) {
  Dense f(m.users(), std::vector<double>(m.pois(), 0.0));
  for (const auto& e : m.to_entries()) f[e.user][e.poi] += e.frequency;
  return f;
}

inline std::vector<std::set<UserId>> friend_sets(const DatasetBundle& b) {
  std::vector<std::set<UserId>> f(b.users());
  for (const auto& [u, v] : b.social.edges()) {
    f[u].insert(v);
    f[v].insert(u);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Ranking metrics

inline double precision(const std::vector<PoiId>& list, const std::set<PoiId>& truth,
                        std::size_t k) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < list.size() && i < k; ++i) hits += truth.count(list[i]);
  return static_cast<double>(hits) / static_cast<double>(k);
}

inline double recall(const std::vector<PoiId>& list, const std::set<PoiId>& truth,
                     std::size_t k) {
  if (truth.empty()) return 0.0;
  std::set<PoiId> top(list.begin(), list.begin() + std::min(k, list.size()));
  std::vector<PoiId> inter;
  std::set_intersection(top.begin(), top.end(), truth.begin(), truth.end(),
                        std::back_inserter(inter));
  return static_cast<double>(inter.size()) / static_cast<double>(truth.size());
}

inline double average_precision(const std::vector<PoiId>& list, const std::set<PoiId>& truth,
                                std::size_t k) {
  if (truth.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < list.size() && i < k; ++i) {
    if (!truth.count(list[i])) continue;
    std::vector<PoiId> prefix(list.begin(), list.begin() + i + 1);
    sum += precision(prefix, truth, i + 1);
  }
  return sum / static_cast<double>(std::min(truth.size(), k));
}

inline double ndcg(const std::vector<PoiId>& list, const std::set<PoiId>& truth, std::size_t k) {
  if (truth.empty()) return 0.0;
  std::vector<double> gains;
  for (std::size_t i = 0; i < list.size() && i < k; ++i) gains.push_back(truth.count(list[i]));
  std::vector<double> ideal(std::min(truth.size(), k), 1.0);
  auto dcg = [](const std::vector<double>& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g[i] / std::log2(i + 2.0);
    return s;
  };
  return dcg(gains) / dcg(ideal);
}

inline std::vector<PoiId> prefix(const RankedList& l, std::size_t k) {
  std::vector<PoiId> out;
  for (std::size_t i = 0; i < l.items.size() && i < k; ++i) out.push_back(l.items[i].poi);
  return out;
}

inline double coverage(const std::vector<RankedList>& lists, std::size_t pois, std::size_t k) {
  std::set<PoiId> all;
  for (const auto& l : lists) {
    for (PoiId p : prefix(l, k)) all.insert(p);
  }
  return 100.0 * static_cast<double>(all.size()) / static_cast<double>(pois);
}

inline std::vector<std::set<UserId>> visitor_sets(const DatasetBundle& b) {
  std::vector<std::set<UserId>> v(b.pois());
  for (const auto& e : b.train.to_entries()) v[e.poi].insert(e.user);
  return v;
}

inline double novelty(const std::vector<RankedList>& lists, const DatasetBundle& b,
                      std::size_t k) {
  const auto visitors = visitor_sets(b);
  const double users = static_cast<double>(b.users());
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& l : lists) {
    const auto top = prefix(l, k);
    if (top.empty()) continue;
    double s = 0.0;
    for (PoiId p : top) {
      const double count = std::max<double>(1.0, static_cast<double>(visitors[p].size()));
      s += -std::log2(count / users);
    }
    total += s / static_cast<double>(top.size());
    ++n;
  }
  return total / static_cast<double>(n);
}

inline double diversity(const std::vector<RankedList>& lists, const DatasetBundle& b,
                        std::size_t k) {
  // Dense binary visitor vectors.
  std::vector<std::vector<double>> vec(b.pois(), std::vector<double>(b.users(), 0.0));
  for (const auto& e : b.train.to_entries()) vec[e.poi][e.user] = 1.0;
  auto cosine = [&](PoiId x, PoiId y) {
    double dot = 0, nx = 0, ny = 0;
    for (std::size_t u = 0; u < b.users(); ++u) {
      dot += vec[x][u] * vec[y][u];
      nx += vec[x][u] * vec[x][u];
      ny += vec[y][u] * vec[y][u];
    }
    return (nx == 0 || ny == 0) ? 0.0 : dot / std::sqrt(nx * ny);
  };
  double total = 0.0;
  std::size_t n = 0;
  for (const auto& l : lists) {
    const auto top = prefix(l, k);
    if (top.empty()) continue;
    ++n;
    if (top.size() == 1) {
      total += 1.0;
      continue;
    }
    double sim = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < top.size(); ++i) {
      for (std::size_t j = 0; j < top.size(); ++j) {
        if (i == j) continue;
        sim += cosine(top[i], top[j]);
        pairs += 1.0;
      }
    }
    total += 1.0 - sim / pairs;
  }
  return total / static_cast<double>(n);
}

inline double personalization(const std::vector<RankedList>& lists, std::size_t k) {
  double sum = 0.0, pairs = 0.0;
  for (std::size_t a = 0; a < lists.size(); ++a) {
    for (std::size_t c = 0; c < lists.size(); ++c) {
      if (a == c) continue;
      const auto x = prefix(lists[a], k);
      const auto y = prefix(lists[c], k);
      std::size_t common = 0;
      for (PoiId p : x) common += std::count(y.begin(), y.end(), p);
      sum += static_cast<double>(common) / static_cast<double>(k);
      pairs += 1.0;
    }
  }
  return 1.0 - sum / pairs;
}

inline double madr(const std::vector<double>& active, const std::vector<double>& inactive) {
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  return std::fabs(mean(active) - mean(inactive));
}

inline double gce(double active_sum, double inactive_sum, double beta) {
  const double total = active_sum + inactive_sum;
  const double p[2] = {std::max(active_sum / total, 1e-12), std::max(inactive_sum / total, 1e-12)};
  double s = 0.0;
  for (double pj : p) s += std::pow(0.5, beta) * std::pow(pj, 1.0 - beta);
  return (1.0 / (beta * (1.0 - beta))) * (s - 1.0);
}

// ---------------------------------------------------------------------------
// Fusion

inline double polynomial(const FusionWeights& w, double c1, double c2, double c3) {
  double r = 0.0;
  r += w.lambda1 * c1;
  r += w.lambda2 * c2;
  r += w.lambda3 * c3;
  r += w.lambda12 * (c1 * c2);
  r += w.lambda13 * (c1 * c3);
  r += w.lambda23 * (c2 * c3);
  r += w.lambda123 * (c1 * c2 * c3);
  return r;
}

// ---------------------------------------------------------------------------
// Geographical KDE

inline double kernel(double d, double h) {
  return std::exp(-(d * d) / (2 * h * h)) / (2 * std::numbers::pi * h * h);
}

/// Direct adaptive KDE: Silverman pilot on equirectangular km coordinates,
/// haversine distances everywhere.
inline double adaptive_kde(const std::vector<Coordinate>& visits, const Coordinate& at) {
  const std::size_t n = visits.size();
  std::vector<double> h_local(n, 1.0);
  if (n >= 2) {
    double lat0 = 0, lon0 = 0;
    for (const auto& v : visits) {
      lat0 += v.latitude / n;
      lon0 += v.longitude / n;
    }
    std::vector<double> xs, ys;
    for (const auto& v : visits) {
      xs.push_back(kEarthRadiusKm * std::cos(lat0 * std::numbers::pi / 180) *
                   (v.longitude - lon0) * std::numbers::pi / 180);
      ys.push_back(kEarthRadiusKm * (v.latitude - lat0) * std::numbers::pi / 180);
    }
    auto sd = [&](const std::vector<double>& a) {
      double m = 0;
      for (double x : a) m += x / n;
      double s = 0;
      for (double x : a) s += (x - m) * (x - m);
      return std::sqrt(s / (n - 1));
    };
    const double sigma = (sd(xs) + sd(ys)) / 2;
    if (sigma > 1e-9) {
      const double h = 1.06 * sigma * std::pow(n, -0.2);
      std::vector<double> pilot(n);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < n; ++j) s += kernel(haversine_km(visits[i], visits[j]), h);
        pilot[i] = s / n;
      }
      double log_g = 0;
      for (double f : pilot) log_g += std::log(f) / n;
      for (std::size_t i = 0; i < n; ++i) h_local[i] = h / std::sqrt(pilot[i] / std::exp(log_g));
    }
  }
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = kernel(haversine_km(visits[i], at), h_local[i]);
    sum += k < 1e-300 ? 0.0 : k;
  }
  return sum / n;
}

inline std::vector<Coordinate> train_coordinates(const DatasetBundle& b, UserId u) {
  std::set<PoiId> pois;
  for (const auto& e : b.train.to_entries()) {
    if (e.user == u) pois.insert(e.poi);
  }
  std::vector<Coordinate> out;
  for (PoiId p : pois) out.push_back(b.geo.at(p));
  return out;
}

inline std::vector<PoiId> candidates(const DatasetBundle& b, UserId u) {
  const auto f = frequencies(b.train);
  std::vector<PoiId> out;
  for (PoiId p = 0; p < b.pois(); ++p) {
    if (f[u][p] == 0.0) out.push_back(p);
  }
  return out;
}

inline void normalize(std::vector<double>& v) {
  const double m = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (m > 0) {
    for (double& x : v) x = x / m;
  }
}

inline double power_transform(double x, double alpha) {
  return x < 1.0 ? 0.0 : 1.0 - std::pow(x, 1.0 - alpha);
}

inline double power_alpha(const std::vector<double>& samples) {
  double s = 0;
  std::size_t n = 0;
  for (double x : samples) {
    if (x >= 1.0) {
      s += std::log(x);
      ++n;
    }
  }
  if (n < 10) return 2.0;
  if (s <= 0) return 10.0;
  return std::min(10.0, 1.0 + n / s);
}

// ---------------------------------------------------------------------------
// GeoSoCa

inline Dense social_raw(const DatasetBundle& b) {
  const auto f = frequencies(b.train);
  const auto fr = friend_sets(b);
  Dense raw(b.users(), std::vector<double>(b.pois(), 0.0));
  for (UserId u = 0; u < b.users(); ++u) {
    for (PoiId p = 0; p < b.pois(); ++p) {
      for (UserId v : fr[u]) raw[u][p] += f[v][p];
    }
  }
  return raw;
}

inline Dense categorical_raw(const DatasetBundle& b) {
  const auto f = frequencies(b.train);
  Dense raw(b.users(), std::vector<double>(b.pois(), 0.0));
  std::vector<double> pop(b.pois(), 0.0);
  for (UserId u = 0; u < b.users(); ++u) {
    for (PoiId p = 0; p < b.pois(); ++p) pop[p] += f[u][p];
  }
  const std::size_t cats = b.categories.category_count();
  for (UserId u = 0; u < b.users(); ++u) {
    double total = 0;
    for (PoiId p = 0; p < b.pois(); ++p) total += f[u][p];
    if (total == 0) continue;
    for (PoiId p = 0; p < b.pois(); ++p) {
      double bias_sum = 0;
      for (CategoryId c = 0; c < cats; ++c) {
        const auto pc = b.categories.categories(p);
        if (std::find(pc.begin(), pc.end(), c) == pc.end()) continue;
        double in_cat = 0;
        for (PoiId q = 0; q < b.pois(); ++q) {
          const auto qc = b.categories.categories(q);
          if (std::find(qc.begin(), qc.end(), c) != qc.end()) in_cat += f[u][q];
        }
        bias_sum += in_cat / total;
      }
      raw[u][p] = pop[p] * bias_sum;
    }
  }
  return raw;
}

inline std::vector<double> positive_values(const Dense& d) {
  std::vector<double> out;
  for (const auto& row : d) {
    for (double x : row) {
      if (x > 0) out.push_back(x);
    }
  }
  return out;
}

/// Per user: candidates and the three normalized channels.
struct Triple {
  std::vector<PoiId> candidates;
  std::vector<double> c[3];
};

inline std::vector<Triple> geosoca(const DatasetBundle& b) {
  const auto sraw = social_raw(b);
  const auto craw = categorical_raw(b);
  const double sa = power_alpha(positive_values(sraw));
  const double ca = power_alpha(positive_values(craw));
  std::vector<Triple> out(b.users());
  for (UserId u = 0; u < b.users(); ++u) {
    auto& t = out[u];
    t.candidates = candidates(b, u);
    const auto visits = train_coordinates(b, u);
    for (PoiId p : t.candidates) {
      t.c[0].push_back(visits.empty() ? 0.0 : adaptive_kde(visits, b.geo.at(p)));
      t.c[1].push_back(visits.empty() ? 0.0 : power_transform(sraw[u][p], sa));
      t.c[2].push_back(visits.empty() ? 0.0 : power_transform(craw[u][p], ca));
    }
    for (auto& ch : t.c) normalize(ch);
  }
  return out;
}

// ---------------------------------------------------------------------------
// LORE

/// Train POI sequence of a user, by order then POI id.
inline std::vector<PoiId> sequence(const DatasetBundle& b, UserId u) {
  std::vector<std::pair<std::int64_t, PoiId>> s;
  for (const auto& e : b.train.to_entries()) {
    if (e.user == u) s.emplace_back(e.order, e.poi);
  }
  std::sort(s.begin(), s.end());
  std::vector<PoiId> out;
  for (const auto& [o, p] : s) out.push_back(p);
  return out;
}

inline Dense transition_counts(const DatasetBundle& b) {
  Dense c(b.pois(), std::vector<double>(b.pois(), 0.0));
  for (UserId u = 0; u < b.users(); ++u) {
    const auto s = sequence(b, u);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) c[s[i]][s[i + 1]] += 1;
  }
  return c;
}

inline Dense transition_probabilities(const Dense& counts) {
  Dense t = counts;
  for (auto& row : t) {
    double s = 0;
    for (double x : row) s += x;
    if (s > 0) {
      for (double& x : row) x /= s;
    }
  }
  return t;
}

inline std::vector<double> sequential(const Dense& t, const std::vector<PoiId>& history) {
  std::vector<double> out(t.size(), 0.0);
  const std::size_t n = history.size();
  for (PoiId p = 0; p < t.size(); ++p) {
    for (std::size_t i = 1; i <= n; ++i) {
      out[p] += std::pow(2.0, -static_cast<double>(n - i)) * t[history[i - 1]][p];
    }
  }
  return out;
}

inline std::vector<Triple> lore(const DatasetBundle& b) {
  const auto t = transition_probabilities(transition_counts(b));
  const auto sraw = social_raw(b);
  const double sa = power_alpha(positive_values(sraw));
  std::vector<Triple> out(b.users());
  for (UserId u = 0; u < b.users(); ++u) {
    auto& tr = out[u];
    tr.candidates = candidates(b, u);
    const auto visits = train_coordinates(b, u);
    const auto seq = sequence(b, u);
    const auto sq = sequential(t, seq);
    for (PoiId p : tr.candidates) {
      tr.c[0].push_back(visits.empty() ? 0.0 : adaptive_kde(visits, b.geo.at(p)));
      tr.c[1].push_back(visits.empty() ? 0.0 : sq[p]);
      tr.c[2].push_back(visits.empty() ? 0.0 : power_transform(sraw[u][p], sa));
    }
    for (auto& ch : tr.c) normalize(ch);
  }
  return out;
}

// ---------------------------------------------------------------------------
// USG

inline std::vector<double> cosine_cf(const DatasetBundle& b, UserId u) {
  const auto f = frequencies(b.train);
  auto bin = [&](UserId x, PoiId p) { return f[x][p] > 0 ? 1.0 : 0.0; };
  std::vector<double> score(b.pois(), 0.0);
  double denom = 0;
  for (UserId v = 0; v < b.users(); ++v) {
    if (v == u) continue;
    double dot = 0, nu = 0, nv = 0;
    for (PoiId p = 0; p < b.pois(); ++p) {
      dot += bin(u, p) * bin(v, p);
      nu += bin(u, p);
      nv += bin(v, p);
    }
    if (nu == 0 || nv == 0) continue;
    const double sim = dot / (std::sqrt(nu) * std::sqrt(nv));
    denom += sim;
    for (PoiId p = 0; p < b.pois(); ++p) score[p] += sim * bin(v, p);
  }
  if (denom <= 0) return std::vector<double>(b.pois(), 0.0);
  for (double& s : score) s /= denom;
  return score;
}

inline double jaccard_closed(const DatasetBundle& b, UserId u, UserId v) {
  auto fr = friend_sets(b);
  fr[u].insert(u);
  fr[v].insert(v);
  std::set<UserId> inter, uni;
  std::set_intersection(fr[u].begin(), fr[u].end(), fr[v].begin(), fr[v].end(),
                        std::inserter(inter, inter.begin()));
  std::set_union(fr[u].begin(), fr[u].end(), fr[v].begin(), fr[v].end(),
                 std::inserter(uni, uni.begin()));
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

inline std::vector<double> social_influence(const DatasetBundle& b, UserId u) {
  const auto f = frequencies(b.train);
  const auto fr = friend_sets(b);
  std::vector<double> score(b.pois(), 0.0);
  double denom = 0;
  for (UserId v : fr[u]) {
    const double si = jaccard_closed(b, u, v);
    denom += si;
    for (PoiId p = 0; p < b.pois(); ++p) score[p] += si * (f[v][p] > 0 ? 1.0 : 0.0);
  }
  if (denom <= 0) return std::vector<double>(b.pois(), 0.0);
  for (double& s : score) s /= denom;
  return score;
}

/// Plain product of a * d^b over the user's train POIs.
inline double geo_product(const GeoPowerLaw& law, const std::vector<Coordinate>& history,
                          const Coordinate& at) {
  double prod = 1.0;
  for (const auto& h : history) {
    prod *= law.a * std::pow(std::max(haversine_km(h, at), law.d_min), law.b);
  }
  return prod;
}

// ---------------------------------------------------------------------------
// Whole run

/// Every metric of a run at cut-off k, keyed like the library report
/// ("ndcg@10", "group:active:ndcg@10"). Undefined metrics are absent.
inline std::map<std::string, double> metric_report(const std::vector<RankedList>& lists,
                                                   const DatasetBundle& b,
                                                   const std::vector<char>& is_active,
                                                   std::size_t k, double beta) {
  const std::string at = "@" + std::to_string(k);
  std::map<UserId, std::set<PoiId>> truth;
  for (const auto& e : b.test.to_entries()) truth[e.user].insert(e.poi);

  struct Sums {
    double p = 0, r = 0, ap = 0, nd = 0, n = 0;
  } all, group[2];
  std::vector<double> mean_score[2];
  double utility[2] = {0, 0};
  for (const auto& l : lists) {
    const auto top = prefix(l, k);
    const int g = is_active[l.user] ? 0 : 1;
    if (!top.empty()) {
      double s = 0;
      for (std::size_t i = 0; i < top.size(); ++i) s += l.items[i].score;
      mean_score[g].push_back(s / static_cast<double>(top.size()));
    }
    const auto it = truth.find(l.user);
    if (it == truth.end()) continue;
    const double nd = ndcg(top, it->second, k);
    for (Sums* x : {&all, &group[g]}) {
      x->p += precision(top, it->second, k);
      x->r += recall(top, it->second, k);
      x->ap += average_precision(top, it->second, k);
      x->nd += nd;
      x->n += 1;
    }
    utility[g] += nd;
  }
  std::map<std::string, double> out;
  auto put_accuracy = [&](const std::string& prefix_key, const Sums& x) {
    const double n = x.n > 0 ? x.n : 1.0;
    out[prefix_key + "precision" + at] = x.p / n;
    out[prefix_key + "recall" + at] = x.r / n;
    out[prefix_key + "map" + at] = x.ap / n;
    out[prefix_key + "ndcg" + at] = x.nd / n;
  };
  put_accuracy("", all);
  put_accuracy("group:active:", group[0]);
  put_accuracy("group:inactive:", group[1]);
  out["coverage" + at] = coverage(lists, b.pois(), k);
  out["novelty" + at] = novelty(lists, b, k);
  out["diversity" + at] = diversity(lists, b, k);
  if (lists.size() > 1) out["personalization" + at] = personalization(lists, k);
  if (!mean_score[0].empty() && !mean_score[1].empty()) {
    out["madr" + at] = madr(mean_score[0], mean_score[1]);
  }
  if (utility[0] + utility[1] > 0) out["gce" + at] = gce(utility[0], utility[1], beta);
  return out;
}

}  // namespace poibench::oracle

#endif  // POIBENCH_TESTS_SUPPORT_ORACLES_HPP_
