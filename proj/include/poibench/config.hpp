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

#ifndef POIBENCH_CONFIG_HPP_
#define POIBENCH_CONFIG_HPP_

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "poibench/baselines.hpp"
#include "poibench/core.hpp"
#include "poibench/dataset.hpp"
#include "poibench/metrics.hpp"

namespace poibench {

// ---------------------------------------------------------------------------
// Model and fusion registry

enum class ModelKind { kGeoSoCa, kLore, kUsg, kMostPop, kMf };

struct ModelInfo {
  ModelKind kind;
  std::string_view name;
  bool needs_social;
  bool needs_categories;
  bool contextual;
};

inline const std::vector<ModelInfo>& model_registry() {
  static const std::vector<ModelInfo> registry = {
      {ModelKind::kGeoSoCa, "GeoSoCa", true, true, true},
      {ModelKind::kLore, "LORE", true, false, true},
      {ModelKind::kUsg, "USG", true, false, true},
      {ModelKind::kMostPop, "MostPop", false, false, false},
      {ModelKind::kMf, "MF", false, false, false},
  };
  return registry;
}

namespace detail {
inline std::string lowercase(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}
}  // namespace detail

inline const ModelInfo& find_model(std::string_view name) {
  for (const auto& m : model_registry()) {
    if (detail::lowercase(m.name) == detail::lowercase(name)) return m;
  }
  std::string valid;
  for (const auto& m : model_registry()) valid += (valid.empty() ? "" : ", ") + std::string(m.name);
  throw ConfigError("unknown model '" + std::string(name) + "'; valid names: " + valid);
}

inline const std::vector<std::string>& fusion_names() {
  static const std::vector<std::string> names = {"product", "sum", "weighted"};
  return names;
}

inline constexpr std::string_view kNoFusion = "none";

inline std::string canonical_fusion(std::string_view name) {
  const std::string lower = detail::lowercase(name);
  if (lower == "weightedsum" || lower == "weighted_sum") return "weighted";
  for (const auto& f : fusion_names()) {
    if (f == lower) return f;
  }
  throw ConfigError("unknown fusion '" + std::string(name) +
                    "'; valid names: product, sum, weighted");
}

// ---------------------------------------------------------------------------

struct RunConfig {
  std::filesystem::path data_directory = "Data";
  std::filesystem::path outputs_dir = "Outputs";
  std::size_t top_k = 10;
  long long limit_users = -1;
  std::size_t list_limit = 10;
  double active_users_percentage = 0.2;
  std::vector<std::string> models;
  std::vector<std::string> datasets;
  std::vector<std::string> fusions = fusion_names();
  std::vector<std::string> evaluation_metrics = metric_names();

  std::uint64_t seed = 42;
  double gce_beta = 2.0;
  MfHyperparameters mf;

  MfHyperparameters mf_with_seed() const {
    MfHyperparameters hp = mf;
    hp.seed = seed;
    return hp;
  }
};

/// Throws ConfigError naming the offending key.
inline void validate(const RunConfig& c) {
  if (c.top_k == 0) throw ConfigError("topK must be positive");
  if (c.list_limit == 0) throw ConfigError("listLimit must be positive");
  if (c.top_k > c.list_limit) {
    throw ConfigError("topK (" + std::to_string(c.top_k) + ") must not exceed listLimit (" +
                      std::to_string(c.list_limit) + ")");
  }
  if (c.limit_users == 0 || c.limit_users < -1) {
    throw ConfigError("limitUsers must be -1 or positive");
  }
  if (!(c.active_users_percentage > 0.0 && c.active_users_percentage < 1.0)) {
    throw ConfigError("activeUsersPercentage must lie in (0, 1)");
  }
  if (c.models.empty()) throw ConfigError("models: at least one model is required");
  if (c.datasets.empty()) throw ConfigError("datasets: at least one dataset is required");
  for (const auto& m : c.models) find_model(m);
  for (const auto& f : c.fusions) canonical_fusion(f);
  for (const auto& m : c.evaluation_metrics) canonical_metric(m);
  for (const auto& d : c.datasets) {
    const bool safe = !d.empty() && std::all_of(d.begin(), d.end(), [](char ch) {
      return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.';
    }) && d != "." && d != "..";
    if (!safe) throw ConfigError("datasets: '" + d + "' is not a plain dataset name");
  }
  if (c.gce_beta == 0.0 || c.gce_beta == 1.0) throw ConfigError("gceBeta must not be 0 or 1");
  if (c.mf.factors == 0) throw ConfigError("mfFactors must be positive");
  if (!(c.mf.learning_rate > 0.0)) throw ConfigError("mfLearningRate must be positive");
  if (!(c.mf.regularization >= 0.0)) throw ConfigError("mfRegularization must be >= 0");
}

namespace detail {

inline std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t end = value.find(',', start);
    if (end == std::string_view::npos) end = value.size();
    const auto item = trim(value.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    start = end + 1;
  }
  return out;
}

template <typename T>
T config_number(const std::string& key, std::string_view value) {
  T out{};
  if (!parse_number(value, out)) {
    throw ConfigError(key + ": expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

}  // namespace detail

/// Parses "key = value" lines; '#' starts a comment, lists are comma
/// separated. Unknown or repeated keys are errors.
inline RunConfig parse_config_text(std::string_view text, const std::string& origin = "config") {
  RunConfig c;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (!seen.insert(key).second) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    using detail::config_number;
    if (key == "dataDirectory") {
      c.data_directory = std::string(value);
    } else if (key == "outputsDir") {
      c.outputs_dir = std::string(value);
    } else if (key == "topK") {
      c.top_k = config_number<std::size_t>(key, value);
    } else if (key == "limitUsers") {
      c.limit_users = config_number<long long>(key, value);
    } else if (key == "listLimit") {
      c.list_limit = config_number<std::size_t>(key, value);
    } else if (key == "activeUsersPercentage") {
      c.active_users_percentage = config_number<double>(key, value);
    } else if (key == "models") {
      c.models = detail::split_list(value);
    } else if (key == "datasets") {
      c.datasets = detail::split_list(value);
    } else if (key == "fusions") {
      c.fusions = detail::split_list(value);
    } else if (key == "evaluationMetrics") {
      c.evaluation_metrics = detail::split_list(value);
    } else if (key == "seed") {
      c.seed = config_number<std::uint64_t>(key, value);
    } else if (key == "gceBeta") {
      c.gce_beta = config_number<double>(key, value);
    } else if (key == "mfFactors") {
      c.mf.factors = config_number<std::size_t>(key, value);
    } else if (key == "mfLearningRate") {
      c.mf.learning_rate = config_number<double>(key, value);
    } else if (key == "mfRegularization") {
      c.mf.regularization = config_number<double>(key, value);
    } else if (key == "mfEpochs") {
      c.mf.epochs = config_number<std::size_t>(key, value);
    } else if (key == "mfNegatives") {
      c.mf.negatives_per_positive = config_number<std::size_t>(key, value);
    } else {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  for (auto& f : c.fusions) f = canonical_fusion(f);
  for (auto& m : c.evaluation_metrics) m = canonical_metric(m);
  for (auto& m : c.models) m = std::string(find_model(m).name);
  validate(c);
  return c;
}

inline RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.string());
}

}  // namespace poibench

#endif  // POIBENCH_CONFIG_HPP_
