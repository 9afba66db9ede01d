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

#ifndef POIBENCH_RUNNER_HPP_
#define POIBENCH_RUNNER_HPP_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "poibench/baselines.hpp"
#include "poibench/config.hpp"
#include "poibench/dataset.hpp"
#include "poibench/fusion.hpp"
#include "poibench/geosoca.hpp"
#include "poibench/lore.hpp"
#include "poibench/metrics.hpp"
#include "poibench/usg.hpp"

namespace poibench {

/// Identifies one experiment; every field changes the ranked lists.
struct RunKey {
  std::string model;
  std::string dataset;
  std::string fusion;  // "none" for baselines
  std::size_t list_limit = 10;
  long long limit_users = -1;

  std::string stem() const {
    return model + "_" + dataset + "_" + fusion + "_L" + std::to_string(list_limit) + "_U" +
           std::to_string(limit_users);
  }

  friend bool operator==(const RunKey&, const RunKey&) = default;
};

struct RunPlan {
  std::vector<RunKey> runs;
  std::vector<std::string> rejections;  // incompatible model/dataset pairs
};

using ContextProbe = std::function<ContextAvailability(const std::string& dataset)>;

/// models x datasets x fusions in declaration order. Baselines get a single
/// run with fusion "none"; model/dataset pairs lacking a required context
/// are dropped and reported in `rejections`.
inline RunPlan plan_runs(const RunConfig& config, const ContextProbe& probe) {
  RunPlan plan;
  for (const auto& model_name : config.models) {
    const ModelInfo& model = find_model(model_name);
    for (const auto& dataset : config.datasets) {
      const auto ctx = probe(dataset);
      std::vector<std::string> missing;
      if (model.needs_social && !ctx.social) missing.emplace_back("social relations");
      if (model.needs_categories && !ctx.categories) missing.emplace_back("POI categories");
      if (!missing.empty()) {
        std::string what;
        for (const auto& m : missing) what += (what.empty() ? "" : " and ") + m;
        plan.rejections.push_back(std::string(model.name) + " cannot run on " + dataset +
                                  ": dataset lacks " + what);
        continue;
      }
      if (!model.contextual) {
        plan.runs.push_back({std::string(model.name), dataset, std::string(kNoFusion),
                             config.list_limit, config.limit_users});
        continue;
      }
      if (config.fusions.empty()) {
        throw ConfigError("fusions: " + std::string(model.name) + " needs at least one fusion");
      }
      for (const auto& fusion : config.fusions) {
        plan.runs.push_back({std::string(model.name), dataset, canonical_fusion(fusion),
                             config.list_limit, config.limit_users});
      }
    }
  }
  if (plan.runs.empty()) {
    std::string why;
    for (const auto& r : plan.rejections) why += "\n  " + r;
    throw ConfigError("no runnable experiments after compatibility filtering" + why);
  }
  return plan;
}

inline RunPlan plan_runs(const RunConfig& config) {
  return plan_runs(config, [&](const std::string& dataset) {
    if (!std::filesystem::is_directory(config.data_directory / dataset)) {
      // Let the run fail at load time with a "dataset incomplete" error.
      return ContextAvailability{true, true};
    }
    return probe_contexts(config.data_directory, dataset);
  });
}

// ---------------------------------------------------------------------------
// Output files

inline std::string output_header(const RunKey& key, std::uint64_t seed) {
  return "# model=" + key.model + " dataset=" + key.dataset + " fusion=" + key.fusion +
         " listLimit=" + std::to_string(key.list_limit) +
         " limitUsers=" + std::to_string(key.limit_users) + " seed=" + std::to_string(seed) +
         "\n";
}

struct OutputPaths {
  std::filesystem::path lists;
  std::filesystem::path metrics;
};

inline OutputPaths output_paths(const std::filesystem::path& outputs_dir, const RunKey& key) {
  return {outputs_dir / (key.stem() + ".lists"), outputs_dir / (key.stem() + ".metrics")};
}

/// Writes to "<path>.tmp" and renames, so readers never see partial files.
inline void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string format_lists(const RunKey& key, std::uint64_t seed,
                                std::span<const RankedList> lists) {
  std::string out = output_header(key, seed);
  for (const auto& l : lists) {
    for (const auto& item : l.items) {
      out += std::to_string(l.user);
      out += '\t';
      out += std::to_string(item.poi);
      out += '\t';
      out += format_double(item.score);
      out += '\n';
    }
  }
  return out;
}

inline std::string format_metrics(const RunKey& key, std::uint64_t seed,
                                  const MetricsReport& report,
                                  const std::optional<FusionWeights>& tuned = std::nullopt) {
  std::string out = output_header(key, seed);
  if (tuned) {
    out += "# weights=" + format_double(tuned->lambda1) + "," + format_double(tuned->lambda2) +
           "," + format_double(tuned->lambda3) + "\n";
  }
  for (const auto& [name, value] : report.values) out += name + "\t" + format_double(value) + "\n";
  for (const auto& [group, values] : report.groups) {
    for (const auto& [name, value] : values) {
      out += "group:" + group + ":" + name + "\t" + format_double(value) + "\n";
    }
  }
  return out;
}

struct ListsFile {
  std::map<std::string, std::string> header;
  std::vector<RankedList> lists;  // users ascending
};

inline std::map<std::string, std::string> parse_header_line(std::string_view line) {
  std::map<std::string, std::string> fields;
  line.remove_prefix(1);
  for (auto token : split_fields(line)) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;
    fields.emplace(std::string(token.substr(0, eq)), std::string(token.substr(eq + 1)));
  }
  return fields;
}

inline ListsFile read_lists_file(const std::filesystem::path& path) {
  const std::string file = path.string();
  const std::string text = detail::read_file(path);
  ListsFile out;
  detail::for_each_record(text, [&](std::size_t line, const auto& fields) {
    if (fields[0].starts_with("#")) {
      if (out.header.empty()) {
        std::string joined;
        for (auto f : fields) (joined += std::string(f)) += ' ';
        out.header = parse_header_line(joined);
      }
      return;
    }
    if (fields.size() != 3) throw ParseError(file, line, "expected 'userId poiId score'");
    const auto user = detail::field_as<UserId>(fields[0], file, line, "user id");
    const auto poi = detail::field_as<PoiId>(fields[1], file, line, "poi id");
    const auto score = detail::field_as<double>(fields[2], file, line, "score");
    if (out.lists.empty() || out.lists.back().user != user) {
      if (!out.lists.empty() && user < out.lists.back().user) {
        throw ParseError(file, line, "users must appear in ascending order");
      }
      out.lists.push_back({user, {}});
    }
    out.lists.back().items.push_back({poi, score});
  });
  return out;
}

// ---------------------------------------------------------------------------
// Execution

struct ExecuteOptions {
  unsigned workers = 1;
  bool force = false;
  std::ostream* log = nullptr;
};

struct RunFailure {
  RunKey key;
  std::string message;
};

struct ExecutionSummary {
  std::vector<RunKey> executed;
  std::vector<RunKey> skipped;
  std::vector<RunFailure> failed;
  std::size_t users_scored = 0;  // model.scores()/baseline scoring calls
};

namespace detail {

inline FusionWeights named_weights(const std::string& fusion) {
  if (fusion == "product") return product_rule();
  if (fusion == "sum") return sum_rule();
  throw ConfigError("fusion '" + fusion + "' has no fixed weights");
}

inline std::unique_ptr<ContextModel> make_context_model(ModelKind kind, const DatasetBundle& b) {
  switch (kind) {
    case ModelKind::kGeoSoCa: return std::make_unique<GeoSoCa>(b);
    case ModelKind::kLore: return std::make_unique<Lore>(b);
    case ModelKind::kUsg: return std::make_unique<Usg>(b);
    default: throw ConfigError("not a context model");
  }
}

inline std::unique_ptr<BaselineModel> make_baseline(ModelKind kind, const DatasetBundle& b,
                                                    const RunConfig& config) {
  if (kind == ModelKind::kMostPop) return std::make_unique<MostPop>(b);
  return std::make_unique<MatrixFactorization>(b, config.mf_with_seed());
}

struct GroupResult {
  std::map<std::string, std::vector<RankedList>> lists;  // fusion -> lists
  std::optional<FusionWeights> tuned;
};

/// Scores every user once and derives the lists of all requested fusions.
inline GroupResult rank_context_group(const ContextModel& model, const DatasetBundle& b,
                                      const std::vector<std::string>& fusions,
                                      const RunConfig& config, unsigned workers,
                                      std::size_t& users_scored) {
  const std::size_t n = b.users();
  const bool weighted = std::find(fusions.begin(), fusions.end(), "weighted") != fusions.end();
  const auto grid = simplex_grid();

  struct PerUser {
    std::map<std::string, RankedList> fixed;
    std::vector<RankedList> grid_lists;
    std::vector<double> grid_ndcg;
  };
  std::vector<PerUser> per_user(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const auto user = static_cast<UserId>(i);
    const ContextScores s = model.scores(user);
    PerUser& out = per_user[i];
    for (const auto& f : fusions) {
      if (f != "weighted") out.fixed.emplace(f, rank_candidates(s, named_weights(f), config.list_limit));
    }
    if (weighted) {
      std::vector<PoiId> truth;
      if (user < b.tune.users()) {
        for (const auto& c : b.tune.row(user)) truth.push_back(c.poi);
      }
      out.grid_lists.reserve(grid.size());
      for (const auto& w : grid) {
        out.grid_lists.push_back(rank_candidates(s, w, config.list_limit));
        if (!truth.empty()) {
          out.grid_ndcg.push_back(
              ndcg_at_k(out.grid_lists.back().top(config.top_k), truth, config.top_k));
        }
      }
    }
  });
  users_scored += n;

  GroupResult result;
  for (const auto& f : fusions) {
    auto& lists = result.lists[f];
    lists.reserve(n);
    if (f == "weighted") continue;
    for (auto& u : per_user) lists.push_back(std::move(u.fixed.at(f)));
  }
  if (weighted) {
    WeightedSumTuner tuner(config.top_k);
    for (const auto& u : per_user) tuner.add(u.grid_ndcg);
    if (tuner.users() == 0) {
      result.lists.erase("weighted");
      return result;
    }
    const std::size_t best = tuner.best_index();
    result.tuned = grid[best];
    auto& lists = result.lists["weighted"];
    for (auto& u : per_user) lists.push_back(std::move(u.grid_lists[best]));
  }
  return result;
}

inline std::vector<RankedList> rank_baseline(const BaselineModel& model, const DatasetBundle& b,
                                             const RunConfig& config, unsigned workers,
                                             std::size_t& users_scored) {
  std::vector<RankedList> lists(b.users());
  parallel_for(b.users(), workers, [&](std::size_t i) {
    const auto user = static_cast<UserId>(i);
    const auto candidates = candidate_set(b, user);
    lists[i] = top_n(user, candidates, model.scores(user, candidates), config.list_limit);
  });
  users_scored += b.users();
  return lists;
}

}  // namespace detail

/// Runs every planned experiment whose lists and metrics files are not both
/// present (or all, with force). Runs sharing model and dataset are scored
/// in one pass. A failing run is recorded and the rest of the plan continues.
inline ExecutionSummary execute(const RunPlan& plan, const RunConfig& config,
                                const ExecuteOptions& options = {}) {
  namespace fs = std::filesystem;
  ExecutionSummary summary;
  fs::create_directories(config.outputs_dir);
  auto log = [&](const std::string& msg) {
    if (options.log) *options.log << msg << std::endl;
  };

  // Group by (model, dataset) keeping first-appearance order.
  std::vector<std::pair<std::string, std::string>> group_order;
  std::map<std::pair<std::string, std::string>, std::vector<RunKey>> pending;
  for (const auto& key : plan.runs) {
    const auto paths = output_paths(config.outputs_dir, key);
    if (!options.force && fs::exists(paths.lists) && fs::exists(paths.metrics)) {
      summary.skipped.push_back(key);
      log("skip " + key.stem() + " (outputs exist)");
      continue;
    }
    const auto group = std::pair{key.model, key.dataset};
    if (!pending.count(group)) group_order.push_back(group);
    pending[group].push_back(key);
  }

  std::map<std::string, std::shared_ptr<const DatasetBundle>> bundles;
  std::map<std::string, UserGroups> user_groups;
  EvaluationSettings eval;
  eval.top_k = config.top_k;
  eval.metrics = config.evaluation_metrics;
  eval.gce_beta = config.gce_beta;
  eval.seed = config.seed;

  for (const auto& group : group_order) {
    const auto& keys = pending[group];
    try {
      const auto start = std::chrono::steady_clock::now();
      auto& bundle = bundles[group.second];
      if (!bundle) {
        log("load " + group.second);
        bundle = std::make_shared<const DatasetBundle>(
            load_dataset(config.data_directory, group.second, config.limit_users));
        user_groups.emplace(group.second,
                            compute_active_users(*bundle, config.active_users_percentage));
      }
      const UserGroups& groups = user_groups.at(group.second);
      const ModelInfo& info = find_model(group.first);

      detail::GroupResult result;
      if (info.contextual) {
        auto model = detail::make_context_model(info.kind, *bundle);
        std::vector<std::string> fusions;
        for (const auto& k : keys) fusions.push_back(k.fusion);
        log("score " + group.first + " on " + group.second);
        result = detail::rank_context_group(*model, *bundle, fusions, config, options.workers,
                                            summary.users_scored);
      } else {
        auto model = detail::make_baseline(info.kind, *bundle, config);
        log("score " + group.first + " on " + group.second);
        result.lists[std::string(kNoFusion)] =
            detail::rank_baseline(*model, *bundle, config, options.workers, summary.users_scored);
      }

      for (const auto& key : keys) {
        if (!result.lists.count(key.fusion)) {
          summary.failed.push_back(
              {key, "weighted-sum tuning needs a nonempty tune split in " + key.dataset});
          log("FAILED " + key.stem() + ": empty tune split");
          continue;
        }
        const auto& lists = result.lists.at(key.fusion);
        RunMetadata meta{key.model, key.dataset, key.fusion, key.list_limit, key.limit_users,
                         config.seed};
        const auto report = evaluate_run(lists, *bundle, &groups, eval, meta);
        const auto paths = output_paths(config.outputs_dir, key);
        write_atomically(paths.lists, format_lists(key, config.seed, lists));
        write_atomically(paths.metrics,
                         format_metrics(key, config.seed, report,
                                        key.fusion == "weighted" ? result.tuned : std::nullopt));
        summary.executed.push_back(key);
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      log("done " + group.first + " on " + group.second + " in " + format_double(secs) + " s");
    } catch (const std::exception& e) {
      for (const auto& key : keys) summary.failed.push_back({key, e.what()});
      log("FAILED " + group.first + " on " + group.second + ": " + e.what());
    }
  }
  return summary;
}

}  // namespace poibench

#endif  // POIBENCH_RUNNER_HPP_
