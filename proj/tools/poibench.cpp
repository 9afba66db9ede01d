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

// poibench command-line driver: run a config, print dataset statistics, or
// re-score an existing lists file.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "poibench/poibench.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRunFailed = 2;

int cmd_run(const std::string& config_path, unsigned workers, bool force, bool quiet) {
  using namespace poibench;
  const RunConfig config = parse_config(config_path);
  const RunPlan plan = plan_runs(config);
  for (const auto& r : plan.rejections) std::cerr << "error: " << r << "\n";
  ExecuteOptions options;
  options.workers = workers;
  options.force = force;
  options.log = quiet ? nullptr : &std::cerr;
  const auto summary = execute(plan, config, options);
  for (const auto& f : summary.failed) {
    std::cerr << "run failed: " << f.key.stem() << ": " << f.message << "\n";
  }
  std::cout << "executed " << summary.executed.size() << ", skipped " << summary.skipped.size()
            << ", failed " << summary.failed.size() << " (users scored: "
            << summary.users_scored << ")\n";
  return summary.failed.empty() ? kExitOk : kExitRunFailed;
}

int cmd_stats(const std::filesystem::path& data_dir, const std::string& dataset) {
  using namespace poibench;
  const auto b = load_dataset(data_dir, dataset);
  const auto s = dataset_stats(b);
  std::cout << "dataset\t" << b.name << "\n"
            << "users\t" << s.users << "\n"
            << "pois\t" << s.pois << "\n"
            << "checkins\t" << s.check_ins << "\n"
            << "social\t" << (b.has_social() ? std::to_string(s.social) : "-") << "\n"
            << "categories\t" << (b.has_categories() ? std::to_string(s.categories) : "-")
            << "\n"
            << "density\t" << format_double(s.density) << "\n";
  return kExitOk;
}

int cmd_evaluate(const std::string& lists_path, const std::string& dataset,
                 const poibench::RunConfig& config) {
  using namespace poibench;
  const ListsFile file = read_lists_file(lists_path);
  long long limit_users = config.limit_users;
  if (auto it = file.header.find("limitUsers"); it != file.header.end()) {
    if (!parse_number(it->second, limit_users)) {
      throw ConfigError("lists header: bad limitUsers '" + it->second + "'");
    }
  }
  const auto b = load_dataset(config.data_directory, dataset, limit_users);
  const auto groups = compute_active_users(b, config.active_users_percentage);
  for (const auto& l : file.lists) {
    if (l.user >= b.users()) {
      throw ValidationError("lists file names user " + std::to_string(l.user) +
                            " outside dataset " + dataset);
    }
  }
  EvaluationSettings eval;
  eval.top_k = config.top_k;
  eval.metrics = config.evaluation_metrics;
  eval.gce_beta = config.gce_beta;
  eval.seed = config.seed;
  RunKey key;
  key.model = file.header.count("model") ? file.header.at("model") : "unknown";
  key.dataset = dataset;
  key.fusion = file.header.count("fusion") ? file.header.at("fusion") : std::string(kNoFusion);
  std::size_t list_limit = 0;
  for (const auto& l : file.lists) list_limit = std::max(list_limit, l.items.size());
  key.list_limit = list_limit;
  key.limit_users = limit_users;
  const RunMetadata meta{key.model, key.dataset, key.fusion, key.list_limit, key.limit_users,
                         config.seed};
  std::cout << format_metrics(key, config.seed, evaluate_run(file.lists, b, &groups, eval, meta));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-aware POI recommendation benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool force = false;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Execute every run a config describes");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--workers", workers, "Scoring threads")->check(CLI::PositiveNumber);
  run->add_flag("--force", force, "Recompute runs whose outputs already exist");
  run->add_flag("-q,--quiet", quiet, "No progress log");

  std::string dataset;
  std::string data_dir;
  std::string stats_config;
  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  stats->add_option("--dataset", dataset, "Dataset name")->required();
  stats->add_option("--data-dir", data_dir, "Data directory (default: Data)");
  stats->add_option("--config", stats_config, "Take the data directory from a config file");

  std::string lists_path;
  std::string eval_config;
  std::optional<std::size_t> top_k;
  auto* evaluate = app.add_subcommand("evaluate", "Re-score an existing lists file");
  evaluate->add_option("--lists", lists_path, "Lists file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--dataset", dataset, "Dataset name")->required();
  evaluate->add_option("--data-dir", data_dir, "Data directory (default: Data)");
  evaluate->add_option("--config", eval_config, "Config supplying evaluation settings");
  evaluate->add_option("--top-k", top_k, "Cut-off for the metrics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  // A config without models/datasets is fine for stats/evaluate.
  auto side_config = [&](const std::string& path) {
    poibench::RunConfig c;
    if (!path.empty()) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw poibench::ConfigError("cannot read config file " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      std::string text = ss.str();
      if (text.find("models") == std::string::npos) text += "\nmodels = MostPop\n";
      if (text.find("datasets") == std::string::npos) text += "\ndatasets = " + dataset + "\n";
      c = poibench::parse_config_text(text, path);
    }
    if (!data_dir.empty()) c.data_directory = data_dir;
    return c;
  };

  try {
    if (*run) return cmd_run(config_path, workers, force, quiet);
    if (*stats) return cmd_stats(side_config(stats_config).data_directory, dataset);
    auto c = side_config(eval_config);
    if (top_k) c.top_k = *top_k;
    if (c.top_k == 0) throw poibench::ConfigError("--top-k must be positive");
    return cmd_evaluate(lists_path, dataset, c);
  } catch (const poibench::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const poibench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailed;
  }
}
