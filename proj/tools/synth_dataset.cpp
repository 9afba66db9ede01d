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

// Writes a generated dataset in the on-disk layout the loader reads.

#include <iostream>

#include "CLI11.hpp"
#include "poibench/dataset.hpp"
#include "poibench/synthetic.hpp"

int main(int argc, char** argv) {
  poibench::SyntheticSpec spec;
  std::string out = "Data";
  CLI::App app{"Generate a synthetic check-in dataset"};
  app.add_option("--out", out, "Data directory to write into");
  app.add_option("--name", spec.name, "Dataset name");
  app.add_option("--users", spec.users);
  app.add_option("--pois", spec.pois);
  app.add_option("--categories", spec.categories, "0 omits the categories file");
  app.add_option("--hotspots", spec.hotspots);
  app.add_option("--visits", spec.mean_visits, "Mean distinct POIs per user");
  app.add_option("--friends", spec.friends_per_user, "0 omits the social file");
  app.add_option("--seed", spec.seed);
  CLI11_PARSE(app, argc, argv);
  try {
    const auto b = poibench::make_synthetic_dataset(spec);
    poibench::write_dataset(b, out);
    const auto s = poibench::dataset_stats(b);
    std::cout << spec.name << ": " << s.users << " users, " << s.pois << " pois, "
              << s.check_ins << " check-ins\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
