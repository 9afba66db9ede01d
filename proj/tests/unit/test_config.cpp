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

#include <gtest/gtest.h>

#include <string>

#include "poibench/config.hpp"
#include "support/fixtures.hpp"

namespace poibench {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Config, Defaults) {
  const auto c = parse_config_text("models = MostPop\ndatasets = Yelp\n");
  EXPECT_EQ(c.top_k, 10u);
  EXPECT_EQ(c.list_limit, 10u);
  EXPECT_EQ(c.limit_users, -1);
  EXPECT_EQ(c.fusions, fusion_names());
  EXPECT_EQ(c.evaluation_metrics, metric_names());
  EXPECT_DOUBLE_EQ(c.active_users_percentage, 0.2);
}

TEST(Config, ParsesEveryKey) {
  const auto c = parse_config_text(R"(# experiment
dataDirectory = "/data/poi"
outputsDir = out   # trailing comment
topK = 5
listLimit = 20
limitUsers = 100
activeUsersPercentage = 0.1
models = geosoca, lore,USG
datasets = Yelp, Gowalla
fusions = Product, weighted_sum
evaluationMetrics = NDCG, coverage
seed = 9
gceBeta = 3
mfFactors = 8
mfLearningRate = 0.05
mfRegularization = 0
mfEpochs = 3
mfNegatives = 2
)");
  EXPECT_EQ(c.data_directory, "/data/poi");
  EXPECT_EQ(c.outputs_dir, "out");
  EXPECT_EQ(c.top_k, 5u);
  EXPECT_EQ(c.list_limit, 20u);
  EXPECT_EQ(c.limit_users, 100);
  EXPECT_EQ(c.models, (std::vector<std::string>{"GeoSoCa", "LORE", "USG"}));
  EXPECT_EQ(c.datasets, (std::vector<std::string>{"Yelp", "Gowalla"}));
  EXPECT_EQ(c.fusions, (std::vector<std::string>{"product", "weighted"}));
  EXPECT_EQ(c.evaluation_metrics, (std::vector<std::string>{"ndcg", "coverage"}));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.mf_with_seed().seed, 9u);
  EXPECT_EQ(c.mf.factors, 8u);
  EXPECT_EQ(c.mf.epochs, 3u);
  EXPECT_EQ(c.mf.negatives_per_positive, 2u);
}

TEST(Config, TopKAboveListLimit) {
  const auto e = error_of("models = MF\ndatasets = Yelp\ntopK = 20\nlistLimit = 10\n");
  EXPECT_NE(e.find("topK"), std::string::npos);
  EXPECT_NE(e.find("listLimit"), std::string::npos);
}

TEST(Config, RejectsBadInput) {
  const std::string base = "models = MF\ndatasets = Yelp\n";
  EXPECT_NE(error_of(base + "colour = red\n").find("unknown key 'colour'"), std::string::npos);
  EXPECT_NE(error_of(base + "topK = 3\ntopK = 4\n").find("duplicate key"), std::string::npos);
  EXPECT_NE(error_of(base + "topK = ten\n").find("topK"), std::string::npos);
  EXPECT_NE(error_of(base + "just words\n").find(":3:"), std::string::npos);
  EXPECT_NE(error_of("models = Magic\ndatasets = Yelp\n").find("GeoSoCa"), std::string::npos);
  EXPECT_NE(error_of(base + "fusions = max\n").find("weighted"), std::string::npos);
  EXPECT_NE(error_of(base + "evaluationMetrics = auc\n").find("auc"), std::string::npos);
  EXPECT_NE(error_of("datasets = Yelp\n").find("models"), std::string::npos);
  EXPECT_NE(error_of("models = MF\n").find("datasets"), std::string::npos);
  EXPECT_NE(error_of(base + "limitUsers = 0\n").find("limitUsers"), std::string::npos);
  EXPECT_NE(error_of(base + "activeUsersPercentage = 1.5\n").find("activeUsers"),
            std::string::npos);
  EXPECT_NE(error_of("models = MF\ndatasets = ../etc\n").find("plain dataset"), std::string::npos);
  EXPECT_NE(error_of(base + "gceBeta = 1\n").find("gceBeta"), std::string::npos);
  EXPECT_NE(error_of(base + "topK = 0\n").find("topK"), std::string::npos);
}

TEST(Config, ModelRegistry) {
  EXPECT_EQ(find_model("lore").name, "LORE");
  EXPECT_TRUE(find_model("GeoSoCa").needs_categories);
  EXPECT_TRUE(find_model("USG").needs_social);
  EXPECT_FALSE(find_model("MostPop").contextual);
  EXPECT_EQ(canonical_fusion("WeightedSum"), "weighted");
  EXPECT_THROW(canonical_fusion("mean"), ConfigError);
}

TEST(Config, ReadsFile) {
  testing::TempDir dir;
  testing::write_text(dir / "run.cfg", "models = MF\ndatasets = Yelp\n");
  EXPECT_EQ(parse_config(dir / "run.cfg").models.front(), "MF");
  try {
    parse_config(dir / "missing.cfg");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.cfg"), std::string::npos);
  }
}

}  // namespace
}  // namespace poibench
