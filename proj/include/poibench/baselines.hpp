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

#ifndef POIBENCH_BASELINES_HPP_
#define POIBENCH_BASELINES_HPP_

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "poibench/context.hpp"
#include "poibench/dataset.hpp"

namespace poibench {

/// Context-free scorer; scores are aligned with candidate_set(bundle, user).
class BaselineModel {
 public:
  virtual ~BaselineModel() = default;
  virtual std::string_view name() const = 0;
  virtual std::vector<double> scores(UserId user,
                                     std::span<const PoiId> candidates) const = 0;
};

// ---------------------------------------------------------------------------
// MostPop

inline std::vector<double> poi_popularity(const CheckInMatrix& train) {
  std::vector<double> pop(train.pois(), 0.0);
  for (UserId u = 0; u < train.users(); ++u) {
    for (const auto& c : train.row(u)) pop[c.poi] += c.frequency;
  }
  return pop;
}

/// Total train frequency of each candidate.
inline std::vector<double> most_pop_scores(const DatasetBundle& b, UserId user) {
  return gather(poi_popularity(b.train), candidate_set(b, user));
}

class MostPop final : public BaselineModel {
 public:
  explicit MostPop(const DatasetBundle& b) : popularity_(poi_popularity(b.train)) {}

  std::string_view name() const override { return "MostPop"; }
  std::vector<double> scores(UserId, std::span<const PoiId> candidates) const override {
    return gather(popularity_, candidates);
  }

 private:
  std::vector<double> popularity_;
};

// ---------------------------------------------------------------------------
// Matrix factorization

struct MfHyperparameters {
  std::size_t factors = 50;
  double learning_rate = 0.01;
  double regularization = 0.02;
  std::size_t epochs = 30;
  std::size_t negatives_per_positive = 4;
  std::uint64_t seed = 42;
};

struct MfModel {
  std::size_t users = 0;
  std::size_t pois = 0;
  std::size_t factors = 0;
  std::vector<double> user_factors;  // users x factors, row-major
  std::vector<double> item_factors;  // pois x factors, row-major
  MfHyperparameters hyperparameters;
  std::vector<double> loss_trace;    // mean squared error per epoch

  std::span<const double> user_row(UserId u) const {
    return {user_factors.data() + static_cast<std::size_t>(u) * factors, factors};
  }
  std::span<const double> item_row(PoiId p) const {
    return {item_factors.data() + static_cast<std::size_t>(p) * factors, factors};
  }

  double score(UserId u, PoiId p) const {
    if (u >= users) throw std::out_of_range("unknown user id " + std::to_string(u));
    if (p >= pois) throw std::out_of_range("unknown poi id " + std::to_string(p));
    const auto x = user_row(u);
    const auto y = item_row(p);
    double dot = 0.0;
    for (std::size_t k = 0; k < factors; ++k) dot += x[k] * y[k];
    return dot;
  }
};

/// SGD on squared error: observed train cells have target 1, uniformly
/// sampled unvisited POIs target 0. Positives are visited in a seeded shuffle
/// every epoch, each followed by its negatives.
inline MfModel train_mf(const DatasetBundle& b, const MfHyperparameters& hp = {}) {
  if (b.train.entries() == 0) throw TrainingError("MF needs a nonempty train matrix");
  if (hp.factors == 0) throw ConfigError("MF factor count must be positive");

  MfModel m;
  m.users = b.users();
  m.pois = b.pois();
  m.factors = hp.factors;
  m.hyperparameters = hp;
  Rng rng(hp.seed);
  m.user_factors.resize(m.users * m.factors);
  m.item_factors.resize(m.pois * m.factors);
  for (double& v : m.user_factors) v = uniform_real(rng, -0.01, 0.01);
  for (double& v : m.item_factors) v = uniform_real(rng, -0.01, 0.01);

  std::vector<std::pair<UserId, PoiId>> positives;
  positives.reserve(b.train.entries());
  for (UserId u = 0; u < b.users(); ++u) {
    for (const auto& c : b.train.row(u)) positives.emplace_back(u, c.poi);
  }

  const std::size_t k = m.factors;
  auto step = [&](UserId u, PoiId p, double target) {
    double* x = m.user_factors.data() + static_cast<std::size_t>(u) * k;
    double* y = m.item_factors.data() + static_cast<std::size_t>(p) * k;
    double pred = 0.0;
    for (std::size_t f = 0; f < k; ++f) pred += x[f] * y[f];
    const double err = target - pred;
    for (std::size_t f = 0; f < k; ++f) {
      const double xf = x[f], yf = y[f];
      x[f] += hp.learning_rate * (err * yf - hp.regularization * xf);
      y[f] += hp.learning_rate * (err * xf - hp.regularization * yf);
    }
    return err * err;
  };

  for (std::size_t epoch = 0; epoch < hp.epochs; ++epoch) {
    shuffle(positives, rng);
    double loss = 0.0;
    std::size_t samples = 0;
    for (const auto& [u, p] : positives) {
      loss += step(u, p, 1.0);
      ++samples;
      const auto visited = b.train.row(u).size();
      if (visited >= m.pois) continue;
      for (std::size_t n = 0; n < hp.negatives_per_positive; ++n) {
        PoiId j;
        int attempts = 0;
        do {
          j = static_cast<PoiId>(uniform_index(rng, m.pois));
        } while (b.train.contains(u, j) && ++attempts < 64);
        if (b.train.contains(u, j)) continue;
        loss += step(u, j, 0.0);
        ++samples;
      }
    }
    loss /= static_cast<double>(samples);
    if (!std::isfinite(loss)) {
      throw TrainingError("MF loss became non-finite at epoch " +
                          std::to_string(epoch + 1) + " (learning rate " +
                          format_double(hp.learning_rate) + ")");
    }
    m.loss_trace.push_back(loss);
  }
  return m;
}

inline std::vector<double> mf_scores(const MfModel& model, UserId user,
                                     std::span<const PoiId> candidates) {
  std::vector<double> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = model.score(user, candidates[i]);
  return out;
}

class MatrixFactorization final : public BaselineModel {
 public:
  MatrixFactorization(const DatasetBundle& b, const MfHyperparameters& hp)
      : model_(train_mf(b, hp)) {}

  std::string_view name() const override { return "MF"; }
  std::vector<double> scores(UserId user,
                             std::span<const PoiId> candidates) const override {
    return mf_scores(model_, user, candidates);
  }
  const MfModel& model() const { return model_; }

 private:
  MfModel model_;
};

}  // namespace poibench

#endif  // POIBENCH_BASELINES_HPP_
