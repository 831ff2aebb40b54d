/*
 * Copyright 2026 The pdrec Authors.
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

#include "pdrec/explainer.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pdrec/error.h"
#include "pdrec/learner.h"
#include "shap_oracle.h"

namespace pdrec {
namespace {

using ::pdrec::testing::BruteForceShapley;

struct Case {
  GradientBoostedEnsemble model;
  TrainingDataset data;
};

Case RandomModel(std::uint64_t seed, int trees, int width) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u;
  Case c;
  const int rows = 40 + static_cast<int>(rng() % 80);
  for (int i = 0; i < rows; ++i) {
    std::vector<double> x(width);
    // Coarse grid values so inputs hit thresholds and ties exactly.
    for (double& v : x) v = std::floor(u(rng) * 6) / 5;
    c.data.x.push_back(x);
    c.data.y.push_back(std::sin(3 * x[0]) + x[width - 1] * u(rng));
  }
  BoostingParams p;
  p.n_trees = trees;
  p.max_depth = 2 + static_cast<int>(rng() % 5);
  p.learning_rate = 0.5;
  p.min_samples_leaf = 1 + static_cast<int>(rng() % 3);
  p.subsample = 0.8;
  p.seed = seed;
  c.model = Fit(c.data, p);
  return c;
}

TEST(TreeShap, MatchesBruteForceOnSingleTrees) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  for (int t = 0; t < 50; ++t) {
    const int width = 2 + t % 7;
    const Case c = RandomModel(100 + t, 1, width);
    ASSERT_EQ(c.model.trees.size(), 1);
    const RegressionTree& tree = c.model.trees[0];
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x =
          k < 5 ? c.data.x[k] : std::vector<double>(width);
      if (k >= 5) {
        for (double& v : x) v = u(rng);
      }
      std::vector<double> phi(width, 0.0);
      TreeShap(tree, x, phi);
      const std::vector<double> oracle = BruteForceShapley(tree, x);
      for (int i = 0; i < width; ++i) {
        EXPECT_NEAR(phi[i], oracle[i], 1e-9) << "tree " << t << " i " << i;
      }
    }
  }
}

TEST(ShapValues, LocalAccuracy) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  for (int t = 0; t < 20; ++t) {
    const Case c = RandomModel(200 + t, 30, 5);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> x(5);
      for (double& v : x) v = u(rng);
      const Attribution a = ShapValues(c.model, x);
      double sum = a.base_value;
      for (double phi : a.contributions) sum += phi;
      EXPECT_NEAR(sum, c.model.PredictRaw(x), 1e-9);
      EXPECT_NEAR(a.prediction, c.model.PredictRaw(x), 1e-12);
      EXPECT_EQ(a.clamped, a.prediction < 0 || a.prediction > 1);
    }
  }
}

TEST(ShapValues, DegenerateModels) {
  GradientBoostedEnsemble constant;
  constant.base_score = 0.3;
  constant.feature_schema = {4, 7};
  const Attribution a = ShapValues(constant, std::vector<double>{1, 2});
  EXPECT_EQ(a.base_value, 0.3);
  EXPECT_EQ(a.contributions, (std::vector<double>{0, 0}));

  TrainingDataset d;
  for (int i = 0; i < 20; ++i) {
    d.x.push_back({static_cast<double>(i), 1.0});
    d.y.push_back(i < 10 ? 0.0 : 1.0);
  }
  const GradientBoostedEnsemble m = Fit(d, BoostingParams{});
  const Attribution b = ShapValues(m, std::vector<double>{3, 1});
  EXPECT_EQ(b.contributions[1], 0.0);

  try {
    ShapValues(GradientBoostedEnsemble{}, std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnfittedModel);
  }
  try {
    ShapValues(m, std::vector<double>{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaMismatch);
  }
}

TEST(ExplanationPayload, SortedWithRunningTotal) {
  const Case c = RandomModel(7, 40, 6);
  GradientBoostedEnsemble model = c.model;
  model.feature_schema = {0, 1, 2, 3, 4, 5};
  const Attribution a = ShapValues(model, c.data.x[0]);
  const std::vector<PayloadItem> items = ExplanationPayload(a);
  ASSERT_EQ(items.size(), 6);
  for (std::size_t i = 1; i < items.size(); ++i) {
    EXPECT_GE(std::abs(items[i - 1].contribution),
              std::abs(items[i].contribution));
  }
  EXPECT_NEAR(items.back().cumulative, a.prediction, 1e-9);
  EXPECT_EQ(items[0].name.empty(), false);
  const nlohmann::json j = AttributionToJson(a);
  EXPECT_EQ(j.at("items").size(), 6);
  EXPECT_DOUBLE_EQ(j.at("prediction").get<double>(), a.prediction);
}

}  // namespace
}  // namespace pdrec
