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

#include "pdrec/recommender.h"

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pdrec/bundle.h"
#include "pdrec/corpus.h"
#include "pdrec/error.h"
#include "test_util.h"

namespace pdrec {
namespace {

using ::pdrec::testing::MakeLog;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kBadRequest;
}

WeightVector W(double f, double p, double g, double s) {
  WeightVector w;
  w.weights = {f, p, g, s};
  return w;
}

const ModelBundle& SmallBundle() {
  static const ModelBundle* bundle = [] {
    GeneratorConfig config;
    config.seed = 5;
    config.n_logs = 40;
    config.noise = 0.1;
    config.traces = {30, 60};
    TrainingCorpus corpus;
    for (const GeneratedLog& g : GenerateLogs(config)) {
      LabelLog(g.log, g.log_id, &corpus);
    }
    BoostingParams p;
    p.n_trees = 20;
    return new ModelBundle(TrainBundle(corpus, p));
  }();
  return *bundle;
}

TEST(Score, WeightedMean) {
  EXPECT_DOUBLE_EQ(Score({0.8, 0.6, 1.0, 0.4}, W(50, 50, 0, 0)), 0.7);
  EXPECT_DOUBLE_EQ(Score({0.8, 0.6, 1.0, 0.4}, W(1, 1, 1, 1)), 0.7);
  EXPECT_DOUBLE_EQ(Score({0.2, 0.9, 0.9, 0.9}, W(100, 0, 0, 0)), 0.2);
}

TEST(WeightVector, Validation) {
  EXPECT_EQ(CodeOf([] { Score({1, 1, 1, 1}, W(0, 0, 0, 0)); }),
            ErrorCode::kAllZeroWeights);
  EXPECT_EQ(CodeOf([] { W(-1, 5, 5, 5).Validate(); }),
            ErrorCode::kInvalidWeights);
  EXPECT_EQ(CodeOf([] { W(101, 5, 5, 5).Validate(); }),
            ErrorCode::kInvalidWeights);
  EXPECT_EQ(CodeOf([] { W(NAN, 5, 5, 5).Validate(); }),
            ErrorCode::kInvalidWeights);
  const nlohmann::json ok = {{"fitness", 10},
                             {"precision", 20},
                             {"generalization", 30},
                             {"simplicity", 40}};
  EXPECT_EQ(WeightVector::FromJson(ok).weights,
            (MeasureValues{10, 20, 30, 40}));
  EXPECT_EQ(WeightVector::FromJson(ok).ToJson(), ok);
  nlohmann::json missing = ok;
  missing.erase("simplicity");
  EXPECT_EQ(CodeOf([&] { WeightVector::FromJson(missing); }),
            ErrorCode::kInvalidWeights);
  nlohmann::json extra = ok;
  extra["recall"] = 1;
  EXPECT_EQ(CodeOf([&] { WeightVector::FromJson(extra); }),
            ErrorCode::kInvalidWeights);
  nlohmann::json text = ok;
  text["fitness"] = "high";
  EXPECT_EQ(CodeOf([&] { WeightVector::FromJson(text); }),
            ErrorCode::kInvalidWeights);
}

TEST(RankResults, TiesByNameFailedLast) {
  std::vector<AlgorithmScore> r(4);
  r[0].algorithm = AlgorithmId::kInductive;
  r[0].score = 0.5;
  r[1].algorithm = AlgorithmId::kAlpha;
  r[1].score = 0.9;
  r[1].failed = true;
  r[2].algorithm = AlgorithmId::kHeuristics;
  r[2].score = 0.5;
  r[3].algorithm = AlgorithmId::kAlphaPlus;
  r[3].score = 0.6;
  RankResults(&r);
  EXPECT_EQ(r[0].algorithm, AlgorithmId::kAlphaPlus);
  EXPECT_EQ(r[1].algorithm, AlgorithmId::kHeuristics);
  EXPECT_EQ(r[2].algorithm, AlgorithmId::kInductive);
  EXPECT_EQ(r[3].algorithm, AlgorithmId::kAlpha);
}

TEST(EvaluateGroundTruth, SequentialLog) {
  const EventLog log = MakeLog({{"a", "b", "c"}}, 5);
  const Recommendation rec = EvaluateGroundTruth(log, "seq", W(100, 0, 0, 0));
  ASSERT_EQ(rec.results.size(), 6);
  for (const AlgorithmScore& s : rec.results) {
    EXPECT_FALSE(s.failed);
    EXPECT_DOUBLE_EQ(s.predicted[0], 1.0) << AlgorithmName(s.algorithm);
  }
  const double top = rec.results.front().score;
  for (const AlgorithmScore& s : rec.results) {
    if (s.algorithm == AlgorithmId::kInductive) EXPECT_EQ(s.score, top);
  }
  EXPECT_EQ(rec.bundle_version, "ground-truth");
}

TEST(Recommend, RankingInvariances) {
  const ModelBundle& bundle = SmallBundle();
  GeneratorConfig config;
  config.seed = 99;
  config.n_logs = 5;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 50);
  for (const GeneratedLog& g : GenerateLogs(config)) {
    const FeatureVector fv = ExtractFeatures(g.log, g.log_id);
    for (int k = 0; k < 10; ++k) {
      const WeightVector w = W(u(rng), u(rng), u(rng), u(rng) + 1);
      const WeightVector w2 = W(2 * w.weights[0], 2 * w.weights[1],
                                2 * w.weights[2], 2 * w.weights[3]);
      const Recommendation a = Recommend(fv, w, bundle);
      const Recommendation b = Recommend(fv, w2, bundle);
      for (std::size_t i = 0; i < a.results.size(); ++i) {
        EXPECT_EQ(a.results[i].algorithm, b.results[i].algorithm);
        EXPECT_NEAR(a.results[i].score, b.results[i].score, 1e-12);
      }
    }
    const Recommendation fit = Recommend(fv, W(100, 0, 0, 0), bundle);
    for (std::size_t i = 1; i < fit.results.size(); ++i) {
      EXPECT_GE(fit.results[i - 1].predicted[0], fit.results[i].predicted[0]);
      EXPECT_NEAR(fit.results[i].score, fit.results[i].predicted[0], 1e-15);
    }
    EXPECT_EQ(CodeOf([&] { Recommend(fv, W(0, 0, 0, 0), bundle); }),
              ErrorCode::kAllZeroWeights);
  }
}

TEST(Recommend, JsonIsDeterministic) {
  const ModelBundle& bundle = SmallBundle();
  const EventLog log = MakeLog({{"a", "b", "c"}, {"a", "c", "b"}}, 4);
  const nlohmann::json a =
      RecommendationToJson(Recommend(log, "abc", W(10, 20, 30, 40), bundle));
  const nlohmann::json b =
      RecommendationToJson(Recommend(log, "abc", W(10, 20, 30, 40), bundle));
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.at("results").size(), 6);
  EXPECT_EQ(a.at("bundle_version"), bundle.version);
  EXPECT_EQ(a.at("log_id"), "abc");
}

TEST(Bundle, VersionAndRoundTrip) {
  const ModelBundle& bundle = SmallBundle();
  EXPECT_EQ(bundle.models.size(), 24);
  EXPECT_EQ(bundle.version.size(), 16);
  EXPECT_EQ(ComputeBundleVersion(bundle), bundle.version);
  const nlohmann::json j = BundleToJson(bundle);
  const ModelBundle back = BundleFromJson(j);
  EXPECT_EQ(back.version, bundle.version);
  EXPECT_EQ(BundleToJson(back), j);

  nlohmann::json tampered = j;
  tampered["version"] = "0000000000000000";
  EXPECT_EQ(CodeOf([&] { BundleFromJson(tampered); }),
            ErrorCode::kInvalidBundle);
  ModelBundle other = back;
  other.catalog_version = "features-v0";
  EXPECT_EQ(CodeOf([&] { other.CheckCatalog(); }), ErrorCode::kSchemaMismatch);
  other.models.clear();
  EXPECT_EQ(CodeOf([&] { other.Model(AlgorithmId::kAlpha, MeasureId::kFitness); }),
            ErrorCode::kUnfittedModel);
}

TEST(Bundle, FeaturerInsights) {
  const std::vector<FeatureInsight> rows = FeaturerInsights(SmallBundle());
  ASSERT_EQ(rows.size(), kNumFeatures);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].rank, static_cast<int>(i) + 1);
    if (i > 0) EXPECT_GE(rows[i - 1].score, rows[i].score);
    EXPECT_FALSE(rows[i].name.empty());
  }
  EXPECT_GT(rows.front().used_in_count, 0);
  EXPECT_TRUE(rows.front().most_important_for.has_value());
  EXPECT_EQ(FeatureInsightsToJson(rows).size(), kNumFeatures);
}

}  // namespace
}  // namespace pdrec
