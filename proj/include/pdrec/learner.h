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

// Squared-error gradient boosting over CART regression trees, with
// k-fold cross-validation and gain-based feature importance.

#ifndef PDREC_LEARNER_H_
#define PDREC_LEARNER_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace pdrec {

struct TreeNode {
  // Position in the ensemble's feature schema; -1 marks a leaf.
  int feature = -1;
  double threshold = 0;  // samples with x[feature] < threshold go left
  int left = -1;
  int right = -1;
  double value = 0;  // leaf output (unscaled by the learning rate)
  double cover = 0;  // number of training samples reaching the node
  double gain = 0;   // squared-error reduction of the split

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double Predict(std::span<const double> x) const;
  // Cover-weighted mean of the leaf values.
  double ExpectedValue() const;
  // Throws Error(kInvalidBundle) on dangling children or broken covers.
  void Validate(std::size_t num_features) const;
};

struct BoostingParams {
  int n_trees = 100;
  int max_depth = 4;
  double learning_rate = 0.1;
  int min_samples_leaf = 3;
  double subsample = 1.0;  // row fraction per round, drawn with `seed`
  std::uint64_t seed = 0;

  void Validate() const;  // throws Error(kInvalidParameter)
};

struct TrainingDataset {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  std::vector<std::string> row_ids;

  std::size_t size() const { return y.size(); }
  std::size_t width() const { return x.empty() ? 0 : x.front().size(); }
  // Throws kLengthMismatch or kNonFiniteInput.
  void Validate() const;
};

class GradientBoostedEnsemble {
 public:
  double base_score = 0;
  double learning_rate = 0.1;
  std::vector<RegressionTree> trees;
  // Catalog index of every input column.
  std::vector<int> feature_schema;
  // Training RMSE after the base score and after each tree.
  std::vector<double> train_rmse;

  // base_score + learning_rate * sum of tree outputs, before clamping.
  // Throws kSchemaMismatch or kNonFiniteInput.
  double PredictRaw(std::span<const double> x) const;
  // PredictRaw clamped to [0, 1].
  double Predict(std::span<const double> x) const;
  // Picks the schema columns out of a full catalog-ordered vector.
  std::vector<double> Project(std::span<const double> full) const;
};

// Throws kTooFewSamples (fewer than 2 * min_samples_leaf rows),
// kNonFiniteInput, kLengthMismatch or kInvalidParameter. `feature_schema`
// defaults to 0..width-1.
GradientBoostedEnsemble Fit(const TrainingDataset& data,
                            const BoostingParams& params,
                            std::vector<int> feature_schema = {});

struct FoldMetrics {
  std::size_t test_size = 0;
  double mae = 0;
  double rmse = 0;
  double r2 = 0;
  double baseline_mae = 0;  // predicting the training-fold mean
};

struct CvReport {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> fold_of;  // per row
  std::vector<FoldMetrics> folds;
  FoldMetrics mean;  // metrics averaged over folds; test_size is the total
};

// Seeded shuffle into k equal-as-possible folds. Throws kTooFewSamples when
// there are fewer rows than folds or k < 2.
std::vector<int> AssignFolds(std::size_t rows, int k, std::uint64_t seed);
CvReport CrossValidate(const TrainingDataset& data, int k,
                       const BoostingParams& params, std::uint64_t seed);

// Total split gain per catalog index, normalized to sum 1; empty when the
// model has no splits.
std::map<int, double> FeatureImportance(const GradientBoostedEnsemble& model);

nlohmann::json EnsembleToJson(const GradientBoostedEnsemble& model);
// Throws Error(kInvalidBundle).
GradientBoostedEnsemble EnsembleFromJson(const nlohmann::json& json);

nlohmann::json CvReportToJson(const CvReport& report);
std::string CvReportToCsv(const CvReport& report);

}  // namespace pdrec

#endif  // PDREC_LEARNER_H_
