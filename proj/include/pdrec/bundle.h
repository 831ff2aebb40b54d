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

// The trained model bundle: one boosted ensemble per (algorithm, measure)
// pair over a shared retained feature schema, plus feature insights.

#ifndef PDREC_BUNDLE_H_
#define PDREC_BUNDLE_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdrec/discovery.h"
#include "pdrec/features.h"
#include "pdrec/learner.h"
#include "pdrec/quality.h"

namespace pdrec {

// One measured quality value of one algorithm on one log.
struct LabelRow {
  std::string log_id;
  AlgorithmId algorithm;
  MeasureId measure;
  double value = 0;
  bool failed = false;
};

struct TrainingCorpus {
  std::vector<FeatureVector> features;
  std::vector<LabelRow> labels;
};

// Rows of `corpus` with a non-failed label for (algorithm, measure),
// projected onto `schema` (catalog indices), in feature-vector order.
TrainingDataset MakeDataset(const TrainingCorpus& corpus,
                            const std::vector<int>& schema,
                            AlgorithmId algorithm, MeasureId measure);

using ModelKey = std::pair<AlgorithmId, MeasureId>;

struct ModelBundle {
  std::string catalog_version;
  std::vector<int> feature_schema;  // retained catalog indices
  std::map<ModelKey, GradientBoostedEnsemble> models;
  // Content hash of the catalog version, schema and models.
  std::string version;
  nlohmann::json training = nlohmann::json::object();

  // Throws Error(kUnfittedModel) when the pair is missing.
  const GradientBoostedEnsemble& Model(AlgorithmId algorithm,
                                       MeasureId measure) const;
  // Throws Error(kSchemaMismatch) when the catalog version differs from
  // the compiled-in one.
  void CheckCatalog() const;
};

// Prunes redundant features, then fits all 24 ensembles. Pairs with fewer
// usable rows than a tree needs get a constant model (no trees).
ModelBundle TrainBundle(const TrainingCorpus& corpus,
                        const BoostingParams& params,
                        double prune_threshold = 0.95);

std::string ComputeBundleVersion(const ModelBundle& bundle);
nlohmann::json BundleToJson(const ModelBundle& bundle);
// Throws Error(kInvalidBundle).
ModelBundle BundleFromJson(const nlohmann::json& json);
void SaveBundle(const ModelBundle& bundle, const std::string& path);
ModelBundle LoadBundle(const std::string& path);

struct FeatureInsight {
  int index = 0;
  std::string name;
  std::string description;
  std::string source;
  int used_in_count = 0;
  std::optional<ModelKey> most_important_for;
  int rank = 0;  // 1-based
  double score = 0;
};

// One entry per catalog feature, ordered by rank.
std::vector<FeatureInsight> FeaturerInsights(const ModelBundle& bundle);
nlohmann::json FeatureInsightsToJson(const std::vector<FeatureInsight>& rows);

}  // namespace pdrec

#endif  // PDREC_BUNDLE_H_
