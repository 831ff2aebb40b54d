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

// Weighted aggregation of predicted (or measured) quality values into a
// per-algorithm score and a deterministic ranking.

#ifndef PDREC_RECOMMENDER_H_
#define PDREC_RECOMMENDER_H_

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdrec/bundle.h"
#include "pdrec/discovery.h"
#include "pdrec/event_log.h"
#include "pdrec/features.h"
#include "pdrec/quality.h"

namespace pdrec {

using MeasureValues = std::array<double, 4>;  // indexed by MeasureId

struct WeightVector {
  MeasureValues weights{};

  double Get(MeasureId id) const { return weights[static_cast<int>(id)]; }
  // Throws kInvalidWeights (outside [0, 100] or non-finite) or
  // kAllZeroWeights.
  void Validate() const;

  // Object keyed by measure name; all four keys are required.
  static WeightVector FromJson(const nlohmann::json& json);
  nlohmann::json ToJson() const;
};

// sum(w * v) / sum(w). Validates `weights`.
double Score(const MeasureValues& values, const WeightVector& weights);

struct AlgorithmScore {
  AlgorithmId algorithm = AlgorithmId::kAlpha;
  MeasureValues predicted{};
  double score = 0;
  bool failed = false;
  std::string error;
};

struct Recommendation {
  std::string log_id;
  WeightVector weights;
  std::vector<AlgorithmScore> results;  // ranked
  std::string bundle_version;
};

// Descending score, ties by algorithm name; failed entries last.
void RankResults(std::vector<AlgorithmScore>* results);

Recommendation Recommend(const FeatureVector& features,
                         const WeightVector& weights,
                         const ModelBundle& bundle);
Recommendation Recommend(const EventLog& log, const std::string& log_id,
                         const WeightVector& weights,
                         const ModelBundle& bundle);

// Runs every miner and scores the measured values. A miner that throws is
// ranked last with `failed` set.
Recommendation EvaluateGroundTruth(const EventLog& log,
                                   const std::string& log_id,
                                   const WeightVector& weights);

// {log_id, weights, results:[{algorithm, score, predicted:{...}}],
//  bundle_version}; failed entries also carry "failed" and "error".
nlohmann::json RecommendationToJson(const Recommendation& recommendation);

}  // namespace pdrec

#endif  // PDREC_RECOMMENDER_H_
