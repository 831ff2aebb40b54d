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

#include <algorithm>
#include <cmath>

#include "pdrec/error.h"

namespace pdrec {

void WeightVector::Validate() const {
  bool any = false;
  for (MeasureId id : kMeasures) {
    const double w = Get(id);
    if (!std::isfinite(w) || w < 0.0 || w > 100.0) {
      throw Error(ErrorCode::kInvalidWeights,
                  "weight for " + std::string(MeasureName(id)) +
                      " must lie in [0, 100]");
    }
    any |= w > 0.0;
  }
  if (!any) throw Error(ErrorCode::kAllZeroWeights, "all weights are zero");
}

WeightVector WeightVector::FromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    throw Error(ErrorCode::kInvalidWeights, "weights must be an object");
  }
  WeightVector out;
  for (MeasureId id : kMeasures) {
    const std::string name(MeasureName(id));
    if (!json.contains(name) || !json.at(name).is_number()) {
      throw Error(ErrorCode::kInvalidWeights,
                  "weights." + name + " must be a number");
    }
    out.weights[static_cast<int>(id)] = json.at(name).get<double>();
  }
  for (const auto& [key, value] : json.items()) {
    if (!FindMeasure(key)) {
      throw Error(ErrorCode::kInvalidWeights, "unknown measure '" + key + "'");
    }
  }
  out.Validate();
  return out;
}

nlohmann::json WeightVector::ToJson() const {
  nlohmann::json out = nlohmann::json::object();
  for (MeasureId id : kMeasures) out[std::string(MeasureName(id))] = Get(id);
  return out;
}

double Score(const MeasureValues& values, const WeightVector& weights) {
  weights.Validate();
  double numerator = 0;
  double denominator = 0;
  for (MeasureId id : kMeasures) {
    numerator += weights.Get(id) * values[static_cast<int>(id)];
    denominator += weights.Get(id);
  }
  return numerator / denominator;
}

void RankResults(std::vector<AlgorithmScore>* results) {
  std::sort(results->begin(), results->end(),
            [](const AlgorithmScore& a, const AlgorithmScore& b) {
              if (a.failed != b.failed) return !a.failed;
              if (a.score != b.score) return a.score > b.score;
              return AlgorithmName(a.algorithm) < AlgorithmName(b.algorithm);
            });
}

Recommendation Recommend(const FeatureVector& features,
                         const WeightVector& weights,
                         const ModelBundle& bundle) {
  weights.Validate();
  bundle.CheckCatalog();
  Recommendation out;
  out.log_id = features.log_id;
  out.weights = weights;
  out.bundle_version = bundle.version;
  for (AlgorithmId algorithm : kPortfolio) {
    AlgorithmScore entry;
    entry.algorithm = algorithm;
    for (MeasureId measure : kMeasures) {
      const GradientBoostedEnsemble& model = bundle.Model(algorithm, measure);
      entry.predicted[static_cast<int>(measure)] =
          model.Predict(model.Project(features.values));
    }
    entry.score = Score(entry.predicted, weights);
    out.results.push_back(entry);
  }
  RankResults(&out.results);
  return out;
}

Recommendation Recommend(const EventLog& log, const std::string& log_id,
                         const WeightVector& weights,
                         const ModelBundle& bundle) {
  weights.Validate();
  return Recommend(ExtractFeatures(log, log_id), weights, bundle);
}

Recommendation EvaluateGroundTruth(const EventLog& log,
                                   const std::string& log_id,
                                   const WeightVector& weights) {
  weights.Validate();
  Recommendation out;
  out.log_id = log_id;
  out.weights = weights;
  out.bundle_version = "ground-truth";
  const VariantLog variants = VariantLog::FromEventLog(log);
  for (AlgorithmId algorithm : kPortfolio) {
    AlgorithmScore entry;
    entry.algorithm = algorithm;
    try {
      const QualityReport report =
          EvaluateAll(variants, Discover(algorithm, log));
      entry.predicted = report.values;
      entry.score = Score(entry.predicted, weights);
    } catch (const Error& e) {
      entry.failed = true;
      entry.error = e.what();
    }
    out.results.push_back(entry);
  }
  RankResults(&out.results);
  return out;
}

nlohmann::json RecommendationToJson(const Recommendation& recommendation) {
  nlohmann::json results = nlohmann::json::array();
  for (const AlgorithmScore& entry : recommendation.results) {
    nlohmann::json predicted = nlohmann::json::object();
    for (MeasureId id : kMeasures) {
      predicted[std::string(MeasureName(id))] =
          entry.predicted[static_cast<int>(id)];
    }
    nlohmann::json row = {{"algorithm", AlgorithmName(entry.algorithm)},
                          {"score", entry.score},
                          {"predicted", std::move(predicted)}};
    if (entry.failed) {
      row["failed"] = true;
      row["error"] = entry.error;
    }
    results.push_back(std::move(row));
  }
  return {{"log_id", recommendation.log_id},
          {"weights", recommendation.weights.ToJson()},
          {"results", std::move(results)},
          {"bundle_version", recommendation.bundle_version}};
}

}  // namespace pdrec
