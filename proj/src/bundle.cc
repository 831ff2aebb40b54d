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

#include "pdrec/bundle.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pdrec/error.h"
#include "pdrec/hashing.h"

namespace pdrec {
namespace {

constexpr int kBundleFormat = 1;

nlohmann::json VersionedContent(const ModelBundle& bundle) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto& [key, model] : bundle.models) {
    models.push_back({{"algorithm", AlgorithmName(key.first)},
                      {"measure", MeasureName(key.second)},
                      {"ensemble", EnsembleToJson(model)}});
  }
  return {{"catalog_version", bundle.catalog_version},
          {"feature_schema", bundle.feature_schema},
          {"models", std::move(models)}};
}

}  // namespace

TrainingDataset MakeDataset(const TrainingCorpus& corpus,
                            const std::vector<int>& schema,
                            AlgorithmId algorithm, MeasureId measure) {
  std::map<std::string, double> target;
  for (const LabelRow& row : corpus.labels) {
    if (row.algorithm == algorithm && row.measure == measure && !row.failed) {
      target[row.log_id] = row.value;
    }
  }
  TrainingDataset data;
  for (const FeatureVector& fv : corpus.features) {
    auto it = target.find(fv.log_id);
    if (it == target.end()) continue;
    std::vector<double> row;
    row.reserve(schema.size());
    for (int index : schema) row.push_back(fv.values.at(index));
    data.x.push_back(std::move(row));
    data.y.push_back(it->second);
    data.row_ids.push_back(fv.log_id);
  }
  return data;
}

const GradientBoostedEnsemble& ModelBundle::Model(AlgorithmId algorithm,
                                                  MeasureId measure) const {
  auto it = models.find({algorithm, measure});
  if (it == models.end()) {
    throw Error(ErrorCode::kUnfittedModel,
                "no model for " + std::string(AlgorithmName(algorithm)) + "/" +
                    std::string(MeasureName(measure)));
  }
  return it->second;
}

void ModelBundle::CheckCatalog() const {
  if (catalog_version != kFeatureCatalogVersion) {
    throw Error(ErrorCode::kSchemaMismatch,
                "bundle was trained on feature catalog '" + catalog_version +
                    "', expected '" + std::string(kFeatureCatalogVersion) +
                    "'");
  }
}

ModelBundle TrainBundle(const TrainingCorpus& corpus,
                        const BoostingParams& params, double prune_threshold) {
  std::vector<std::vector<double>> rows;
  for (const FeatureVector& fv : corpus.features) rows.push_back(fv.values);
  ModelBundle bundle;
  bundle.catalog_version = std::string(kFeatureCatalogVersion);
  bundle.feature_schema = PruneRedundant(rows, prune_threshold);

  nlohmann::json rows_per_model = nlohmann::json::object();
  for (AlgorithmId algorithm : kPortfolio) {
    for (MeasureId measure : kMeasures) {
      TrainingDataset data =
          MakeDataset(corpus, bundle.feature_schema, algorithm, measure);
      GradientBoostedEnsemble model;
      if (data.size() >= 2 * static_cast<std::size_t>(params.min_samples_leaf)) {
        model = Fit(data, params, bundle.feature_schema);
      } else {
        model.learning_rate = params.learning_rate;
        model.feature_schema = bundle.feature_schema;
        model.base_score =
            data.y.empty() ? 0.0
                           : std::accumulate(data.y.begin(), data.y.end(), 0.0) /
                                 static_cast<double>(data.y.size());
      }
      rows_per_model[std::string(AlgorithmName(algorithm)) + "/" +
                     std::string(MeasureName(measure))] = data.size();
      bundle.models.emplace(ModelKey{algorithm, measure}, std::move(model));
    }
  }
  bundle.training = {{"n_logs", corpus.features.size()},
                     {"prune_threshold", prune_threshold},
                     {"n_trees", params.n_trees},
                     {"max_depth", params.max_depth},
                     {"learning_rate", params.learning_rate},
                     {"min_samples_leaf", params.min_samples_leaf},
                     {"subsample", params.subsample},
                     {"seed", params.seed},
                     {"rows_per_model", std::move(rows_per_model)}};
  bundle.version = ComputeBundleVersion(bundle);
  return bundle;
}

std::string ComputeBundleVersion(const ModelBundle& bundle) {
  return ContentId(VersionedContent(bundle).dump());
}

nlohmann::json BundleToJson(const ModelBundle& bundle) {
  nlohmann::json out = VersionedContent(bundle);
  out["format"] = "pdrec-model-bundle";
  out["format_version"] = kBundleFormat;
  out["version"] = bundle.version;
  out["training"] = bundle.training;
  return out;
}

ModelBundle BundleFromJson(const nlohmann::json& json) {
  ModelBundle bundle;
  try {
    if (json.at("format").get<std::string>() != "pdrec-model-bundle" ||
        json.at("format_version").get<int>() != kBundleFormat) {
      throw Error(ErrorCode::kInvalidBundle, "unsupported bundle format");
    }
    bundle.catalog_version = json.at("catalog_version").get<std::string>();
    bundle.feature_schema = json.at("feature_schema").get<std::vector<int>>();
    for (const auto& entry : json.at("models")) {
      const auto algorithm =
          FindAlgorithm(entry.at("algorithm").get<std::string>());
      const auto measure = FindMeasure(entry.at("measure").get<std::string>());
      if (!algorithm || !measure) {
        throw Error(ErrorCode::kInvalidBundle, "unknown model key");
      }
      GradientBoostedEnsemble model = EnsembleFromJson(entry.at("ensemble"));
      if (model.feature_schema != bundle.feature_schema) {
        throw Error(ErrorCode::kInvalidBundle, "model schema differs");
      }
      bundle.models.emplace(ModelKey{*algorithm, *measure}, std::move(model));
    }
    bundle.training = json.value("training", nlohmann::json::object());
    bundle.version = json.at("version").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidBundle,
                std::string("malformed bundle: ") + e.what());
  }
  if (bundle.version != ComputeBundleVersion(bundle)) {
    throw Error(ErrorCode::kInvalidBundle, "bundle version does not match");
  }
  return bundle;
}

void SaveBundle(const ModelBundle& bundle, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  out << BundleToJson(bundle).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

ModelBundle LoadBundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidBundle,
                std::string("bundle is not JSON: ") + e.what());
  }
  return BundleFromJson(json);
}

std::vector<FeatureInsight> FeaturerInsights(const ModelBundle& bundle) {
  const auto& catalog = FeatureCatalog();
  std::vector<FeatureInsight> rows(catalog.size());
  std::vector<double> best(catalog.size(), 0.0);
  const double n_models = static_cast<double>(bundle.models.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    rows[i].index = static_cast<int>(i);
    rows[i].name = catalog[i].name;
    rows[i].description = catalog[i].description;
    rows[i].source = std::string(FeatureSourceName(catalog[i].source));
  }
  // std::map iterates in portfolio-then-measure order, so the first maximum
  // wins ties.
  for (const auto& [key, model] : bundle.models) {
    for (const auto& [index, gain] : FeatureImportance(model)) {
      FeatureInsight& row = rows[index];
      row.used_in_count += 1;
      row.score += gain / n_models;
      if (gain > best[index]) {
        best[index] = gain;
        row.most_important_for = key;
      }
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const FeatureInsight& a, const FeatureInsight& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.index < b.index;
            });
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].rank = static_cast<int>(r + 1);
  }
  return rows;
}

nlohmann::json FeatureInsightsToJson(const std::vector<FeatureInsight>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const FeatureInsight& row : rows) {
    nlohmann::json most = nullptr;
    if (row.most_important_for) {
      most = {{"algorithm", AlgorithmName(row.most_important_for->first)},
              {"measure", MeasureName(row.most_important_for->second)}};
    }
    out.push_back({{"index", row.index},
                   {"name", row.name},
                   {"description", row.description},
                   {"source", row.source},
                   {"used_in_count", row.used_in_count},
                   {"most_important_for", most},
                   {"rank", row.rank},
                   {"score", row.score}});
  }
  return out;
}

}  // namespace pdrec
