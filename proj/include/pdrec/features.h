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

// Fixed-schema feature extraction over event logs, the feature catalog, and
// Pearson-correlation-based redundancy pruning.

#ifndef PDREC_FEATURES_H_
#define PDREC_FEATURES_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdrec/event_log.h"

namespace pdrec {

// Bumped whenever the schema below changes; stored in model bundles.
inline constexpr std::string_view kFeatureCatalogVersion = "features-v1";
inline constexpr std::size_t kNumFeatures = 48;

enum class FeatureSource {
  kLogStatistics,
  kTraceLength,
  kActivity,
  kVariant,
  kDfg,
  kFootprint,
};

std::string_view FeatureSourceName(FeatureSource source);

struct FeatureDescriptor {
  std::string name;
  std::string description;
  FeatureSource source;
  std::size_t index;
};

// The full ordered catalog; indices are 0..kNumFeatures-1.
const std::vector<FeatureDescriptor>& FeatureCatalog();
// Returns nullptr for unknown names.
const FeatureDescriptor* FindFeature(std::string_view name);

struct FeatureVector {
  std::vector<double> values;  // aligned with FeatureCatalog()
  std::string log_id;
};

// Deterministic and finite. `log_id` is copied into the result.
FeatureVector ExtractFeatures(const EventLog& log, std::string log_id = "");

// Sample Pearson correlation. Returns 0 when either input has zero variance.
// Errors: kLengthMismatch, kTooFewSamples (fewer than two values).
double Pearson(std::span<const double> x, std::span<const double> y);

// Greedy pass over columns in index order: a column is dropped iff
// |Pearson| >= threshold against an already retained column. `rows` are
// per-log feature values of equal width. Returns retained column indices.
// Errors: kTooFewSamples (fewer than two rows), kLengthMismatch.
std::vector<int> PruneRedundant(const std::vector<std::vector<double>>& rows,
                                double threshold = 0.95);

// CSV: header "log_id,<feature names...>"; values printed round-trippable.
std::string FeaturesCsvHeader();
std::string FeaturesCsvRow(const FeatureVector& vector);

nlohmann::json FeatureVectorToJson(const FeatureVector& vector);
nlohmann::json FeatureCatalogToJson();

}  // namespace pdrec

#endif  // PDREC_FEATURES_H_
