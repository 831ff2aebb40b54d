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

// Exact Shapley attributions for boosted-tree ensembles (path-dependent
// TreeSHAP with node covers as conditional-expectation weights).

#ifndef PDREC_EXPLAINER_H_
#define PDREC_EXPLAINER_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdrec/learner.h"

namespace pdrec {

struct Attribution {
  double base_value = 0;  // expected raw output
  double prediction = 0;  // raw (unclamped) output at x
  // True when Predict() clamps `prediction` into [0, 1].
  bool clamped = false;
  std::vector<double> contributions;  // per schema position
  std::vector<double> values;         // x, per schema position
  std::vector<int> feature_schema;    // catalog index per position
};

// SHAP values of one tree; `phi` is indexed by schema position and
// accumulated into.
void TreeShap(const RegressionTree& tree, std::span<const double> x,
              std::span<double> phi);

// Throws kSchemaMismatch or kNonFiniteInput. A model without a schema is
// unfitted (kUnfittedModel).
Attribution ShapValues(const GradientBoostedEnsemble& model,
                       std::span<const double> x);

struct PayloadItem {
  int feature = 0;  // catalog index
  std::string name;
  double value = 0;
  double contribution = 0;
  double cumulative = 0;  // base_value plus this and all earlier items
};

// Sorted by |contribution| descending, ties by catalog index.
std::vector<PayloadItem> ExplanationPayload(const Attribution& attribution);

// {base, prediction, clamped, items:[{feature, name, value, contribution,
//  cumulative}]}
nlohmann::json AttributionToJson(const Attribution& attribution);

}  // namespace pdrec

#endif  // PDREC_EXPLAINER_H_
