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

#include <algorithm>
#include <cmath>

#include "pdrec/error.h"
#include "pdrec/features.h"

namespace pdrec {
namespace {

struct PathElement {
  int feature = -1;
  double zero_fraction = 0;
  double one_fraction = 0;
  double weight = 0;
};

using Path = std::vector<PathElement>;

void ExtendPath(Path& path, int depth, double zero_fraction,
                double one_fraction, int feature) {
  path[depth] = {feature, zero_fraction, one_fraction, depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].weight += one_fraction * path[i].weight * (i + 1) / (depth + 1);
    path[i].weight = zero_fraction * path[i].weight * (depth - i) / (depth + 1);
  }
}

void UnwindPath(Path& path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].weight;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0) {
      const double tmp = path[i].weight;
      path[i].weight = next * (depth + 1) / ((i + 1) * one);
      next = tmp - path[i].weight * zero * (depth - i) / (depth + 1);
    } else {
      path[i].weight = path[i].weight * (depth + 1) / (zero * (depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double UnwoundPathSum(const Path& path, int depth, int index) {
  const double one = path[index].one_fraction;
  const double zero = path[index].zero_fraction;
  double next = path[depth].weight;
  double total = 0;
  for (int i = depth - 1; i >= 0; --i) {
    if (one != 0) {
      const double tmp = next * (depth + 1) / ((i + 1) * one);
      total += tmp;
      next = path[i].weight - tmp * zero * (depth - i) / (depth + 1);
    } else {
      total += path[i].weight / zero / ((depth - i) / double(depth + 1));
    }
  }
  return total;
}

void Recurse(const RegressionTree& tree, std::span<const double> x,
             std::span<double> phi, int node, Path path, int depth,
             double zero_fraction, double one_fraction, int feature) {
  path.resize(std::max<std::size_t>(path.size(), depth + 2));
  ExtendPath(path, depth, zero_fraction, one_fraction, feature);
  const TreeNode& n = tree.nodes[node];
  if (n.is_leaf()) {
    for (int i = 1; i <= depth; ++i) {
      const double w = UnwoundPathSum(path, depth, i);
      const PathElement& e = path[i];
      phi[e.feature] += w * (e.one_fraction - e.zero_fraction) * n.value;
    }
    return;
  }
  const int hot = x[n.feature] < n.threshold ? n.left : n.right;
  const int cold = hot == n.left ? n.right : n.left;
  double incoming_zero = 1.0;
  double incoming_one = 1.0;
  for (int k = 1; k <= depth; ++k) {
    if (path[k].feature == n.feature) {
      incoming_zero = path[k].zero_fraction;
      incoming_one = path[k].one_fraction;
      UnwindPath(path, depth, k);
      --depth;
      break;
    }
  }
  const double hot_share = tree.nodes[hot].cover / n.cover;
  const double cold_share = tree.nodes[cold].cover / n.cover;
  Recurse(tree, x, phi, hot, path, depth + 1, hot_share * incoming_zero,
          incoming_one, n.feature);
  Recurse(tree, x, phi, cold, path, depth + 1, cold_share * incoming_zero, 0.0,
          n.feature);
}

}  // namespace

void TreeShap(const RegressionTree& tree, std::span<const double> x,
              std::span<double> phi) {
  if (tree.nodes.empty()) return;
  Recurse(tree, x, phi, 0, Path(2), 0, 1.0, 1.0, -1);
}

Attribution ShapValues(const GradientBoostedEnsemble& model,
                       std::span<const double> x) {
  if (model.feature_schema.empty()) {
    throw Error(ErrorCode::kUnfittedModel, "model has no feature schema");
  }
  Attribution out;
  out.prediction = model.PredictRaw(x);  // validates x
  out.clamped = out.prediction < 0.0 || out.prediction > 1.0;
  out.values.assign(x.begin(), x.end());
  out.feature_schema = model.feature_schema;
  out.contributions.assign(x.size(), 0.0);
  std::vector<double> phi(x.size());
  double expected = 0;
  for (const RegressionTree& tree : model.trees) {
    std::fill(phi.begin(), phi.end(), 0.0);
    TreeShap(tree, x, phi);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      out.contributions[i] += model.learning_rate * phi[i];
    }
    expected += tree.ExpectedValue();
  }
  out.base_value = model.base_score + model.learning_rate * expected;
  return out;
}

std::vector<PayloadItem> ExplanationPayload(const Attribution& attribution) {
  const auto& catalog = FeatureCatalog();
  std::vector<PayloadItem> items;
  for (std::size_t i = 0; i < attribution.contributions.size(); ++i) {
    PayloadItem item;
    item.feature = attribution.feature_schema[i];
    if (item.feature >= 0 &&
        item.feature < static_cast<int>(catalog.size())) {
      item.name = catalog[item.feature].name;
    }
    item.value = attribution.values[i];
    item.contribution = attribution.contributions[i];
    items.push_back(std::move(item));
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const PayloadItem& a, const PayloadItem& b) {
                     const double ma = std::abs(a.contribution);
                     const double mb = std::abs(b.contribution);
                     if (ma != mb) return ma > mb;
                     return a.feature < b.feature;
                   });
  double running = attribution.base_value;
  for (PayloadItem& item : items) {
    running += item.contribution;
    item.cumulative = running;
  }
  return items;
}

nlohmann::json AttributionToJson(const Attribution& attribution) {
  nlohmann::json items = nlohmann::json::array();
  for (const PayloadItem& item : ExplanationPayload(attribution)) {
    items.push_back({{"feature", item.feature},
                     {"name", item.name},
                     {"value", item.value},
                     {"contribution", item.contribution},
                     {"cumulative", item.cumulative}});
  }
  return {{"base", attribution.base_value},
          {"prediction", attribution.prediction},
          {"clamped", attribution.clamped},
          {"items", std::move(items)}};
}

}  // namespace pdrec
