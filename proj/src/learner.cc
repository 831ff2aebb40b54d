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

#include "pdrec/learner.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "pdrec/error.h"

namespace pdrec {
namespace {

// A split must remove at least this fraction of the node's squared residuals;
// smaller gains are rounding noise.
constexpr double kMinRelativeGain = 1e-10;

void CheckFinite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteInput, "non-finite input value");
    }
  }
}

// Threshold strictly above `lo` and at most `hi`.
double SplitPoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid > lo ? mid : hi;
}

struct NodeStats {
  double sum = 0;
  double sum_sq = 0;
  double count = 0;
};

struct Candidate {
  double gain = 0;
  int feature = -1;
  double threshold = 0;
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingDataset& data,
              const std::vector<std::vector<int>>& sorted,
              const BoostingParams& params)
      : data_(data), sorted_(sorted), params_(params) {}

  // `active[r]` selects the rows used to grow the tree.
  RegressionTree Build(const std::vector<double>& residual,
                       const std::vector<bool>& active) {
    RegressionTree tree;
    const std::size_t n = data_.size();
    std::vector<int> node_of(n, -1);
    NodeStats root;
    for (std::size_t r = 0; r < n; ++r) {
      if (!active[r]) continue;
      node_of[r] = 0;
      root.sum += residual[r];
      root.sum_sq += residual[r] * residual[r];
      root.count += 1;
    }
    tree.nodes.push_back(Leaf(root));
    std::vector<int> frontier{0};
    std::vector<NodeStats> stats{root};  // indexed by node

    for (int depth = 0; depth < params_.max_depth && !frontier.empty();
         ++depth) {
      std::vector<Candidate> best = FindSplits(residual, node_of, frontier,
                                               stats, tree.nodes.size());
      std::vector<int> next;
      for (int node : frontier) {
        const Candidate& c = best[node];
        if (c.feature < 0 ||
            !(c.gain > kMinRelativeGain * stats[node].sum_sq)) {
          continue;
        }
        const int left = static_cast<int>(tree.nodes.size());
        TreeNode& parent = tree.nodes[node];
        parent.feature = c.feature;
        parent.threshold = c.threshold;
        parent.gain = c.gain;
        parent.left = left;
        parent.right = left + 1;
        tree.nodes.resize(left + 2);
        stats.resize(tree.nodes.size());
        next.push_back(left);
        next.push_back(left + 1);
      }
      if (next.empty()) break;
      // Route rows to the new children and accumulate their statistics.
      for (std::size_t r = 0; r < n; ++r) {
        const int node = node_of[r];
        if (node < 0 || tree.nodes[node].is_leaf()) continue;
        const TreeNode& parent = tree.nodes[node];
        const int child = data_.x[r][parent.feature] < parent.threshold
                              ? parent.left
                              : parent.right;
        node_of[r] = child;
        stats[child].sum += residual[r];
        stats[child].sum_sq += residual[r] * residual[r];
        stats[child].count += 1;
      }
      for (int child : next) tree.nodes[child] = Leaf(stats[child]);
      frontier = std::move(next);
    }
    // Internal nodes keep their cover; their value is the node mean.
    return tree;
  }

 private:
  TreeNode Leaf(const NodeStats& s) const {
    TreeNode leaf;
    leaf.cover = s.count;
    leaf.value = s.count > 0 ? s.sum / s.count : 0.0;
    return leaf;
  }

  std::vector<Candidate> FindSplits(const std::vector<double>& residual,
                                    const std::vector<int>& node_of,
                                    const std::vector<int>& frontier,
                                    const std::vector<NodeStats>& stats,
                                    std::size_t num_nodes) const {
    std::vector<Candidate> best(num_nodes);
    std::vector<bool> in_frontier(num_nodes, false);
    for (int node : frontier) in_frontier[node] = true;
    const double min_leaf = params_.min_samples_leaf;
    std::vector<NodeStats> left(num_nodes);
    std::vector<double> last(num_nodes);
    std::vector<bool> seen(num_nodes);
    for (std::size_t f = 0; f < sorted_.size(); ++f) {
      std::fill(left.begin(), left.end(), NodeStats{});
      std::fill(seen.begin(), seen.end(), false);
      for (int r : sorted_[f]) {
        const int node = node_of[r];
        if (node < 0 || !in_frontier[node]) continue;
        const double v = data_.x[r][f];
        const NodeStats& total = stats[node];
        NodeStats& l = left[node];
        if (seen[node] && v > last[node] && l.count >= min_leaf &&
            total.count - l.count >= min_leaf) {
          const double rs = total.sum - l.sum;
          const double rc = total.count - l.count;
          const double gain = l.sum * l.sum / l.count + rs * rs / rc -
                              total.sum * total.sum / total.count;
          if (gain > best[node].gain) {
            best[node] = {gain, static_cast<int>(f),
                          SplitPoint(last[node], v)};
          }
        }
        l.sum += residual[r];
        l.count += 1;
        last[node] = v;
        seen[node] = true;
      }
    }
    return best;
  }

  const TrainingDataset& data_;
  const std::vector<std::vector<int>>& sorted_;
  const BoostingParams& params_;
};

double Rmse(const std::vector<double>& y, const std::vector<double>& pred) {
  double sse = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sse += (y[i] - pred[i]) * (y[i] - pred[i]);
  }
  return y.empty() ? 0.0 : std::sqrt(sse / static_cast<double>(y.size()));
}

}  // namespace

double RegressionTree::Predict(std::span<const double> x) const {
  int node = 0;
  while (!nodes[node].is_leaf()) {
    const TreeNode& n = nodes[node];
    node = x[n.feature] < n.threshold ? n.left : n.right;
  }
  return nodes[node].value;
}

double RegressionTree::ExpectedValue() const {
  if (nodes.empty() || nodes[0].cover <= 0) return 0.0;
  double total = 0;
  for (const TreeNode& n : nodes) {
    if (n.is_leaf()) total += n.cover * n.value;
  }
  return total / nodes[0].cover;
}

void RegressionTree::Validate(std::size_t num_features) const {
  if (nodes.empty()) throw Error(ErrorCode::kInvalidBundle, "empty tree");
  const int size = static_cast<int>(nodes.size());
  for (const TreeNode& n : nodes) {
    if (n.is_leaf()) continue;
    if (n.feature >= static_cast<int>(num_features) || n.left <= 0 ||
        n.right <= 0 || n.left >= size || n.right >= size) {
      throw Error(ErrorCode::kInvalidBundle, "malformed tree node");
    }
    if (std::abs(nodes[n.left].cover + nodes[n.right].cover - n.cover) >
        1e-9) {
      throw Error(ErrorCode::kInvalidBundle, "cover mismatch");
    }
  }
}

void BoostingParams::Validate() const {
  if (n_trees < 0 || max_depth < 1 || min_samples_leaf < 1 ||
      !(learning_rate > 0.0 && learning_rate <= 1.0) ||
      !(subsample > 0.0 && subsample <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "invalid boosting parameters");
  }
}

void TrainingDataset::Validate() const {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "|X| != |y|");
  }
  if (!row_ids.empty() && row_ids.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "row id count != |y|");
  }
  for (const auto& row : x) {
    if (row.size() != width()) {
      throw Error(ErrorCode::kLengthMismatch, "ragged feature rows");
    }
    CheckFinite(row);
  }
  CheckFinite(y);
}

double GradientBoostedEnsemble::PredictRaw(std::span<const double> x) const {
  if (x.size() != feature_schema.size()) {
    throw Error(ErrorCode::kSchemaMismatch,
                "expected " + std::to_string(feature_schema.size()) +
                    " features, got " + std::to_string(x.size()));
  }
  CheckFinite(x);
  double sum = 0;
  for (const RegressionTree& tree : trees) sum += tree.Predict(x);
  return base_score + learning_rate * sum;
}

double GradientBoostedEnsemble::Predict(std::span<const double> x) const {
  return std::clamp(PredictRaw(x), 0.0, 1.0);
}

std::vector<double> GradientBoostedEnsemble::Project(
    std::span<const double> full) const {
  std::vector<double> out;
  out.reserve(feature_schema.size());
  for (int index : feature_schema) {
    if (index < 0 || index >= static_cast<int>(full.size())) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "feature vector lacks catalog index " +
                      std::to_string(index));
    }
    out.push_back(full[index]);
  }
  return out;
}

GradientBoostedEnsemble Fit(const TrainingDataset& data,
                            const BoostingParams& params,
                            std::vector<int> feature_schema) {
  params.Validate();
  data.Validate();
  const std::size_t n = data.size();
  if (n < 2 * static_cast<std::size_t>(params.min_samples_leaf) || n == 0) {
    throw Error(ErrorCode::kTooFewSamples,
                "need at least " + std::to_string(2 * params.min_samples_leaf) +
                    " rows, got " + std::to_string(n));
  }
  const std::size_t d = data.width();
  if (feature_schema.empty()) {
    feature_schema.resize(d);
    std::iota(feature_schema.begin(), feature_schema.end(), 0);
  }
  if (feature_schema.size() != d) {
    throw Error(ErrorCode::kSchemaMismatch, "schema length != row width");
  }

  GradientBoostedEnsemble model;
  model.learning_rate = params.learning_rate;
  model.feature_schema = std::move(feature_schema);
  model.base_score =
      std::accumulate(data.y.begin(), data.y.end(), 0.0) / static_cast<double>(n);

  std::vector<std::vector<int>> sorted(d);
  for (std::size_t f = 0; f < d; ++f) {
    sorted[f].resize(n);
    std::iota(sorted[f].begin(), sorted[f].end(), 0);
    std::stable_sort(sorted[f].begin(), sorted[f].end(), [&](int a, int b) {
      return data.x[a][f] < data.x[b][f];
    });
  }

  std::vector<double> pred(n, model.base_score);
  std::vector<double> residual(n);
  std::vector<bool> active(n, true);
  std::mt19937_64 rng(params.seed);
  const std::size_t sample_size = std::max<std::size_t>(
      2 * params.min_samples_leaf,
      static_cast<std::size_t>(std::ceil(params.subsample * n)));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  TreeBuilder builder(data, sorted, params);
  model.train_rmse.push_back(Rmse(data.y, pred));

  for (int round = 0; round < params.n_trees; ++round) {
    for (std::size_t r = 0; r < n; ++r) residual[r] = data.y[r] - pred[r];
    if (sample_size < n) {
      for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(order[i], order[rng() % (i + 1)]);
      }
      std::fill(active.begin(), active.end(), false);
      for (std::size_t i = 0; i < sample_size; ++i) active[order[i]] = true;
    }
    RegressionTree tree = builder.Build(residual, active);
    if (tree.nodes.size() == 1) break;  // no worthwhile root split
    for (std::size_t r = 0; r < n; ++r) {
      pred[r] += params.learning_rate * tree.Predict(data.x[r]);
    }
    model.trees.push_back(std::move(tree));
    model.train_rmse.push_back(Rmse(data.y, pred));
  }
  return model;
}

std::vector<int> AssignFolds(std::size_t rows, int k, std::uint64_t seed) {
  if (k < 2 || rows < static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::kTooFewSamples,
                "cross-validation needs k >= 2 and at least k rows");
  }
  std::vector<int> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = rows - 1; i > 0; --i) {
    std::swap(order[i], order[rng() % (i + 1)]);
  }
  std::vector<int> fold_of(rows);
  const std::size_t base = rows / k;
  const std::size_t extra = rows % k;
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < extra);
    for (std::size_t i = 0; i < size; ++i) fold_of[order[pos++]] = f;
  }
  return fold_of;
}

CvReport CrossValidate(const TrainingDataset& data, int k,
                       const BoostingParams& params, std::uint64_t seed) {
  data.Validate();
  CvReport report;
  report.k = k;
  report.seed = seed;
  report.fold_of = AssignFolds(data.size(), k, seed);
  for (int f = 0; f < k; ++f) {
    TrainingDataset train;
    std::vector<int> test;
    for (std::size_t r = 0; r < data.size(); ++r) {
      if (report.fold_of[r] == f) {
        test.push_back(static_cast<int>(r));
      } else {
        train.x.push_back(data.x[r]);
        train.y.push_back(data.y[r]);
      }
    }
    const GradientBoostedEnsemble model = Fit(train, params);
    const double train_mean =
        std::accumulate(train.y.begin(), train.y.end(), 0.0) /
        static_cast<double>(train.y.size());
    double test_mean = 0;
    for (int r : test) test_mean += data.y[r];
    test_mean /= static_cast<double>(test.size());

    FoldMetrics m;
    m.test_size = test.size();
    double sse = 0, sst = 0;
    for (int r : test) {
      const double err = model.Predict(data.x[r]) - data.y[r];
      m.mae += std::abs(err);
      sse += err * err;
      sst += (data.y[r] - test_mean) * (data.y[r] - test_mean);
      m.baseline_mae += std::abs(train_mean - data.y[r]);
    }
    const double size = static_cast<double>(test.size());
    m.mae /= size;
    m.baseline_mae /= size;
    m.rmse = std::sqrt(sse / size);
    if (sst > 0) {
      m.r2 = 1.0 - sse / sst;
    } else {
      m.r2 = sse == 0 ? 1.0 : 0.0;
    }
    report.folds.push_back(m);
  }
  for (const FoldMetrics& m : report.folds) {
    report.mean.test_size += m.test_size;
    report.mean.mae += m.mae / k;
    report.mean.rmse += m.rmse / k;
    report.mean.r2 += m.r2 / k;
    report.mean.baseline_mae += m.baseline_mae / k;
  }
  return report;
}

std::map<int, double> FeatureImportance(const GradientBoostedEnsemble& model) {
  std::map<int, double> gain;
  double total = 0;
  for (const RegressionTree& tree : model.trees) {
    for (const TreeNode& n : tree.nodes) {
      if (n.is_leaf()) continue;
      gain[model.feature_schema[n.feature]] += n.gain;
      total += n.gain;
    }
  }
  if (total <= 0) return {};
  for (auto& [index, g] : gain) g /= total;
  return gain;
}

nlohmann::json EnsembleToJson(const GradientBoostedEnsemble& model) {
  nlohmann::json trees = nlohmann::json::array();
  for (const RegressionTree& tree : model.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : tree.nodes) {
      if (n.is_leaf()) {
        nodes.push_back({{"value", n.value}, {"cover", n.cover}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"value", n.value},
                         {"cover", n.cover},
                         {"gain", n.gain}});
      }
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  return {{"base_score", model.base_score},
          {"learning_rate", model.learning_rate},
          {"feature_schema", model.feature_schema},
          {"train_rmse", model.train_rmse},
          {"trees", std::move(trees)}};
}

GradientBoostedEnsemble EnsembleFromJson(const nlohmann::json& json) {
  try {
    GradientBoostedEnsemble model;
    model.base_score = json.at("base_score").get<double>();
    model.learning_rate = json.at("learning_rate").get<double>();
    model.feature_schema = json.at("feature_schema").get<std::vector<int>>();
    if (json.contains("train_rmse")) {
      model.train_rmse = json.at("train_rmse").get<std::vector<double>>();
    }
    for (const auto& t : json.at("trees")) {
      RegressionTree tree;
      for (const auto& n : t.at("nodes")) {
        TreeNode node;
        node.value = n.at("value").get<double>();
        node.cover = n.at("cover").get<double>();
        if (n.contains("feature")) {
          node.feature = n.at("feature").get<int>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<int>();
          node.right = n.at("right").get<int>();
          node.gain = n.value("gain", 0.0);
        }
        tree.nodes.push_back(node);
      }
      tree.Validate(model.feature_schema.size());
      model.trees.push_back(std::move(tree));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidBundle,
                std::string("malformed ensemble: ") + e.what());
  }
}

nlohmann::json CvReportToJson(const CvReport& report) {
  auto metrics = [](const FoldMetrics& m) {
    return nlohmann::json{{"test_size", m.test_size},
                          {"mae", m.mae},
                          {"rmse", m.rmse},
                          {"r2", m.r2},
                          {"baseline_mae", m.baseline_mae}};
  };
  nlohmann::json folds = nlohmann::json::array();
  for (const FoldMetrics& m : report.folds) folds.push_back(metrics(m));
  return {{"k", report.k},
          {"seed", report.seed},
          {"folds", std::move(folds)},
          {"mean", metrics(report.mean)}};
}

std::string CvReportToCsv(const CvReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "fold,test_size,mae,rmse,r2,baseline_mae\n";
  auto row = [&](const std::string& name, const FoldMetrics& m) {
    out << name << ',' << m.test_size << ',' << m.mae << ',' << m.rmse << ','
        << m.r2 << ',' << m.baseline_mae << '\n';
  };
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    row(std::to_string(f), report.folds[f]);
  }
  row("mean", report.mean);
  return out.str();
}

}  // namespace pdrec
