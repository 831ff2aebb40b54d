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

// Command-line front end; every subcommand mirrors a service endpoint or a
// training step.

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdrec/bundle.h"
#include "pdrec/corpus.h"
#include "pdrec/discovery.h"
#include "pdrec/error.h"
#include "pdrec/explainer.h"
#include "pdrec/features.h"
#include "pdrec/learner.h"
#include "pdrec/petri_net.h"
#include "pdrec/quality.h"
#include "pdrec/recommender.h"
#include "pdrec/service.h"
#include "pdrec/xes.h"

namespace {

using nlohmann::json;

struct LoadedLog {
  std::string log_id;
  pdrec::EventLog log;
};

LoadedLog LoadLog(const std::string& path) {
  const std::string bytes = pdrec::ReadFileBytes(path);
  return LoadedLog{pdrec::LogIdFor(bytes), pdrec::ParseXes(bytes)};
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw pdrec::Error(pdrec::ErrorCode::kIoError, "cannot write " + path);
  }
}

pdrec::DiscoveryParams ParseParams(const std::vector<std::string>& items) {
  pdrec::DiscoveryParams params;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw pdrec::Error(pdrec::ErrorCode::kInvalidParameter,
                         "expected key=value, got '" + item + "'");
    }
    try {
      params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw pdrec::Error(pdrec::ErrorCode::kInvalidParameter,
                         "parameter value is not a number: '" + item + "'");
    }
  }
  return params;
}

std::vector<pdrec::GeneratorConfig> ReadConfigs(const std::string& path) {
  const json doc = json::parse(pdrec::ReadFileBytes(path), nullptr, false);
  if (doc.is_discarded()) {
    throw pdrec::Error(pdrec::ErrorCode::kInvalidConfig,
                       path + " is not valid JSON");
  }
  const json& list = doc.is_object() && doc.contains("configs")
                         ? doc.at("configs")
                         : doc;
  std::vector<pdrec::GeneratorConfig> configs;
  if (list.is_array()) {
    for (const json& c : list) {
      configs.push_back(pdrec::GeneratorConfig::FromJson(c));
    }
  } else {
    configs.push_back(pdrec::GeneratorConfig::FromJson(list));
  }
  return configs;
}

struct WeightOptions {
  double fitness = 25;
  double precision = 25;
  double generalization = 25;
  double simplicity = 25;

  void Add(CLI::App* app) {
    app->add_option("--fitness", fitness, "Fitness weight in [0,100]")
        ->capture_default_str();
    app->add_option("--precision", precision, "Precision weight in [0,100]")
        ->capture_default_str();
    app->add_option("--generalization", generalization,
                    "Generalization weight in [0,100]")
        ->capture_default_str();
    app->add_option("--simplicity", simplicity,
                    "Simplicity weight in [0,100]")
        ->capture_default_str();
  }

  pdrec::WeightVector Get() const {
    pdrec::WeightVector w;
    w.weights = {fitness, precision, generalization, simplicity};
    w.Validate();
    return w;
  }
};

pdrec::HttpServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process discovery algorithm recommender"};
  app.require_subcommand(1);

  // recommend
  std::string log_path;
  std::string bundle_path = "bundle.json";
  WeightOptions weights;
  auto* recommend = app.add_subcommand(
      "recommend", "Rank the discovery algorithms for a log");
  recommend->add_option("log", log_path, "XES file")->required();
  recommend->add_option("--bundle", bundle_path, "Model bundle")
      ->capture_default_str();
  weights.Add(recommend);

  // discover
  std::string algorithm;
  std::string dot_path;
  std::vector<std::string> params;
  auto* discover =
      app.add_subcommand("discover", "Mine a Petri net; prints its JSON");
  discover->add_option("log", log_path, "XES file")->required();
  discover->add_option("--algorithm", algorithm, "Portfolio algorithm")
      ->required();
  discover->add_option("--param", params, "Algorithm parameter key=value");
  discover->add_option("--dot", dot_path, "Also write Graphviz DOT here");

  // features
  auto* features =
      app.add_subcommand("features", "Print the feature vector of a log");
  features->add_option("log", log_path, "XES file")->required();

  // explain
  std::string measure;
  auto* explain = app.add_subcommand(
      "explain", "SHAP attribution of one predicted measure");
  explain->add_option("log", log_path, "XES file")->required();
  explain->add_option("--algorithm", algorithm, "Portfolio algorithm")
      ->required();
  explain->add_option("--measure", measure, "Quality measure")->required();
  explain->add_option("--bundle", bundle_path, "Model bundle")
      ->capture_default_str();

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "Measure every algorithm on a log (ground truth)");
  evaluate->add_option("log", log_path, "XES file")->required();
  weights.Add(evaluate);

  // generate-corpus
  std::string config_path;
  std::string corpus_dir;
  std::vector<std::string> extra_logs;
  int threads = 0;
  auto* generate = app.add_subcommand(
      "generate-corpus", "Generate and label a synthetic training corpus");
  generate->add_option("--config", config_path, "Generator config JSON")
      ->required();
  corpus_dir = "corpus";
  generate->add_option("--out", corpus_dir, "Output directory")
      ->capture_default_str();
  generate->add_option("--xes", extra_logs, "Additional XES logs to label");
  generate->add_option("--threads", threads, "Worker threads (0 = all)");

  // train
  std::string out_path;
  pdrec::BoostingParams boosting;
  double prune_threshold = 0.95;
  auto add_boosting = [&boosting](CLI::App* sub) {
    sub->add_option("--n-trees", boosting.n_trees)->capture_default_str();
    sub->add_option("--max-depth", boosting.max_depth)->capture_default_str();
    sub->add_option("--learning-rate", boosting.learning_rate)
        ->capture_default_str();
    sub->add_option("--min-samples-leaf", boosting.min_samples_leaf)
        ->capture_default_str();
    sub->add_option("--subsample", boosting.subsample)->capture_default_str();
    sub->add_option("--seed", boosting.seed)->capture_default_str();
  };
  auto* train = app.add_subcommand("train", "Fit the 24 regressors");
  train->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  train->add_option("--out", out_path, "Bundle output path")->required();
  train->add_option("--prune-threshold", prune_threshold,
                    "Pearson redundancy threshold")
      ->capture_default_str();
  add_boosting(train);

  // cv
  int folds = 5;
  std::uint64_t cv_seed = 42;
  auto* cv = app.add_subcommand("cv", "k-fold cross-validation per regressor");
  cv->add_option("--corpus", corpus_dir, "Corpus directory")->required();
  cv->add_option("--k", folds, "Fold count")->capture_default_str();
  cv->add_option("--cv-seed", cv_seed, "Fold shuffle seed")
      ->capture_default_str();
  cv->add_option("--prune-threshold", prune_threshold,
                 "Pearson redundancy threshold")
      ->capture_default_str();
  cv->add_option("--out", out_path, "Also write the JSON report here");
  add_boosting(cv);

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  pdrec::ServiceConfig service_config;
  std::string static_dir;
  std::string serve_bundle;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--data-dir", service_config.data_dir)
      ->capture_default_str();
  serve->add_option("--bundle", serve_bundle, "Model bundle");
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--upload-cap", service_config.upload_cap,
                    "Maximum upload size in bytes")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*recommend) {
      const LoadedLog in = LoadLog(log_path);
      const pdrec::ModelBundle bundle = pdrec::LoadBundle(bundle_path);
      const pdrec::Recommendation rec =
          pdrec::Recommend(in.log, in.log_id, weights.Get(), bundle);
      std::cout << pdrec::RecommendationToJson(rec).dump(2) << "\n";
    } else if (*discover) {
      const LoadedLog in = LoadLog(log_path);
      const pdrec::PetriNet net = pdrec::Discover(
          pdrec::ParseAlgorithm(algorithm), in.log, ParseParams(params));
      if (!dot_path.empty()) WriteFile(dot_path, pdrec::ToDot(net));
      std::cout << pdrec::NetToJson(net).dump(2) << "\n";
    } else if (*features) {
      const LoadedLog in = LoadLog(log_path);
      std::cout << pdrec::FeatureVectorToJson(
                       pdrec::ExtractFeatures(in.log, in.log_id))
                       .dump(2)
                << "\n";
    } else if (*explain) {
      const LoadedLog in = LoadLog(log_path);
      const pdrec::ModelBundle bundle = pdrec::LoadBundle(bundle_path);
      bundle.CheckCatalog();
      const pdrec::GradientBoostedEnsemble& model = bundle.Model(
          pdrec::ParseAlgorithm(algorithm), pdrec::ParseMeasure(measure));
      const pdrec::FeatureVector fv = pdrec::ExtractFeatures(in.log, in.log_id);
      const std::vector<double> x = model.Project(fv.values);
      json out = pdrec::AttributionToJson(pdrec::ShapValues(model, x));
      out["predicted"] = model.Predict(x);
      std::cout << out.dump(2) << "\n";
    } else if (*evaluate) {
      const LoadedLog in = LoadLog(log_path);
      const pdrec::Recommendation rec =
          pdrec::EvaluateGroundTruth(in.log, in.log_id, weights.Get());
      std::cout << pdrec::RecommendationToJson(rec).dump(2) << "\n";
    } else if (*generate) {
      std::vector<std::filesystem::path> extra(extra_logs.begin(),
                                               extra_logs.end());
      const pdrec::CorpusSummary summary = pdrec::BuildCorpus(
          ReadConfigs(config_path), corpus_dir, extra, threads);
      std::cout << json{{"logs", summary.logs},
                        {"failed_cells", summary.failed_cells},
                        {"dir", corpus_dir}}
                       .dump(2)
                << "\n";
    } else if (*train) {
      const pdrec::ModelBundle bundle = pdrec::TrainBundle(
          pdrec::LoadCorpus(corpus_dir), boosting, prune_threshold);
      pdrec::SaveBundle(bundle, out_path);
      std::cout << json{{"bundle", out_path},
                        {"version", bundle.version},
                        {"retained_features", bundle.feature_schema.size()}}
                       .dump(2)
                << "\n";
    } else if (*cv) {
      const pdrec::TrainingCorpus corpus = pdrec::LoadCorpus(corpus_dir);
      std::vector<std::vector<double>> rows;
      for (const auto& fv : corpus.features) rows.push_back(fv.values);
      const std::vector<int> schema =
          pdrec::PruneRedundant(rows, prune_threshold);
      json report = json::object();
      for (pdrec::AlgorithmId alg : pdrec::kPortfolio) {
        for (pdrec::MeasureId mea : pdrec::kMeasures) {
          const pdrec::TrainingDataset data =
              pdrec::MakeDataset(corpus, schema, alg, mea);
          report[std::string(pdrec::AlgorithmName(alg)) + "/" +
                 std::string(pdrec::MeasureName(mea))] =
              pdrec::CvReportToJson(
                  pdrec::CrossValidate(data, folds, boosting, cv_seed));
        }
      }
      if (!out_path.empty()) WriteFile(out_path, report.dump(2) + "\n");
      std::cout << report.dump(2) << "\n";
    } else if (*serve) {
      std::shared_ptr<const pdrec::ModelBundle> bundle;
      if (!serve_bundle.empty()) {
        bundle = std::make_shared<const pdrec::ModelBundle>(
            pdrec::LoadBundle(serve_bundle));
      }
      if (!static_dir.empty()) service_config.static_dir = static_dir;
      pdrec::Service service(service_config, bundle);
      pdrec::HttpServer server(&service);
      const int bound = server.Start(host, port);
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      std::cerr << "listening on " << host << ":" << bound << std::endl;
      server.Wait();
      g_server = nullptr;
    }
  } catch (const pdrec::Error& e) {
    std::cerr << "error: " << e.code_name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
