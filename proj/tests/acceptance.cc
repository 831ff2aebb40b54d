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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
// Usage: pdrec_acceptance --cli <path to pdrec> --work <scratch dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "pdrec/bundle.h"
#include "pdrec/corpus.h"
#include "pdrec/discovery.h"
#include "pdrec/error.h"
#include "pdrec/explainer.h"
#include "pdrec/features.h"
#include "pdrec/learner.h"
#include "pdrec/quality.h"
#include "pdrec/recommender.h"
#include "pdrec/service.h"
#include "pdrec/xes.h"
#include "shap_oracle.h"

namespace pdrec {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Suite {
 public:
  void Run(const std::string& name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail
              << std::endl;
    failures_ += o.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string Fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Runs a shell command and returns its standard output.
std::string Capture(const std::string& command, int* status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed: " + command);
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) out.append(buffer, n);
  *status = pclose(pipe);
  return out;
}

EventLog L1() {
  std::vector<Trace> traces;
  const std::vector<std::vector<std::string>> rows = {
      {"a", "b", "c", "d"}, {"a", "c", "b", "d"}, {"a", "e", "d"}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Trace t;
    t.case_id = "c" + std::to_string(i + 1);
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      t.events.push_back(
          Event{rows[i][j], Timestamp{std::chrono::minutes(j)}, {}});
    }
    traces.push_back(std::move(t));
  }
  return EventLog(std::move(traces));
}

WeightVector W(double f, double p, double g, double s) {
  WeightVector w;
  w.weights = {f, p, g, s};
  return w;
}

struct Corpus {
  fs::path dir;
  TrainingCorpus data;
  std::vector<fs::path> log_files;
  double build_seconds = 0;
};

// 300 logs: 100 each at noise 0, 0.1 and 0.2, default generator ranges.
Corpus BuildMixedCorpus(const fs::path& dir) {
  const Clock::time_point start = Clock::now();
  std::vector<GeneratorConfig> configs;
  for (int i = 0; i < 3; ++i) {
    GeneratorConfig c;
    c.seed = 1000 + i;
    c.noise = 0.1 * i;
    c.n_logs = 100;
    configs.push_back(c);
  }
  fs::remove_all(dir);
  BuildCorpus(configs, dir);
  Corpus corpus;
  corpus.dir = dir;
  corpus.data = LoadCorpus(dir);
  for (const FeatureVector& fv : corpus.data.features) {
    corpus.log_files.push_back(dir / "logs" / (fv.log_id + ".xes.gz"));
  }
  corpus.build_seconds = Seconds(start);
  return corpus;
}

Outcome AlphaOnL1() {
  const Clock::time_point start = Clock::now();
  const EventLog log = L1();
  const PetriNet net = Discover(AlgorithmId::kAlpha, log);
  const QualityReport r = EvaluateAll(log, net);
  const double secs = Seconds(start);
  const double f = r.Get(MeasureId::kFitness);
  const double p = r.Get(MeasureId::kPrecision);
  return {std::abs(f - 1) <= 1e-9 && std::abs(p - 1) <= 1e-9 && secs < 1.0,
          "fitness=" + Fmt(f) + " precision=" + Fmt(p) + " time=" +
              Fmt(secs) + "s"};
}

Outcome InductiveFitness() {
  const Clock::time_point start = Clock::now();
  GeneratorConfig config;
  config.seed = 2024;
  config.n_logs = 200;
  int bad = 0;
  double worst = 1;
  for (const GeneratedLog& g : GenerateLogs(config)) {
    const double f =
        FitnessTokenReplay(g.log, Discover(AlgorithmId::kInductive, g.log));
    worst = std::min(worst, f);
    if (std::abs(f - 1) > 1e-9) ++bad;
  }
  const double secs = Seconds(start);
  return {bad == 0 && secs < 120,
          "200 logs, non-fitting=" + std::to_string(bad) + " min=" +
              Fmt(worst) + " time=" + Fmt(secs) + "s"};
}

Outcome FlowerPrecision(const Corpus& corpus) {
  int eligible = 0, strict = 0, violations = 0;
  for (const fs::path& file : corpus.log_files) {
    const EventLog log = ReadXesFile(file);
    if (log.Activities().size() < 3 || Variants(log).size() < 2) continue;
    ++eligible;
    const double flower =
        PrecisionEscapingEdges(log, FlowerNet(log.Activities()));
    const double im =
        PrecisionEscapingEdges(log, Discover(AlgorithmId::kInductive, log));
    if (flower > im + 1e-12) ++violations;
    if (flower < im - 1e-12) ++strict;
  }
  const double ratio = eligible ? static_cast<double>(strict) / eligible : 0;
  return {eligible > 0 && violations == 0 && ratio >= 0.9,
          std::to_string(eligible) + " eligible logs, violations=" +
              std::to_string(violations) + " strict=" + Fmt(ratio)};
}

GradientBoostedEnsemble RandomModel(std::mt19937_64& rng, int trees,
                                    int width) {
  std::uniform_real_distribution<double> u;
  TrainingDataset d;
  const int rows = 40 + static_cast<int>(rng() % 100);
  for (int i = 0; i < rows; ++i) {
    std::vector<double> x(width);
    for (double& v : x) v = std::floor(u(rng) * 8) / 7;
    d.x.push_back(x);
    d.y.push_back(std::sin(4 * x[0]) * x[width - 1] + 0.3 * u(rng));
  }
  BoostingParams p;
  p.n_trees = trees;
  p.max_depth = 2 + static_cast<int>(rng() % 5);
  p.learning_rate = 0.3;
  p.min_samples_leaf = 1 + static_cast<int>(rng() % 3);
  p.subsample = 0.8;
  p.seed = rng();
  return Fit(d, p);
}

Outcome ShapCorrectness() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  double worst_exact = 0;
  for (int t = 0; t < 50; ++t) {
    const int width = 1 + t % 8;
    const GradientBoostedEnsemble m = RandomModel(rng, 1, width);
    const RegressionTree& tree = m.trees.at(0);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> x(width);
      for (double& v : x) v = u(rng);
      std::vector<double> phi(width, 0.0);
      TreeShap(tree, x, phi);
      const std::vector<double> oracle = testing::BruteForceShapley(tree, x);
      for (int i = 0; i < width; ++i) {
        worst_exact = std::max(worst_exact, std::abs(phi[i] - oracle[i]));
      }
    }
  }
  double worst_local = 0;
  for (int t = 0; t < 1000; ++t) {
    const int width = 1 + static_cast<int>(rng() % 8);
    std::mt19937_64 model_rng(t);
    const GradientBoostedEnsemble m =
        RandomModel(model_rng, 1 + static_cast<int>(rng() % 20), width);
    std::vector<double> x(width);
    for (double& v : x) v = u(rng);
    const Attribution a = ShapValues(m, x);
    double sum = a.base_value;
    for (double phi : a.contributions) sum += phi;
    worst_local = std::max(worst_local, std::abs(sum - m.PredictRaw(x)));
  }
  return {worst_exact <= 1e-9 && worst_local < 1e-9,
          "50 trees max|phi-oracle|=" + Fmt(worst_exact) +
              ", 1000 pairs max|base+sum-pred|=" + Fmt(worst_local)};
}

Outcome CrossValidation(const Corpus& corpus) {
  const Clock::time_point start = Clock::now();
  std::vector<std::vector<double>> rows;
  for (const FeatureVector& fv : corpus.data.features) rows.push_back(fv.values);
  const std::vector<int> schema = PruneRedundant(rows, 0.95);
  std::vector<std::string> failing;
  for (AlgorithmId alg : kPortfolio) {
    for (MeasureId mea : kMeasures) {
      const TrainingDataset data = MakeDataset(corpus.data, schema, alg, mea);
      const CvReport r = CrossValidate(data, 5, BoostingParams{}, 42);
      if (!(r.mean.mae < r.mean.baseline_mae)) {
        failing.push_back(std::string(AlgorithmName(alg)) + "/" +
                          std::string(MeasureName(mea)) + " mae=" +
                          Fmt(r.mean.mae) + " baseline=" +
                          Fmt(r.mean.baseline_mae));
        const auto [lo, hi] = std::minmax_element(data.y.begin(), data.y.end());
        if (*lo == *hi) failing.back() += " (target constant " + Fmt(*lo) + ")";
      }
    }
  }
  const double secs = Seconds(start) + corpus.build_seconds;
  std::string detail = std::to_string(corpus.data.features.size()) +
                       " logs, " + std::to_string(24 - failing.size()) +
                       "/24 regressors beat the mean baseline, time=" +
                       Fmt(secs) + "s";
  for (const std::string& f : failing) detail += "; " + f;
  return {corpus.data.features.size() >= 300 && failing.empty() && secs < 600,
          detail};
}

Outcome RankingInvariances(const Corpus& corpus, const ModelBundle& bundle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 100);
  std::uniform_real_distribution<double> scale(0.01, 1.0);
  int checks = 0;
  std::string problem;
  for (std::size_t l = 0; l < 20 && l < corpus.data.features.size(); ++l) {
    const FeatureVector& fv = corpus.data.features[l * 15];
    for (int k = 0; k < 100; ++k) {
      WeightVector w = W(u(rng), u(rng), u(rng), u(rng));
      if (k == 0) w = W(100, 0, 0, 0);
      const double lambda = scale(rng);
      const WeightVector scaled =
          W(lambda * w.weights[0], lambda * w.weights[1],
            lambda * w.weights[2], lambda * w.weights[3]);
      const Recommendation a = Recommend(fv, w, bundle);
      const Recommendation b = Recommend(fv, scaled, bundle);
      for (std::size_t i = 0; i < a.results.size(); ++i) {
        if (a.results[i].algorithm != b.results[i].algorithm ||
            std::abs(a.results[i].score - b.results[i].score) > 1e-12) {
          problem = "scaling changed the ranking of " + fv.log_id;
        }
      }
      ++checks;
    }
    const Recommendation fit = Recommend(fv, W(100, 0, 0, 0), bundle);
    std::vector<AlgorithmScore> by_fitness = fit.results;
    std::stable_sort(by_fitness.begin(), by_fitness.end(),
                     [](const AlgorithmScore& x, const AlgorithmScore& y) {
                       if (x.predicted[0] != y.predicted[0]) {
                         return x.predicted[0] > y.predicted[0];
                       }
                       return AlgorithmName(x.algorithm) <
                              AlgorithmName(y.algorithm);
                     });
    for (std::size_t i = 0; i < by_fitness.size(); ++i) {
      if (by_fitness[i].algorithm != fit.results[i].algorithm) {
        problem = "fitness-only ranking differs from predicted fitness order";
      }
    }
    try {
      Recommend(fv, W(0, 0, 0, 0), bundle);
      problem = "all-zero weights accepted";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kAllZeroWeights) problem = "wrong error code";
    }
  }
  return {problem.empty() && checks == 2000,
          std::to_string(checks) + " weight vectors over 20 logs" +
              (problem.empty() ? "" : "; " + problem)};
}

Outcome Determinism(const std::string& cli, const fs::path& log,
                    const fs::path& bundle) {
  const std::string cmd = "'" + cli + "' recommend '" + log.string() +
                          "' --bundle '" + bundle.string() +
                          "' --fitness 40 --precision 30 --generalization 20"
                          " --simplicity 10";
  int s1 = 0, s2 = 0;
  const std::string a = Capture(cmd, &s1);
  const std::string b = Capture(cmd, &s2);
  return {s1 == 0 && s2 == 0 && !a.empty() && a == b,
          "two processes, " + std::to_string(a.size()) + " bytes, " +
              (a == b ? "identical" : "different")};
}

Outcome FeatureSchema(const Corpus& corpus) {
  int structural = 0;
  for (const FeatureDescriptor& d : FeatureCatalog()) {
    if (d.source == FeatureSource::kDfg ||
        d.source == FeatureSource::kFootprint) {
      ++structural;
    }
  }
  bool finite = true;
  std::vector<std::vector<double>> rows;
  for (const fs::path& file : corpus.log_files) {
    const FeatureVector fv = ExtractFeatures(ReadXesFile(file));
    finite = finite && fv.values.size() == 48;
    for (double v : fv.values) finite = finite && std::isfinite(v);
    rows.push_back(fv.values);
  }
  const std::vector<int> base = PruneRedundant(rows, 0.95);
  const int source = base.at(0);
  const int injected = static_cast<int>(rows[0].size());
  for (auto& row : rows) row.push_back(row[source]);
  const std::vector<int> pruned = PruneRedundant(rows, 0.95);
  const bool dropped =
      std::find(pruned.begin(), pruned.end(), injected) == pruned.end() &&
      std::find(pruned.begin(), pruned.end(), source) != pruned.end();
  return {FeatureCatalog().size() == 48 && finite && structural >= 10 &&
              dropped,
          "48 features finite on " + std::to_string(rows.size()) +
              " logs, structural=" + std::to_string(structural) +
              ", injected duplicate " + (dropped ? "dropped" : "kept")};
}

Outcome Gateway(const std::string& cli, const fs::path& work,
                const fs::path& bundle_path,
                std::shared_ptr<const ModelBundle> bundle) {
  ServiceConfig config;
  config.data_dir = work / "gateway";
  fs::remove_all(config.data_dir);
  Service service(config, bundle);
  HttpServer server(&service);
  const int port = server.Start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);
  std::vector<std::string> problems;
  auto expect = [&](const httplib::Result& r, int status,
                    const std::string& what) {
    if (!r) {
      problems.push_back(what + ": no response");
      return json();
    }
    if (r->status != status) {
      problems.push_back(what + ": status " + std::to_string(r->status));
    }
    return json::parse(r->body, nullptr, false);
  };

  const std::string xes = WriteXes(L1());
  const fs::path xes_path = work / "sample.xes";
  { std::ofstream(xes_path, std::ios::binary) << xes; }
  const json uploaded = expect(
      client.Post("/logs?filename=sample.xes", xes, "application/xml"), 201,
      "upload");
  const std::string log_id = uploaded.value("log_id", "");
  const json weights = {{"fitness", 40},
                        {"precision", 30},
                        {"generalization", 20},
                        {"simplicity", 10}};
  const json rec = expect(
      client.Post("/recommendations",
                  json{{"log_id", log_id}, {"weights", weights}}.dump(),
                  "application/json"),
      201, "recommend");
  const std::string rec_id = rec.value("rec_id", "");
  expect(client.Post("/discover",
                     json{{"log_id", log_id}, {"algorithm", "inductive"}}.dump(),
                     "application/json"),
         200, "discover");
  const json explanation = expect(
      client.Get("/recommendations/" + rec_id +
                 "/explanations/inductive/precision"),
      200, "explain");
  if (explanation.is_object() && explanation.contains("items") &&
      !explanation["items"].empty() &&
      std::abs(explanation["items"].back()["cumulative"].get<double>() -
               explanation["prediction"].get<double>()) > 1e-9) {
    problems.push_back("explanation does not sum to the prediction");
  }

  expect(client.Post("/logs", "<log><trace>", "application/xml"), 400,
         "malformed xes");
  expect(client.Get("/logs/0123456789abcdef"), 404, "unknown log");
  expect(client.Get("/recommendations/0123456789abcdef"), 404,
         "unknown recommendation");
  json zero = weights;
  for (auto& [k, v] : zero.items()) v = 0;
  expect(client.Post("/recommendations",
                     json{{"log_id", log_id}, {"weights", zero}}.dump(),
                     "application/json"),
         422, "all-zero weights");
  expect(client.Post("/discover",
                     json{{"log_id", log_id}, {"algorithm", "genetic"}}.dump(),
                     "application/json"),
         422, "unsupported algorithm");
  expect(client.Get("/recommendations/" + rec_id +
                    "/explanations/alpha/recall"),
         422, "unknown measure");
  server.Stop();

  int status = 0;
  const std::string cli_out = Capture(
      "'" + cli + "' recommend '" + xes_path.string() + "' --bundle '" +
          bundle_path.string() +
          "' --fitness 40 --precision 30 --generalization 20 --simplicity 10",
      &status);
  const json cli_json = json::parse(cli_out, nullptr, false);
  if (status != 0 || !rec.is_object() ||
      cli_json != rec.value("recommendation", json())) {
    problems.push_back("CLI recommend differs from the service response");
  }
  std::string detail = "round-trip, 6 error cases, CLI equality";
  for (const std::string& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

}  // namespace
}  // namespace pdrec

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  CLI::App app{"Acceptance suite"};
  std::string cli;
  std::string work = "acceptance_work";
  app.add_option("--cli", cli, "Path to the pdrec binary")->required();
  app.add_option("--work", work, "Scratch directory");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(work);

  pdrec::Suite suite;
  suite.Run("alpha_l1_oracle", pdrec::AlphaOnL1);
  suite.Run("inductive_fitness_guarantee", pdrec::InductiveFitness);

  const pdrec::Corpus corpus = pdrec::BuildMixedCorpus(fs::path(work) / "corpus");
  suite.Run("flower_precision_property",
            [&] { return pdrec::FlowerPrecision(corpus); });
  suite.Run("shap_correctness", pdrec::ShapCorrectness);
  suite.Run("predictor_cv_sanity",
            [&] { return pdrec::CrossValidation(corpus); });

  const auto bundle = std::make_shared<const pdrec::ModelBundle>(
      pdrec::TrainBundle(corpus.data, pdrec::BoostingParams{}));
  const fs::path bundle_path = fs::path(work) / "bundle.json";
  pdrec::SaveBundle(*bundle, bundle_path.string());

  suite.Run("ranking_invariances",
            [&] { return pdrec::RankingInvariances(corpus, *bundle); });
  suite.Run("end_to_end_determinism", [&] {
    return pdrec::Determinism(cli, corpus.log_files.at(0), bundle_path);
  });
  suite.Run("feature_schema", [&] { return pdrec::FeatureSchema(corpus); });
  suite.Run("gateway_contract", [&] {
    return pdrec::Gateway(cli, work, bundle_path, bundle);
  });
  std::cout << (suite.failures() == 0 ? "ALL PASS" : "FAILURES: " +
                                                         std::to_string(suite.failures()))
            << std::endl;
  return suite.failures() == 0 ? 0 : 1;
}
