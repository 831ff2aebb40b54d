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

#include "pdrec/corpus.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "pdrec/discovery.h"
#include "pdrec/error.h"
#include "pdrec/features.h"
#include "pdrec/hashing.h"
#include "pdrec/quality.h"
#include "pdrec/xes.h"

namespace pdrec {
namespace {

constexpr int kMaxRedo = 3;
constexpr int kMaxResample = 100;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable draws on top of mt19937_64 (the standard distributions are
// implementation-defined).
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  int Int(int lo, int hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }
  bool Coin(double p) { return Unit() < p; }

 private:
  std::mt19937_64 engine_;
};

std::string LeafName(int index) {
  std::string name;
  for (int i = index + 1; i > 0; i = (i - 1) / 26) {
    name.insert(name.begin(), static_cast<char>('a' + (i - 1) % 26));
  }
  return name;
}

TreeOperator DrawOperator(Random& rng, const OperatorWeights& w,
                          bool allow_loop) {
  const double weights[] = {w.sequence, w.exclusive, w.parallel,
                            allow_loop ? w.loop : 0.0};
  const TreeOperator ops[] = {TreeOperator::kSequence, TreeOperator::kXor,
                              TreeOperator::kParallel, TreeOperator::kLoop};
  double total = 0;
  for (double x : weights) total += x;
  double u = rng.Unit() * total;
  int last = 0;
  for (int i = 0; i < 4; ++i) {
    if (weights[i] <= 0) continue;
    last = i;
    if (u < weights[i]) return ops[i];
    u -= weights[i];
  }
  return ops[last];
}

// A tree with exactly `depth` operator levels on its deepest path and
// `leaves` activity leaves (unlabeled).
ProcessTree Grow(Random& rng, const OperatorWeights& w, int depth,
                 int leaves) {
  if (depth == 0) return ProcessTree::Activity("?");
  // One level left: every child is a leaf, so a loop needs exactly 2.
  const TreeOperator op =
      DrawOperator(rng, w, depth > 1 || leaves == 2);
  std::vector<int> count;
  std::vector<int> child_depth;
  if (depth == 1) {
    count.assign(leaves, 1);
    child_depth.assign(leaves, 0);
  } else {
    const int c = op == TreeOperator::kLoop
                      ? 2
                      : rng.Int(2, std::min(4, leaves - depth + 1));
    const int deep = rng.Int(0, c - 1);
    count.assign(c, 1);
    count[deep] = depth;
    for (int rest = leaves - depth - (c - 1); rest > 0; --rest) {
      ++count[rng.Int(0, c - 1)];
    }
    for (int i = 0; i < c; ++i) {
      if (i == deep) {
        child_depth.push_back(depth - 1);
      } else if (count[i] == 1) {
        child_depth.push_back(0);
      } else {
        child_depth.push_back(rng.Int(1, std::min(depth - 1, count[i] - 1)));
      }
    }
  }
  std::vector<ProcessTree> children;
  for (std::size_t i = 0; i < count.size(); ++i) {
    children.push_back(Grow(rng, w, child_depth[i], count[i]));
  }
  return ProcessTree::Operator(op, std::move(children));
}

void LabelLeaves(ProcessTree* tree, int* next) {
  if (tree->kind == TreeOperator::kActivity) {
    tree->label = LeafName((*next)++);
    return;
  }
  for (ProcessTree& child : tree->children) LabelLeaves(&child, next);
}

void Execute(const ProcessTree& tree, Random& rng,
             std::vector<std::string>* out) {
  switch (tree.kind) {
    case TreeOperator::kActivity:
      out->push_back(tree.label);
      return;
    case TreeOperator::kSilent:
      return;
    case TreeOperator::kSequence:
      for (const ProcessTree& child : tree.children) Execute(child, rng, out);
      return;
    case TreeOperator::kXor: {
      const int pick = rng.Int(0, static_cast<int>(tree.children.size()) - 1);
      Execute(tree.children[pick], rng, out);
      return;
    }
    case TreeOperator::kParallel: {
      std::vector<std::vector<std::string>> branches(tree.children.size());
      for (std::size_t i = 0; i < tree.children.size(); ++i) {
        Execute(tree.children[i], rng, &branches[i]);
      }
      std::vector<std::size_t> pos(branches.size(), 0);
      std::vector<int> open;
      while (true) {
        open.clear();
        for (std::size_t i = 0; i < branches.size(); ++i) {
          if (pos[i] < branches[i].size()) open.push_back(static_cast<int>(i));
        }
        if (open.empty()) break;
        const int b = open[rng.Int(0, static_cast<int>(open.size()) - 1)];
        out->push_back(branches[b][pos[b]++]);
      }
      return;
    }
    case TreeOperator::kLoop:
      Execute(tree.children[0], rng, out);
      for (int redo = 0; redo < kMaxRedo && rng.Coin(0.5); ++redo) {
        Execute(tree.children[1], rng, out);
        Execute(tree.children[0], rng, out);
      }
      return;
  }
}

void ApplyNoise(Random& rng, std::vector<std::string>* trace) {
  const int kind = rng.Int(0, 2);
  const int n = static_cast<int>(trace->size());
  if (kind == 0 && n >= 2) {
    trace->erase(trace->begin() + rng.Int(0, n - 1));
  } else if (kind == 1 && n >= 2) {
    const int i = rng.Int(0, n - 2);
    std::swap((*trace)[i], (*trace)[i + 1]);
  } else {
    const std::string alien = "noise_" + std::to_string(rng.Int(1, 3));
    trace->insert(trace->begin() + rng.Int(0, n), alien);
  }
}

std::string Hex16(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidConfig, "bad number '" + text + "'");
  }
}

}  // namespace

void GeneratorConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (activities.min < 2 || activities.min > activities.max) {
    fail("activities range must satisfy 2 <= min <= max");
  }
  if (depth.min < 1 || depth.min > depth.max) {
    fail("depth range must satisfy 1 <= min <= max");
  }
  if (activities.min < depth.min + 1) {
    fail("activities.min must exceed depth.min");
  }
  if (traces.min < 1 || traces.min > traces.max) {
    fail("traces range must satisfy 1 <= min <= max");
  }
  const double w[] = {operators.sequence, operators.exclusive,
                      operators.parallel, operators.loop};
  double sum = 0;
  for (double x : w) {
    if (!(x >= 0.0)) fail("operator probabilities must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) fail("operator probabilities must sum to 1");
  if (operators.loop >= 1.0) fail("at least one non-loop operator is needed");
  if (!(noise >= 0.0 && noise <= 1.0)) fail("noise must lie in [0, 1]");
  if (n_logs < 1) fail("n_logs must be positive");
}

GeneratorConfig GeneratorConfig::FromJson(const nlohmann::json& json) {
  GeneratorConfig c;
  try {
    for (const auto& [key, value] : json.items()) {
      auto range = [&value]() {
        return IntRange{value.at(0).get<int>(), value.at(1).get<int>()};
      };
      if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "activities") {
        c.activities = range();
      } else if (key == "depth") {
        c.depth = range();
      } else if (key == "traces") {
        c.traces = range();
      } else if (key == "noise") {
        c.noise = value.get<double>();
      } else if (key == "n_logs") {
        c.n_logs = value.get<int>();
      } else if (key == "operators") {
        c.operators.sequence = value.value("sequence", 0.0);
        c.operators.exclusive = value.value("xor", 0.0);
        c.operators.parallel = value.value("parallel", 0.0);
        c.operators.loop = value.value("loop", 0.0);
        for (const auto& [op, p] : value.items()) {
          if (op != "sequence" && op != "xor" && op != "parallel" &&
              op != "loop") {
            throw Error(ErrorCode::kInvalidConfig, "unknown operator " + op);
          }
        }
      } else {
        throw Error(ErrorCode::kInvalidConfig, "unknown config key " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("malformed generator config: ") + e.what());
  }
  c.Validate();
  return c;
}

nlohmann::json GeneratorConfig::ToJson() const {
  return {{"seed", seed},
          {"activities", {activities.min, activities.max}},
          {"depth", {depth.min, depth.max}},
          {"traces", {traces.min, traces.max}},
          {"noise", noise},
          {"n_logs", n_logs},
          {"operators",
           {{"sequence", operators.sequence},
            {"xor", operators.exclusive},
            {"parallel", operators.parallel},
            {"loop", operators.loop}}}};
}

ProcessTree RandomTree(const GeneratorConfig& config, std::uint64_t seed) {
  config.Validate();
  Random rng(seed);
  const int leaves = rng.Int(config.activities.min, config.activities.max);
  const int depth =
      rng.Int(config.depth.min, std::min(config.depth.max, leaves - 1));
  ProcessTree tree = Grow(rng, config.operators, depth, leaves);
  int next = 0;
  LabelLeaves(&tree, &next);
  return tree;
}

EventLog Playout(const ProcessTree& tree, int n_traces, double noise,
                 std::uint64_t seed) {
  tree.Validate();
  Random rng(seed);
  using std::chrono::hours;
  using std::chrono::minutes;
  const Timestamp origin{std::chrono::sys_days{std::chrono::year{2020} /
                                               std::chrono::January / 1}};
  std::vector<Trace> traces;
  for (int i = 0; i < n_traces; ++i) {
    std::vector<std::string> activities;
    for (int attempt = 0; attempt < kMaxResample && activities.empty();
         ++attempt) {
      Execute(tree, rng, &activities);
    }
    if (activities.empty()) continue;
    if (rng.Coin(noise)) ApplyNoise(rng, &activities);
    Trace trace;
    trace.case_id = "case_" + std::to_string(i + 1);
    Timestamp t = origin + hours{i};
    for (const std::string& a : activities) {
      t += minutes{rng.Int(1, 30)};
      trace.events.push_back(Event{a, t, {}});
    }
    traces.push_back(std::move(trace));
  }
  return EventLog(std::move(traces));
}

std::vector<GeneratedLog> GenerateLogs(const GeneratorConfig& config) {
  config.Validate();
  std::vector<GeneratedLog> out;
  for (int i = 0; i < config.n_logs; ++i) {
    const std::uint64_t seed =
        SplitMix64(config.seed * 0x100000001b3ULL + static_cast<unsigned>(i));
    Random rng(seed);
    const int n_traces = rng.Int(config.traces.min, config.traces.max);
    ProcessTree tree = RandomTree(config, SplitMix64(seed ^ 1));
    EventLog log = Playout(tree, n_traces, config.noise, SplitMix64(seed ^ 2));
    out.push_back(
        GeneratedLog{"syn_" + Hex16(seed), seed, std::move(tree), std::move(log)});
  }
  return out;
}

void LabelLog(const EventLog& log, const std::string& log_id,
              TrainingCorpus* out) {
  out->features.push_back(ExtractFeatures(log, log_id));
  const VariantLog variants = VariantLog::FromEventLog(log);
  for (AlgorithmId algorithm : kPortfolio) {
    QualityReport report;
    bool failed = false;
    try {
      report = EvaluateAll(variants, Discover(algorithm, log));
    } catch (const std::exception&) {
      failed = true;
    }
    for (MeasureId measure : kMeasures) {
      out->labels.push_back(LabelRow{log_id, algorithm, measure,
                                     failed ? 0.0 : report.Get(measure),
                                     failed});
    }
  }
}

CorpusSummary BuildCorpus(const std::vector<GeneratorConfig>& configs,
                          const std::filesystem::path& dir,
                          const std::vector<std::filesystem::path>& extra_logs,
                          int threads) {
  if (configs.empty() && extra_logs.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no generator configs");
  }
  std::filesystem::create_directories(dir / "logs");

  struct Job {
    std::string log_id;
    EventLog log;
    nlohmann::json provenance;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (GeneratedLog& g : GenerateLogs(configs[c])) {
      nlohmann::json p = {{"log_id", g.log_id},
                          {"source", "generated"},
                          {"config_index", c},
                          {"seed", g.seed},
                          {"tree", g.tree.ToString()},
                          {"traces", g.log.num_traces()}};
      jobs.push_back(Job{g.log_id, std::move(g.log), std::move(p)});
    }
  }
  for (const auto& path : extra_logs) {
    const std::string bytes = ReadFileBytes(path);
    const std::string id = "ext_" + ContentId(bytes);
    EventLog log = ParseXes(bytes);
    nlohmann::json p = {{"log_id", id},
                        {"source", path.filename().string()},
                        {"traces", log.num_traces()}};
    jobs.push_back(Job{id, std::move(log), std::move(p)});
  }
  for (const Job& job : jobs) {
    WriteXesFile(job.log, dir / "logs" / (job.log_id + ".xes.gz"));
  }

  std::vector<TrainingCorpus> parts(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      LabelLog(jobs[i].log, jobs[i].log_id, &parts[i]);
    }
  };
  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp<int>(n_threads, 1, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  TrainingCorpus corpus;
  CorpusSummary summary;
  nlohmann::json logs = nlohmann::json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    corpus.features.push_back(std::move(parts[i].features.front()));
    for (LabelRow& row : parts[i].labels) {
      if (row.failed) ++summary.failed_cells;
      corpus.labels.push_back(std::move(row));
    }
    logs.push_back(std::move(jobs[i].provenance));
  }
  summary.failed_cells /= kMeasures.size();
  summary.logs = jobs.size();

  nlohmann::json config_json = nlohmann::json::array();
  for (const GeneratorConfig& c : configs) config_json.push_back(c.ToJson());
  WriteText(dir / "features.csv", FeaturesCsv(corpus.features));
  WriteText(dir / "labels.csv", LabelsCsv(corpus.labels));
  WriteText(dir / "provenance.json",
            nlohmann::json{{"catalog_version", kFeatureCatalogVersion},
                           {"configs", std::move(config_json)},
                           {"logs", std::move(logs)}}
                    .dump(2) +
                "\n");
  return summary;
}

std::string LabelsCsv(const std::vector<LabelRow>& labels) {
  std::string out = "log_id,algorithm,measure,value,failed\n";
  char buffer[32];
  for (const LabelRow& row : labels) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", row.value);
    out += row.log_id + ',' + std::string(AlgorithmName(row.algorithm)) + ',' +
           std::string(MeasureName(row.measure)) + ',' + buffer + ',' +
           (row.failed ? "1" : "0") + '\n';
  }
  return out;
}

std::string FeaturesCsv(const std::vector<FeatureVector>& features) {
  std::string out = FeaturesCsvHeader() + '\n';
  for (const FeatureVector& fv : features) out += FeaturesCsvRow(fv) + '\n';
  return out;
}

TrainingCorpus LoadCorpus(const std::filesystem::path& dir) {
  TrainingCorpus corpus;
  std::istringstream features(ReadFileBytes(dir / "features.csv"));
  std::string line;
  if (!std::getline(features, line) || line != FeaturesCsvHeader()) {
    throw Error(ErrorCode::kInvalidConfig,
                "features.csv header does not match the feature catalog");
  }
  while (std::getline(features, line)) {
    if (line.empty()) continue;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != kNumFeatures + 1) {
      throw Error(ErrorCode::kInvalidConfig, "ragged features.csv row");
    }
    FeatureVector fv;
    fv.log_id = fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) {
      fv.values.push_back(ParseDouble(fields[i]));
    }
    corpus.features.push_back(std::move(fv));
  }
  std::istringstream labels(ReadFileBytes(dir / "labels.csv"));
  std::getline(labels, line);
  while (std::getline(labels, line)) {
    if (line.empty()) continue;
    const auto fields = SplitCsvLine(line);
    if (fields.size() != 5) {
      throw Error(ErrorCode::kInvalidConfig, "ragged labels.csv row");
    }
    const auto algorithm = FindAlgorithm(fields[1]);
    const auto measure = FindMeasure(fields[2]);
    if (!algorithm || !measure) {
      throw Error(ErrorCode::kInvalidConfig, "unknown label key in " + line);
    }
    corpus.labels.push_back(LabelRow{fields[0], *algorithm, *measure,
                                     ParseDouble(fields[3]), fields[4] == "1"});
  }
  return corpus;
}

}  // namespace pdrec
