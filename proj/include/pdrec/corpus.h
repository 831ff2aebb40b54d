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

// Synthetic training data: random block-structured process trees, their
// playout into event logs, and the labeled (log x algorithm) quality grid.

#ifndef PDREC_CORPUS_H_
#define PDREC_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdrec/bundle.h"
#include "pdrec/event_log.h"
#include "pdrec/process_tree.h"

namespace pdrec {

struct IntRange {
  int min = 0;
  int max = 0;
};

struct OperatorWeights {
  double sequence = 0.35;
  double exclusive = 0.25;
  double parallel = 0.25;
  double loop = 0.15;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  IntRange activities{4, 10};
  // Number of operator levels below and including the root.
  IntRange depth{1, 3};
  OperatorWeights operators;
  IntRange traces{50, 200};
  // Per-trace probability of one noise edit.
  double noise = 0.0;
  int n_logs = 10;

  // Throws Error(kInvalidConfig).
  void Validate() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static GeneratorConfig FromJson(const nlohmann::json& json);
  nlohmann::json ToJson() const;
};

// Tree with distinct activity leaves ("a", "b", ..., "z", "aa", ...).
ProcessTree RandomTree(const GeneratorConfig& config, std::uint64_t seed);

// Random full executions of `tree`. Loops redo at most 3 times. With
// probability `noise` a trace gets one edit: drop an event, swap two
// adjacent events or insert an alien activity "noise_k".
EventLog Playout(const ProcessTree& tree, int n_traces, double noise,
                 std::uint64_t seed);

struct GeneratedLog {
  std::string log_id;
  std::uint64_t seed = 0;
  ProcessTree tree;
  EventLog log;
};

// `config.n_logs` logs with seeds derived from `config.seed`.
std::vector<GeneratedLog> GenerateLogs(const GeneratorConfig& config);

// Runs every portfolio algorithm on `log` and appends 24 label rows (or
// failed rows) plus the feature vector to `out`.
void LabelLog(const EventLog& log, const std::string& log_id,
              TrainingCorpus* out);

struct CorpusSummary {
  std::size_t logs = 0;
  std::size_t failed_cells = 0;
};

// Generates and labels all configured logs and writes
//   <dir>/logs/<log_id>.xes.gz, <dir>/features.csv, <dir>/labels.csv,
//   <dir>/provenance.json.
// XES files in `extra_logs` are ingested as additional rows. `threads` <= 0
// uses the hardware concurrency.
CorpusSummary BuildCorpus(const std::vector<GeneratorConfig>& configs,
                          const std::filesystem::path& dir,
                          const std::vector<std::filesystem::path>& extra_logs = {},
                          int threads = 0);

std::string LabelsCsv(const std::vector<LabelRow>& labels);
std::string FeaturesCsv(const std::vector<FeatureVector>& features);
// Reads features.csv and labels.csv of a corpus directory. Throws
// kIoError or kInvalidConfig.
TrainingCorpus LoadCorpus(const std::filesystem::path& dir);

}  // namespace pdrec

#endif  // PDREC_CORPUS_H_
