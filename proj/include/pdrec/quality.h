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

// Model-quality measures for a (log, net) pair: token-replay fitness,
// escaping-edges precision, execution-count generalization and
// arc-degree simplicity.

#ifndef PDREC_QUALITY_H_
#define PDREC_QUALITY_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pdrec/event_log.h"
#include "pdrec/petri_net.h"

namespace pdrec {

enum class MeasureId { kFitness, kPrecision, kGeneralization, kSimplicity };

inline constexpr std::array<MeasureId, 4> kMeasures = {
    MeasureId::kFitness, MeasureId::kPrecision, MeasureId::kGeneralization,
    MeasureId::kSimplicity};

std::string_view MeasureName(MeasureId id);
std::optional<MeasureId> FindMeasure(std::string_view name);
// Throws Error(kInvalidMeasure).
MeasureId ParseMeasure(std::string_view name);

struct ReplayDiagnostics {
  double produced = 0;
  double consumed = 0;
  double missing = 0;
  double remaining = 0;
  std::size_t traces = 0;
  std::size_t fitting_traces = 0;
  // No labeled transition is reachable from the initial marking; precision
  // is then reported as 1.0.
  bool degenerate_model = false;
};

struct QualityReport {
  std::array<double, 4> values{};  // indexed by MeasureId
  ReplayDiagnostics diagnostics;

  double Get(MeasureId id) const { return values[static_cast<int>(id)]; }
};

// Replays every trace once and derives all four measures from that pass.
QualityReport EvaluateAll(const VariantLog& log, const PetriNet& net);
QualityReport EvaluateAll(const EventLog& log, const PetriNet& net);

double FitnessTokenReplay(const EventLog& log, const PetriNet& net);
double PrecisionEscapingEdges(const EventLog& log, const PetriNet& net);
double Generalization(const EventLog& log, const PetriNet& net);
// 1 / (1 + max(0, 2|arcs| / (|places| + |transitions|) - 2)).
double Simplicity(const PetriNet& net);

// {"fitness": .., "precision": .., "generalization": .., "simplicity": ..,
//  "diagnostics": {...}}
nlohmann::json QualityReportToJson(const QualityReport& report);

}  // namespace pdrec

#endif  // PDREC_QUALITY_H_
