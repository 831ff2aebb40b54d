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

// The discovery portfolio: every member maps an event log onto a workflow
// net.

#ifndef PDREC_DISCOVERY_H_
#define PDREC_DISCOVERY_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdrec/event_log.h"
#include "pdrec/petri_net.h"
#include "pdrec/process_tree.h"

namespace pdrec {

enum class AlgorithmId {
  kAlpha,
  kAlphaPlus,
  kHeuristics,
  kInductive,
  kInductiveInfrequent,
  kInductiveDirect,
};

inline constexpr std::array<AlgorithmId, 6> kPortfolio = {
    AlgorithmId::kAlpha,     AlgorithmId::kAlphaPlus,
    AlgorithmId::kHeuristics, AlgorithmId::kInductive,
    AlgorithmId::kInductiveInfrequent, AlgorithmId::kInductiveDirect,
};

// Wire names: alpha, alpha_plus, heuristics, inductive,
// inductive_infrequent, inductive_direct.
std::string_view AlgorithmName(AlgorithmId id);
std::optional<AlgorithmId> FindAlgorithm(std::string_view name);
// Throws Error(kUnsupportedAlgorithm) for names outside the portfolio.
AlgorithmId ParseAlgorithm(std::string_view name);

// Flat parameter map. Recognized keys:
//   heuristics:            dependency_threshold in [0,1], default 0.5
//   inductive_infrequent:  noise_threshold in [0,1], default 0.2
using DiscoveryParams = std::map<std::string, double>;

// Throws kUnsupportedAlgorithm, kInvalidParameter (unknown key or out of
// range) or kDiscoveryFailure. The result is a workflow net and identical
// for identical inputs.
PetriNet Discover(AlgorithmId algorithm, const EventLog& log,
                  const DiscoveryParams& params = {});

// Classic alpha algorithm. Falls back to the source/sink skeleton (source ->
// start activities, end activities -> sink) when no places can be derived.
PetriNet AlphaSteps(const EventLog& log);
PetriNet AlphaSteps(const VariantLog& log);
// Alpha with length-one-loop pre/post-processing.
PetriNet AlphaPlus(const VariantLog& log);

// Dependency measure: (|a>b| - |b>a|) / (|a>b| + |b>a| + 1) for a != b and
// |a>a| / (|a>a| + 1) for a == b.
double HeuristicsDependency(const DirectlyFollowsGraph& dfg,
                            const std::string& a, const std::string& b);
PetriNet HeuristicsNet(const EventLog& log, double dependency_threshold = 0.5);

enum class InductiveVariant { kClassic, kInfrequent, kDirect };

ProcessTree InductiveTree(const VariantLog& log, InductiveVariant variant,
                          double noise_threshold = 0.2);
ProcessTree InductiveTree(const EventLog& log, InductiveVariant variant,
                          double noise_threshold = 0.2);

// loop(tau, X(a1, ..., an)): replays every sequence over `activities`.
ProcessTree FlowerTree(const std::vector<std::string>& activities);
PetriNet FlowerNet(const std::vector<std::string>& activities);

}  // namespace pdrec

#endif  // PDREC_DISCOVERY_H_
