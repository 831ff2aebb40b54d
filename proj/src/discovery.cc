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

#include <set>
#include <string>

#include "pdrec/discovery.h"
#include "pdrec/error.h"

namespace pdrec {
namespace {

double ParamOr(const DiscoveryParams& params, const std::string& key,
               double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!(it->second >= 0.0 && it->second <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, key + " must lie in [0, 1]");
  }
  return it->second;
}

void CheckKeys(AlgorithmId algorithm, const DiscoveryParams& params) {
  std::set<std::string> allowed;
  if (algorithm == AlgorithmId::kHeuristics) {
    allowed.insert("dependency_threshold");
  } else if (algorithm == AlgorithmId::kInductiveInfrequent) {
    allowed.insert("noise_threshold");
  }
  for (const auto& [key, value] : params) {
    if (!allowed.count(key)) {
      throw Error(ErrorCode::kInvalidParameter,
                  "unknown parameter '" + key + "' for " +
                      std::string(AlgorithmName(algorithm)));
    }
  }
}

}  // namespace

std::string_view AlgorithmName(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kAlpha:
      return "alpha";
    case AlgorithmId::kAlphaPlus:
      return "alpha_plus";
    case AlgorithmId::kHeuristics:
      return "heuristics";
    case AlgorithmId::kInductive:
      return "inductive";
    case AlgorithmId::kInductiveInfrequent:
      return "inductive_infrequent";
    case AlgorithmId::kInductiveDirect:
      return "inductive_direct";
  }
  return "unknown";
}

std::optional<AlgorithmId> FindAlgorithm(std::string_view name) {
  for (AlgorithmId id : kPortfolio) {
    if (AlgorithmName(id) == name) return id;
  }
  return std::nullopt;
}

AlgorithmId ParseAlgorithm(std::string_view name) {
  if (auto id = FindAlgorithm(name)) return *id;
  throw Error(ErrorCode::kUnsupportedAlgorithm,
              "unsupported algorithm '" + std::string(name) + "'");
}

PetriNet Discover(AlgorithmId algorithm, const EventLog& log,
                  const DiscoveryParams& params) {
  CheckKeys(algorithm, params);
  PetriNet net;
  switch (algorithm) {
    case AlgorithmId::kAlpha:
      net = AlphaSteps(log);
      break;
    case AlgorithmId::kAlphaPlus:
      net = AlphaPlus(VariantLog::FromEventLog(log));
      break;
    case AlgorithmId::kHeuristics:
      net = HeuristicsNet(log, ParamOr(params, "dependency_threshold", 0.5));
      break;
    case AlgorithmId::kInductive:
      net = TreeToNet(InductiveTree(log, InductiveVariant::kClassic));
      break;
    case AlgorithmId::kInductiveInfrequent:
      net = TreeToNet(InductiveTree(log, InductiveVariant::kInfrequent,
                                    ParamOr(params, "noise_threshold", 0.2)));
      break;
    case AlgorithmId::kInductiveDirect:
      net = TreeToNet(InductiveTree(log, InductiveVariant::kDirect));
      break;
  }
  if (!net.IsWorkflowNet()) {
    throw Error(ErrorCode::kDiscoveryFailure,
                std::string(AlgorithmName(algorithm)) +
                    " did not produce a workflow net");
  }
  return net;
}

}  // namespace pdrec
