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

#include <string>
#include <vector>

#include "pdrec/discovery.h"
#include "pdrec/error.h"

namespace pdrec {

double HeuristicsDependency(const DirectlyFollowsGraph& dfg,
                            const std::string& a, const std::string& b) {
  const double ab = static_cast<double>(dfg.EdgeCount(a, b));
  if (a == b) return ab / (ab + 1.0);
  const double ba = static_cast<double>(dfg.EdgeCount(b, a));
  return (ab - ba) / (ab + ba + 1.0);
}

PetriNet HeuristicsNet(const EventLog& log, double dependency_threshold) {
  if (!(dependency_threshold >= 0.0 && dependency_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "dependency_threshold must lie in [0, 1]");
  }
  const DirectlyFollowsGraph dfg = ComputeDfg(log);
  const std::vector<std::string> acts(dfg.nodes.begin(), dfg.nodes.end());
  const int n = static_cast<int>(acts.size());

  std::vector<double> dep(n * n, 0.0);
  std::vector<bool> observed(n * n, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      observed[i * n + j] = dfg.EdgeCount(acts[i], acts[j]) > 0;
      dep[i * n + j] = HeuristicsDependency(dfg, acts[i], acts[j]);
    }
  }
  std::vector<bool> keep(n * n, false);
  for (int k = 0; k < n * n; ++k) {
    keep[k] = observed[k] && dep[k] >= dependency_threshold;
  }

  // All-tasks-connected: every non-start activity receives its best
  // predecessor and every non-end activity its best successor.
  for (int j = 0; j < n; ++j) {
    const bool is_start = dfg.start_activities.count(acts[j]) > 0;
    bool has_input = false;
    for (int i = 0; i < n; ++i) has_input |= i != j && keep[i * n + j];
    if (!is_start && !has_input) {
      int best = -1;
      for (int i = 0; i < n; ++i) {
        if (i == j || !observed[i * n + j]) continue;
        if (best < 0 || dep[i * n + j] > dep[best * n + j]) best = i;
      }
      if (best >= 0) keep[best * n + j] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    const bool is_end = dfg.end_activities.count(acts[i]) > 0;
    bool has_output = false;
    for (int j = 0; j < n; ++j) has_output |= i != j && keep[i * n + j];
    if (!is_end && !has_output) {
      int best = -1;
      for (int j = 0; j < n; ++j) {
        if (i == j || !observed[i * n + j]) continue;
        if (best < 0 || dep[i * n + j] > dep[i * n + best]) best = j;
      }
      if (best >= 0) keep[i * n + best] = true;
    }
  }

  PetriNet net;
  const int source = net.AddPlace("source");
  const int sink = net.AddPlace("sink");
  std::vector<int> in(n), out(n);
  for (int i = 0; i < n; ++i) {
    in[i] = net.AddPlace("in_" + std::to_string(i));
    out[i] = net.AddPlace("out_" + std::to_string(i));
    const int t = net.AddTransition("t_" + acts[i], acts[i]);
    net.AddInputArc(in[i], t);
    net.AddOutputArc(t, out[i]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!keep[i * n + j]) continue;
      const int tau = net.AddTransition(
          "tau_" + std::to_string(i) + "_" + std::to_string(j), std::nullopt);
      net.AddInputArc(out[i], tau);
      net.AddOutputArc(tau, in[j]);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (dfg.start_activities.count(acts[i])) {
      const int tau =
          net.AddTransition("tau_start_" + std::to_string(i), std::nullopt);
      net.AddInputArc(source, tau);
      net.AddOutputArc(tau, in[i]);
    }
    if (dfg.end_activities.count(acts[i])) {
      const int tau =
          net.AddTransition("tau_end_" + std::to_string(i), std::nullopt);
      net.AddInputArc(out[i], tau);
      net.AddOutputArc(tau, sink);
    }
  }
  net.SetInitialMarking({{"source", 1}});
  net.SetFinalMarking({{"sink", 1}});
  return net;
}

}  // namespace pdrec
