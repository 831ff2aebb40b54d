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

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdrec/discovery.h"

namespace pdrec {
namespace {

// Upper bound on explored (A, B) candidates before falling back to the
// skeleton net.
constexpr std::size_t kMaxAlphaCandidates = 50000;

using ActivitySet = std::vector<int>;  // sorted
using PlacePair = std::pair<ActivitySet, ActivitySet>;

struct Relations {
  int n = 0;
  std::vector<bool> follows;  // n * n
  std::vector<bool> diamond;  // a-b-a and b-a-b both observed
  std::set<int> starts;
  std::set<int> ends;
  bool length_two_loop = false;

  bool Follows(int a, int b) const { return follows[a * n + b]; }
  bool Causal(int a, int b) const {
    return Follows(a, b) && (!Follows(b, a) || diamond[a * n + b]);
  }
  bool Choice(int a, int b) const { return !Follows(a, b) && !Follows(b, a); }
};

// With `use_triangles`, a-b-a patterns in both directions make a and b
// causally related instead of parallel (the alpha-plus refinement).
Relations ComputeRelations(const VariantLog& log, bool use_triangles) {
  Relations r;
  r.n = static_cast<int>(log.activities.size());
  r.follows.assign(r.n * r.n, false);
  r.diamond.assign(r.n * r.n, false);
  std::vector<bool> triangle(r.n * r.n, false);
  for (const auto& [sequence, count] : log.variants) {
    if (sequence.empty()) continue;
    r.starts.insert(sequence.front());
    r.ends.insert(sequence.back());
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
      r.follows[sequence[i] * r.n + sequence[i + 1]] = true;
      if (i + 2 < sequence.size() && sequence[i] == sequence[i + 2] &&
          sequence[i] != sequence[i + 1]) {
        triangle[sequence[i] * r.n + sequence[i + 1]] = true;
        r.length_two_loop = true;
      }
    }
  }
  if (use_triangles) {
    for (int a = 0; a < r.n; ++a) {
      for (int b = 0; b < r.n; ++b) {
        r.diamond[a * r.n + b] = triangle[a * r.n + b] && triangle[b * r.n + a];
      }
    }
  }
  return r;
}

bool HasShortLoop(const Relations& r) {
  if (r.length_two_loop) return true;
  for (int a = 0; a < r.n; ++a) {
    if (r.Follows(a, a)) return true;
  }
  return false;
}

bool CanAddToA(const Relations& r, const PlacePair& pair, int x) {
  if (std::binary_search(pair.first.begin(), pair.first.end(), x)) return false;
  if (!r.Choice(x, x)) return false;
  for (int a : pair.first) {
    if (!r.Choice(a, x)) return false;
  }
  for (int b : pair.second) {
    if (!r.Causal(x, b)) return false;
  }
  return true;
}

bool CanAddToB(const Relations& r, const PlacePair& pair, int x) {
  if (std::binary_search(pair.second.begin(), pair.second.end(), x)) {
    return false;
  }
  if (!r.Choice(x, x)) return false;
  for (int b : pair.second) {
    if (!r.Choice(b, x)) return false;
  }
  for (int a : pair.first) {
    if (!r.Causal(a, x)) return false;
  }
  return true;
}

ActivitySet Inserted(ActivitySet set, int x) {
  set.insert(std::upper_bound(set.begin(), set.end(), x), x);
  return set;
}

// Maximal (A, B) pairs, or nullopt when the candidate space is too large.
std::optional<std::vector<PlacePair>> MaximalPairs(const Relations& r) {
  std::set<PlacePair> seen;
  std::deque<PlacePair> pending;
  for (int a = 0; a < r.n; ++a) {
    for (int b = 0; b < r.n; ++b) {
      if (r.Causal(a, b) && r.Choice(a, a) && r.Choice(b, b)) {
        PlacePair p{{a}, {b}};
        if (seen.insert(p).second) pending.push_back(std::move(p));
      }
    }
  }
  std::vector<PlacePair> maximal;
  while (!pending.empty()) {
    PlacePair current = std::move(pending.front());
    pending.pop_front();
    bool extended = false;
    for (int x = 0; x < r.n; ++x) {
      if (CanAddToA(r, current, x)) {
        extended = true;
        PlacePair next{Inserted(current.first, x), current.second};
        if (seen.insert(next).second) pending.push_back(std::move(next));
      }
      if (CanAddToB(r, current, x)) {
        extended = true;
        PlacePair next{current.first, Inserted(current.second, x)};
        if (seen.insert(next).second) pending.push_back(std::move(next));
      }
    }
    if (seen.size() > kMaxAlphaCandidates) return std::nullopt;
    if (!extended) maximal.push_back(std::move(current));
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

struct AlphaNet {
  PetriNet net;
  std::vector<int> transition_of;  // activity id -> transition index
  std::vector<std::pair<PlacePair, int>> places;  // internal places
};

// Builds source/sink, one transition per activity in `names` and one place
// per pair. `names` is indexed by the relation's activity ids.
AlphaNet BuildAlphaNet(const std::vector<std::string>& names,
                       const Relations& r,
                       const std::vector<PlacePair>& pairs) {
  AlphaNet out;
  const int source = out.net.AddPlace("source");
  const int sink = out.net.AddPlace("sink");
  for (std::size_t a = 0; a < names.size(); ++a) {
    out.transition_of.push_back(
        out.net.AddTransition("t_" + names[a], names[a]));
  }
  for (int s : r.starts) out.net.AddInputArc(source, out.transition_of[s]);
  for (int e : r.ends) out.net.AddOutputArc(out.transition_of[e], sink);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int p = out.net.AddPlace("p_" + std::to_string(k + 1));
    for (int a : pairs[k].first) out.net.AddOutputArc(out.transition_of[a], p);
    for (int b : pairs[k].second) out.net.AddInputArc(p, out.transition_of[b]);
    out.places.emplace_back(pairs[k], p);
  }
  out.net.SetInitialMarking({{"source", 1}});
  out.net.SetFinalMarking({{"sink", 1}});
  return out;
}

AlphaNet RunAlpha(const VariantLog& log, bool plus) {
  const Relations r = ComputeRelations(log, plus);
  // Classic alpha cannot represent loops of length one or two; it yields
  // the skeleton net for such logs.
  if (!plus && HasShortLoop(r)) return BuildAlphaNet(log.activities, r, {});
  auto pairs = MaximalPairs(r);
  return BuildAlphaNet(log.activities, r,
                       pairs ? *pairs : std::vector<PlacePair>{});
}

}  // namespace

PetriNet AlphaSteps(const VariantLog& log) {
  return RunAlpha(log, false).net;
}

PetriNet AlphaSteps(const EventLog& log) {
  return AlphaSteps(VariantLog::FromEventLog(log));
}

PetriNet AlphaPlus(const VariantLog& log) {
  const Relations full = ComputeRelations(log, true);
  const int n = full.n;
  std::vector<bool> short_loop(n, false);
  for (int a = 0; a < n; ++a) short_loop[a] = full.Follows(a, a);

  // Mine the log with length-one-loop activities removed.
  VariantLog reduced;
  std::vector<int> reduced_id(n, -1);
  std::vector<int> loop_activities;
  for (int a = 0; a < n; ++a) {
    if (short_loop[a]) {
      loop_activities.push_back(a);
    } else {
      reduced_id[a] = static_cast<int>(reduced.activities.size());
      reduced.activities.push_back(log.activities[a]);
    }
  }
  std::map<std::vector<int>, std::size_t> counts;
  for (const auto& [sequence, count] : log.variants) {
    std::vector<int> kept;
    for (int a : sequence) {
      if (!short_loop[a]) kept.push_back(reduced_id[a]);
    }
    if (!kept.empty()) counts[kept] += count;
  }
  reduced.variants.assign(counts.begin(), counts.end());

  AlphaNet mined = RunAlpha(reduced, true);
  PetriNet& net = mined.net;

  // Re-attach each loop activity as a self-loop on every internal place
  // whose inputs cover its predecessors and whose outputs cover its
  // successors.
  for (int t : loop_activities) {
    std::vector<int> before, after;
    for (int a = 0; a < n; ++a) {
      if (a == t || short_loop[a]) continue;
      if (full.Follows(a, t)) before.push_back(reduced_id[a]);
      if (full.Follows(t, a)) after.push_back(reduced_id[a]);
    }
    const int transition =
        net.AddTransition("t_" + log.activities[t], log.activities[t]);
    for (const auto& [pair, place] : mined.places) {
      const bool covers_before = std::includes(
          pair.first.begin(), pair.first.end(), before.begin(), before.end());
      const bool covers_after = std::includes(
          pair.second.begin(), pair.second.end(), after.begin(), after.end());
      if (covers_before && covers_after) {
        net.AddInputArc(place, transition);
        net.AddOutputArc(transition, place);
      }
    }
  }
  return std::move(net);
}

}  // namespace pdrec
