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

#include "pdrec/quality.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pdrec/error.h"

namespace pdrec {
namespace {

constexpr int kMaxSilentDepth = 64;
constexpr std::size_t kMaxSilentStates = 65536;

struct Counters {
  double produced = 0;
  double consumed = 0;
  double missing = 0;
  double remaining = 0;

  void Add(const Counters& other, double weight) {
    produced += weight * other.produced;
    consumed += weight * other.consumed;
    missing += weight * other.missing;
    remaining += weight * other.remaining;
  }
};

struct TrieNode {
  int label = -1;
  std::size_t count = 0;  // traces sharing this prefix
  std::size_t ends = 0;   // traces ending here
  std::map<int, int> children;  // label -> node
};

std::vector<TrieNode> BuildTrie(const VariantLog& log) {
  std::vector<TrieNode> trie(1);
  for (const auto& [sequence, count] : log.variants) {
    int node = 0;
    trie[0].count += count;
    for (int a : sequence) {
      auto it = trie[node].children.find(a);
      int next;
      if (it == trie[node].children.end()) {
        next = static_cast<int>(trie.size());
        trie[node].children.emplace(a, next);
        trie.push_back(TrieNode{});
        trie[next].label = a;
      } else {
        next = it->second;
      }
      trie[next].count += count;
      node = next;
    }
    trie[node].ends += count;
  }
  return trie;
}

class Replayer {
 public:
  // Labels are indexed by the log's activity ids; net labels absent from
  // the log never match an event.
  Replayer(const PetriNet& net, const std::vector<std::string>& activities)
      : net_(net), candidates_(activities.size()) {
    std::map<std::string, int> id;
    for (std::size_t a = 0; a < activities.size(); ++a) {
      id[activities[a]] = static_cast<int>(a);
    }
    int next_label = static_cast<int>(activities.size());
    std::vector<std::vector<int>> by_label(activities.size());
    for (std::size_t t = 0; t < net.num_transitions(); ++t) {
      const Transition& tr = net.transition(static_cast<int>(t));
      if (tr.silent()) {
        silent_.push_back(static_cast<int>(t));
        label_of_.push_back(-1);
        continue;
      }
      auto [it, inserted] = id.emplace(*tr.label, next_label);
      if (inserted) {
        ++next_label;
        by_label.emplace_back();
      }
      label_of_.push_back(it->second);
      labeled_.push_back(static_cast<int>(t));
      by_label[it->second].push_back(static_cast<int>(t));
      if (it->second < static_cast<int>(candidates_.size())) {
        candidates_[it->second].push_back(static_cast<int>(t));
      }
    }
    producers_.resize(net.num_places());
    for (int t : silent_) {
      for (int p : net.postset(t)) producers_[p].push_back(t);
    }
    for (const std::vector<int>& transitions : by_label) {
      std::vector<int> places;
      for (int t : transitions) {
        const auto& pre = net.preset(t);
        places.insert(places.end(), pre.begin(), pre.end());
      }
      label_goals_.push_back(MakeGoal(places));
    }
    std::vector<int> final_places;
    for (std::size_t p = 0; p < net.num_places(); ++p) {
      if (net.final_marking()[p] > 0) {
        final_places.push_back(static_cast<int>(p));
      }
    }
    final_goal_ = MakeGoal(final_places);
    by_label_ = std::move(by_label);
  }

  // Replays one event labeled `label`; returns the fired transition or -1.
  int ReplayEvent(Marking* m, int label, Counters* step) {
    const std::vector<int>& candidates = candidates_[label];
    if (candidates.empty()) {
      step->missing += 1;
      step->consumed += 1;
      return -1;
    }
    const std::vector<int>* path = EnablingPath(*m, label);
    if (path != nullptr) {
      for (int t : *path) FireCounted(m, t, step);
      for (int t : candidates) {
        if (IsEnabled(net_, *m, t)) {
          FireCounted(m, t, step);
          return t;
        }
      }
    }
    const int forced = candidates.front();
    for (int p : net_.preset(forced)) {
      if ((*m)[p] < 1) {
        step->missing += 1;
        (*m)[p] += 1;
      }
    }
    FireCounted(m, forced, step);
    return forced;
  }

  // Moves towards the final marking, consumes it and counts what is left.
  void FinishTrace(Marking* m, Counters* step) {
    for (int t : FinalPath(*m)) FireCounted(m, t, step);
    const Marking& final_marking = net_.final_marking();
    for (std::size_t p = 0; p < m->size(); ++p) {
      const int want = final_marking[p];
      if (want == 0) continue;
      if ((*m)[p] < want) {
        step->missing += want - (*m)[p];
        (*m)[p] = want;
      }
      step->consumed += want;
      (*m)[p] -= want;
    }
    step->remaining += static_cast<double>(m->Total());
  }

  // Labels (log activity ids or net-only ids) enabled after silent moves.
  const std::vector<int>& AllowedLabels(const Marking& m) {
    auto it = allowed_cache_.find(m);
    if (it != allowed_cache_.end()) return it->second;
    std::vector<int> labels;
    for (std::size_t label = 0; label < by_label_.size(); ++label) {
      const std::vector<int>& transitions = by_label_[label];
      if (transitions.empty()) continue;
      const int found = Search(m, label_goals_[label], [&](const Marking& s) {
        return AnyEnabled(s, transitions);
      });
      if (found >= 0) labels.push_back(static_cast<int>(label));
    }
    return allowed_cache_.emplace(m, std::move(labels)).first->second;
  }

  int label_of(int transition) const { return label_of_[transition]; }
  const std::vector<int>& labeled() const { return labeled_; }

 private:
  // Silent transitions that can move tokens towards a set of target places,
  // with each place's silent distance to the targets (-1 if unreachable).
  struct Goal {
    std::vector<int> distance;
    std::vector<int> transitions;
  };

  struct SearchNode {
    Marking marking;
    int parent;
    int transition;
    int depth;
  };

  Goal MakeGoal(const std::vector<int>& targets) const {
    Goal goal;
    goal.distance.assign(net_.num_places(), -1);
    std::deque<int> queue;
    for (int p : targets) {
      if (goal.distance[p] < 0) {
        goal.distance[p] = 0;
        queue.push_back(p);
      }
    }
    std::vector<bool> relevant(net_.num_transitions(), false);
    while (!queue.empty()) {
      const int p = queue.front();
      queue.pop_front();
      for (int t : producers_[p]) {
        relevant[t] = true;
        for (int q : net_.preset(t)) {
          if (goal.distance[q] >= 0) continue;
          goal.distance[q] = goal.distance[p] + 1;
          queue.push_back(q);
        }
      }
    }
    for (int t : silent_) {
      if (relevant[t]) goal.transitions.push_back(t);
    }
    return goal;
  }

  bool AnyEnabled(const Marking& m, const std::vector<int>& transitions) const {
    return std::any_of(transitions.begin(), transitions.end(),
                       [&](int t) { return IsEnabled(net_, m, t); });
  }

  void FireCounted(Marking* m, int t, Counters* step) const {
    for (int p : net_.preset(t)) (*m)[p] -= 1;
    for (int p : net_.postset(t)) (*m)[p] += 1;
    step->consumed += static_cast<double>(net_.preset(t).size());
    step->produced += static_cast<double>(net_.postset(t).size());
  }

  static long Estimate(const Marking& m, const Goal& goal) {
    long h = 0;
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (goal.distance[p] > 0) h += static_cast<long>(m[p]) * goal.distance[p];
    }
    return h;
  }

  // Best-first search over the goal's silent transitions, ordered by the
  // summed token distance to the goal places. Firing any other silent
  // transition can only take tokens away, so the restriction loses no
  // reachable goal. Returns the index of the first node satisfying `done`.
  template <typename Done>
  int Search(const Marking& start, const Goal& goal, Done done) {
    nodes_.clear();
    nodes_.push_back({start, -1, -1, 0});
    if (done(start)) return 0;
    using Entry = std::tuple<long, int, int>;  // estimate, depth, node
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    open.emplace(Estimate(start, goal), 0, 0);
    std::unordered_set<Marking, MarkingHash> seen{start};
    while (!open.empty()) {
      const int i = std::get<2>(open.top());
      open.pop();
      if (nodes_[i].depth >= kMaxSilentDepth) continue;
      for (int t : goal.transitions) {
        if (nodes_.size() >= kMaxSilentStates) return -1;
        if (!IsEnabled(net_, nodes_[i].marking, t)) continue;
        Marking next = nodes_[i].marking;
        for (int p : net_.preset(t)) next[p] -= 1;
        for (int p : net_.postset(t)) next[p] += 1;
        if (!seen.insert(next).second) continue;
        const int depth = nodes_[i].depth + 1;
        const int index = static_cast<int>(nodes_.size());
        const long h = Estimate(next, goal);
        nodes_.push_back({std::move(next), i, t, depth});
        if (done(nodes_[index].marking)) return index;
        open.emplace(h, depth, index);
      }
    }
    return -1;
  }

  std::vector<int> PathTo(int node) const {
    std::vector<int> path;
    for (; node > 0; node = nodes_[node].parent) {
      path.push_back(nodes_[node].transition);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  // Drops firings the goal does not need, last first, so that the search's
  // detours do not commit choices early.
  template <typename Done>
  std::vector<int> Prune(const Marking& start, std::vector<int> path,
                         Done done) const {
    for (std::size_t k = path.size(); k-- > 0;) {
      Marking m = start;
      bool ok = true;
      for (std::size_t j = 0; j < path.size() && ok; ++j) {
        if (j == k) continue;
        ok = IsEnabled(net_, m, path[j]);
        if (!ok) break;
        for (int p : net_.preset(path[j])) m[p] -= 1;
        for (int p : net_.postset(path[j])) m[p] += 1;
      }
      if (ok && done(m)) path.erase(path.begin() + static_cast<long>(k));
    }
    return path;
  }

  const std::vector<int>* EnablingPath(const Marking& m, int label) {
    auto& per_label = path_cache_[m];
    auto it = per_label.find(label);
    if (it == per_label.end()) {
      const std::vector<int>& candidates = candidates_[label];
      auto done = [&](const Marking& s) { return AnyEnabled(s, candidates); };
      const int found = Search(m, label_goals_[label], done);
      std::optional<std::vector<int>> path;
      if (found >= 0) path = Prune(m, PathTo(found), done);
      it = per_label.emplace(label, std::move(path)).first;
    }
    return it->second ? &*it->second : nullptr;
  }

  // Prefers reaching the final marking exactly, then covering it.
  std::vector<int> FinalPath(const Marking& m) {
    auto it = final_cache_.find(m);
    if (it != final_cache_.end()) return it->second;
    const Marking& target = net_.final_marking();
    auto covers = [&](const Marking& s) {
      for (std::size_t p = 0; p < s.size(); ++p) {
        if (s[p] < target[p]) return false;
      }
      return true;
    };
    bool exact_possible = true;
    for (std::size_t p = 0; p < m.size(); ++p) {
      if (m[p] > 0 && final_goal_.distance[p] < 0) exact_possible = false;
    }
    auto exact = [&](const Marking& s) { return s == target; };
    std::vector<int> path;
    int found = exact_possible ? Search(m, final_goal_, exact) : -1;
    if (found >= 0) {
      path = Prune(m, PathTo(found), exact);
    } else if ((found = Search(m, final_goal_, covers)) >= 0) {
      path = Prune(m, PathTo(found), covers);
    }
    return final_cache_.emplace(m, std::move(path)).first->second;
  }

  const PetriNet& net_;
  std::vector<std::vector<int>> candidates_;
  std::vector<std::vector<int>> by_label_;
  std::vector<int> label_of_;
  std::vector<int> silent_;
  std::vector<int> labeled_;
  std::vector<std::vector<int>> producers_;  // place -> silent producers
  std::vector<Goal> label_goals_;
  Goal final_goal_;
  std::vector<SearchNode> nodes_;
  std::unordered_map<Marking, std::vector<int>, MarkingHash> allowed_cache_;
  std::unordered_map<Marking, std::vector<int>, MarkingHash> final_cache_;
  std::unordered_map<Marking,
                     std::map<int, std::optional<std::vector<int>>>,
                     MarkingHash>
      path_cache_;
};

}  // namespace

std::string_view MeasureName(MeasureId id) {
  switch (id) {
    case MeasureId::kFitness:
      return "fitness";
    case MeasureId::kPrecision:
      return "precision";
    case MeasureId::kGeneralization:
      return "generalization";
    case MeasureId::kSimplicity:
      return "simplicity";
  }
  return "unknown";
}

std::optional<MeasureId> FindMeasure(std::string_view name) {
  for (MeasureId id : kMeasures) {
    if (MeasureName(id) == name) return id;
  }
  return std::nullopt;
}

MeasureId ParseMeasure(std::string_view name) {
  if (auto id = FindMeasure(name)) return *id;
  throw Error(ErrorCode::kInvalidMeasure,
              "unknown measure '" + std::string(name) + "'");
}

double Simplicity(const PetriNet& net) {
  const double nodes =
      static_cast<double>(net.num_places() + net.num_transitions());
  if (nodes == 0) return 1.0;
  const double degree = 2.0 * static_cast<double>(net.num_arcs()) / nodes;
  return 1.0 / (1.0 + std::max(0.0, degree - 2.0));
}

QualityReport EvaluateAll(const VariantLog& log, const PetriNet& net) {
  net.Validate();
  Replayer replayer(net, log.activities);
  const std::vector<TrieNode> trie = BuildTrie(log);
  const double initial_tokens =
      static_cast<double>(net.initial_marking().Total());

  Counters totals;
  std::vector<double> executions(net.num_transitions(), 0.0);
  ReplayDiagnostics diag;
  diag.traces = trie[0].count;
  double escaping = 0;
  double allowed_total = 0;

  diag.degenerate_model =
      replayer.AllowedLabels(net.initial_marking()).empty();

  struct Frame {
    int node;
    Marking marking;
    bool fits;  // every event so far replayed without missing tokens
    double missing;  // along the prefix
  };
  std::vector<Frame> stack{{0, net.initial_marking(), true, 0.0}};
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    const TrieNode& node = trie[frame.node];

    if (node.ends > 0) {
      Marking m = frame.marking;
      Counters step;
      replayer.FinishTrace(&m, &step);
      totals.Add(step, static_cast<double>(node.ends));
      if (frame.missing == 0 && step.missing == 0 && step.remaining == 0) {
        diag.fitting_traces += node.ends;
      }
    }

    if (frame.fits && !diag.degenerate_model) {
      const std::vector<int>& allowed = replayer.AllowedLabels(frame.marking);
      std::size_t observed = 0;
      for (const auto& [label, child] : node.children) {
        observed += std::binary_search(allowed.begin(), allowed.end(), label);
      }
      const double weight = static_cast<double>(node.count);
      escaping += weight * static_cast<double>(allowed.size() - observed);
      allowed_total += weight * static_cast<double>(allowed.size());
    }

    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
      const auto [label, child] = *it;
      Marking m = frame.marking;
      Counters step;
      const int fired = replayer.ReplayEvent(&m, label, &step);
      const double weight = static_cast<double>(trie[child].count);
      totals.Add(step, weight);
      if (fired >= 0) executions[fired] += weight;
      stack.push_back({child, std::move(m), frame.fits && step.missing == 0,
                       frame.missing + step.missing});
    }
  }
  totals.produced += initial_tokens * static_cast<double>(diag.traces);

  diag.produced = totals.produced;
  diag.consumed = totals.consumed;
  diag.missing = totals.missing;
  diag.remaining = totals.remaining;

  QualityReport report;
  report.diagnostics = diag;
  double fitness = 1.0;
  if (totals.consumed > 0 && totals.produced > 0) {
    fitness = 0.5 * (1.0 - totals.missing / totals.consumed) +
              0.5 * (1.0 - totals.remaining / totals.produced);
  }
  double precision = 1.0;
  if (!diag.degenerate_model && allowed_total > 0) {
    precision = 1.0 - escaping / allowed_total;
  }
  double generalization = 0.0;
  const std::vector<int>& labeled = replayer.labeled();
  if (!labeled.empty()) {
    double sum = 0;
    for (int t : labeled) {
      sum += executions[t] > 0 ? 1.0 / std::sqrt(executions[t]) : 1.0;
    }
    generalization = 1.0 - sum / static_cast<double>(labeled.size());
  }
  auto clamp = [](double v) { return std::clamp(v, 0.0, 1.0); };
  report.values[static_cast<int>(MeasureId::kFitness)] = clamp(fitness);
  report.values[static_cast<int>(MeasureId::kPrecision)] = clamp(precision);
  report.values[static_cast<int>(MeasureId::kGeneralization)] =
      clamp(generalization);
  report.values[static_cast<int>(MeasureId::kSimplicity)] = Simplicity(net);
  return report;
}

QualityReport EvaluateAll(const EventLog& log, const PetriNet& net) {
  return EvaluateAll(VariantLog::FromEventLog(log), net);
}

double FitnessTokenReplay(const EventLog& log, const PetriNet& net) {
  return EvaluateAll(log, net).Get(MeasureId::kFitness);
}

double PrecisionEscapingEdges(const EventLog& log, const PetriNet& net) {
  return EvaluateAll(log, net).Get(MeasureId::kPrecision);
}

double Generalization(const EventLog& log, const PetriNet& net) {
  return EvaluateAll(log, net).Get(MeasureId::kGeneralization);
}

nlohmann::json QualityReportToJson(const QualityReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (MeasureId id : kMeasures) {
    out[std::string(MeasureName(id))] = report.Get(id);
  }
  const ReplayDiagnostics& d = report.diagnostics;
  out["diagnostics"] = {
      {"produced", d.produced},          {"consumed", d.consumed},
      {"missing", d.missing},            {"remaining", d.remaining},
      {"traces", d.traces},              {"fitting_traces", d.fitting_traces},
      {"degenerate_model", d.degenerate_model},
  };
  return out;
}

}  // namespace pdrec
