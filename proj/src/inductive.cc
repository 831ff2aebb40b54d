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
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graph_util.h"
#include "pdrec/discovery.h"
#include "pdrec/error.h"

namespace pdrec {
namespace {

using Sequence = std::vector<int>;  // global activity ids
using SubLog = std::map<Sequence, std::size_t>;
using Groups = std::vector<std::vector<int>>;  // local activity indices

struct DfgView {
  std::vector<int> acts;  // global ids, sorted
  std::vector<std::size_t> edges;
  std::vector<std::size_t> starts;
  std::vector<std::size_t> ends;

  int n() const { return static_cast<int>(acts.size()); }
  std::size_t Edge(int i, int j) const { return edges[i * n() + j]; }
  bool Follows(int i, int j) const { return Edge(i, j) > 0; }
  int Local(int global) const {
    return static_cast<int>(
        std::lower_bound(acts.begin(), acts.end(), global) - acts.begin());
  }
  void Resize(std::vector<int> activities) {
    acts = std::move(activities);
    edges.assign(acts.size() * acts.size(), 0);
    starts.assign(acts.size(), 0);
    ends.assign(acts.size(), 0);
  }
};

DfgView ViewOfLog(const SubLog& log) {
  std::vector<int> acts;
  for (const auto& [sequence, count] : log) {
    acts.insert(acts.end(), sequence.begin(), sequence.end());
  }
  std::sort(acts.begin(), acts.end());
  acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
  DfgView view;
  view.Resize(std::move(acts));
  const int n = view.n();
  for (const auto& [sequence, count] : log) {
    if (sequence.empty()) continue;
    view.starts[view.Local(sequence.front())] += count;
    view.ends[view.Local(sequence.back())] += count;
    for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
      view.edges[view.Local(sequence[i]) * n + view.Local(sequence[i + 1])] +=
          count;
    }
  }
  return view;
}

// Drops edges below `noise` times the strongest outgoing edge of their
// source, and start/end activities below `noise` times the strongest one.
DfgView Filtered(const DfgView& view, double noise) {
  DfgView out = view;
  const int n = view.n();
  for (int i = 0; i < n; ++i) {
    std::size_t strongest = 0;
    for (int j = 0; j < n; ++j) strongest = std::max(strongest, view.Edge(i, j));
    for (int j = 0; j < n; ++j) {
      if (static_cast<double>(view.Edge(i, j)) <
          noise * static_cast<double>(strongest)) {
        out.edges[i * n + j] = 0;
      }
    }
  }
  auto filter = [noise](std::vector<std::size_t>* counts) {
    const std::size_t strongest =
        counts->empty() ? 0 : *std::max_element(counts->begin(), counts->end());
    for (std::size_t& c : *counts) {
      if (static_cast<double>(c) < noise * static_cast<double>(strongest)) {
        c = 0;
      }
    }
  };
  filter(&out.starts);
  filter(&out.ends);
  return out;
}

Groups GroupsFromComponents(const std::vector<int>& component, int count) {
  Groups groups(count);
  for (int v = 0; v < static_cast<int>(component.size()); ++v) {
    groups[component[v]].push_back(v);
  }
  return groups;
}

std::optional<Groups> XorCut(const DfgView& view) {
  const int n = view.n();
  std::vector<std::vector<int>> neighbours(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && view.Follows(i, j)) {
        neighbours[i].push_back(j);
        neighbours[j].push_back(i);
      }
    }
  }
  int count = 0;
  const std::vector<int> component =
      internal::ConnectedComponents(neighbours, &count);
  if (count < 2) return std::nullopt;
  return GroupsFromComponents(component, count);
}

std::vector<bool> Reachability(const DfgView& view) {
  const int n = view.n();
  std::vector<bool> reach(n * n, false);
  for (int s = 0; s < n; ++s) {
    std::vector<int> pending{s};
    while (!pending.empty()) {
      const int v = pending.back();
      pending.pop_back();
      for (int w = 0; w < n; ++w) {
        if (view.Follows(v, w) && !reach[s * n + w]) {
          reach[s * n + w] = true;
          pending.push_back(w);
        }
      }
    }
  }
  return reach;
}

std::optional<Groups> SequenceCut(const DfgView& view) {
  const int n = view.n();
  if (n < 2) return std::nullopt;
  const std::vector<bool> reach = Reachability(view);
  auto reaches = [&](int a, int b) { return reach[a * n + b]; };

  // Start from singletons; merge mutually reachable or mutually unreachable
  // groups until every pair of groups is strictly ordered.
  std::vector<int> group(n);
  std::iota(group.begin(), group.end(), 0);
  auto merge = [&group](int from, int to) {
    for (int& g : group) {
      if (g == from) g = to;
    }
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (group[a] != group[b] && reaches(a, b) == reaches(b, a)) {
          merge(group[b], group[a]);
          changed = true;
        }
      }
    }
    if (changed) continue;
    // Groups ordered both ways by different members are merged as well.
    std::map<std::pair<int, int>, bool> direction;
    for (int a = 0; a < n && !changed; ++a) {
      for (int b = 0; b < n && !changed; ++b) {
        if (group[a] == group[b] || !reaches(a, b)) continue;
        const std::pair<int, int> key{group[b], group[a]};
        if (direction.count(key)) {
          merge(group[b], group[a]);
          changed = true;
        } else {
          direction[{group[a], group[b]}] = true;
        }
      }
    }
  }
  std::vector<int> ids(group);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() < 2) return std::nullopt;
  Groups groups;
  for (int id : ids) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
      if (group[v] == id) members.push_back(v);
    }
    groups.push_back(std::move(members));
  }
  // Earlier groups reach later ones.
  std::sort(groups.begin(), groups.end(),
            [&](const std::vector<int>& x, const std::vector<int>& y) {
              return reaches(x.front(), y.front());
            });
  return groups;
}

std::optional<Groups> ParallelCut(const DfgView& view) {
  const int n = view.n();
  std::vector<std::vector<int>> neighbours(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!(view.Follows(i, j) && view.Follows(j, i))) {
        neighbours[i].push_back(j);
        neighbours[j].push_back(i);
      }
    }
  }
  int count = 0;
  const std::vector<int> component =
      internal::ConnectedComponents(neighbours, &count);
  if (count < 2) return std::nullopt;
  Groups raw = GroupsFromComponents(component, count);
  auto complete = [&](const std::vector<int>& g) {
    bool start = false, end = false;
    for (int v : g) {
      start |= view.starts[v] > 0;
      end |= view.ends[v] > 0;
    }
    return start && end;
  };
  Groups groups;
  std::vector<int> deficient;
  for (auto& g : raw) {
    if (complete(g)) {
      groups.push_back(std::move(g));
    } else {
      deficient.insert(deficient.end(), g.begin(), g.end());
    }
  }
  if (groups.empty()) return std::nullopt;
  groups.front().insert(groups.front().end(), deficient.begin(),
                        deficient.end());
  std::sort(groups.front().begin(), groups.front().end());
  if (groups.size() < 2) return std::nullopt;
  return groups;
}

// Group 0 is the body; the remaining groups are redo components.
std::optional<Groups> LoopCut(const DfgView& view) {
  const int n = view.n();
  std::vector<bool> is_start(n), is_end(n), body(n);
  for (int v = 0; v < n; ++v) {
    is_start[v] = view.starts[v] > 0;
    is_end[v] = view.ends[v] > 0;
    body[v] = is_start[v] || is_end[v];
  }
  if (std::none_of(is_start.begin(), is_start.end(), [](bool b) { return b; })) {
    return std::nullopt;
  }
  std::vector<std::vector<int>> neighbours(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && !body[i] && !body[j] && view.Follows(i, j)) {
        neighbours[i].push_back(j);
        neighbours[j].push_back(i);
      }
    }
  }
  int count = 0;
  const std::vector<int> component =
      internal::ConnectedComponents(neighbours, &count);
  Groups candidates;
  for (const auto& g : GroupsFromComponents(component, count)) {
    if (!body[g.front()]) candidates.push_back(g);
  }

  Groups redo;
  for (const auto& g : candidates) {
    bool to_body = false;
    for (int c : g) {
      for (int v = 0; v < n && !to_body; ++v) {
        if (!body[v] || std::find(g.begin(), g.end(), v) != g.end()) continue;
        // Entered from a body activity that is not an end activity, or left
        // towards one that is not a start activity.
        if (view.Follows(v, c) && !is_end[v]) to_body = true;
        if (view.Follows(c, v) && !is_start[v]) to_body = true;
      }
      // Entered from one end activity: must be enterable from all of them.
      bool entered = false, left = false;
      for (int v = 0; v < n; ++v) {
        entered |= is_end[v] && view.Follows(v, c);
        left |= is_start[v] && view.Follows(c, v);
      }
      for (int v = 0; v < n && !to_body; ++v) {
        if (entered && is_end[v] && !view.Follows(v, c)) to_body = true;
        if (left && is_start[v] && !view.Follows(c, v)) to_body = true;
      }
      if (to_body) break;
    }
    if (to_body) {
      for (int c : g) body[c] = true;
    } else {
      redo.push_back(g);
    }
  }
  if (redo.empty()) return std::nullopt;
  std::vector<int> body_group;
  for (int v = 0; v < n; ++v) {
    if (body[v]) body_group.push_back(v);
  }
  Groups groups{std::move(body_group)};
  groups.insert(groups.end(), redo.begin(), redo.end());
  return groups;
}

struct Cut {
  TreeOperator op;
  Groups groups;
};

std::optional<Cut> FindCut(const DfgView& view) {
  if (auto g = XorCut(view)) return Cut{TreeOperator::kXor, std::move(*g)};
  if (auto g = SequenceCut(view)) {
    return Cut{TreeOperator::kSequence, std::move(*g)};
  }
  if (auto g = ParallelCut(view)) {
    return Cut{TreeOperator::kParallel, std::move(*g)};
  }
  if (auto g = LoopCut(view)) return Cut{TreeOperator::kLoop, std::move(*g)};
  return std::nullopt;
}

// group index per global activity id; -1 for activities outside the view.
std::map<int, int> GroupOf(const DfgView& view, const Groups& groups) {
  std::map<int, int> out;
  for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
    for (int v : groups[g]) out[view.acts[v]] = g;
  }
  return out;
}

int Lookup(const std::map<int, int>& group_of, int activity) {
  auto it = group_of.find(activity);
  return it == group_of.end() ? -1 : it->second;
}

std::vector<SubLog> SplitXor(const SubLog& log, const std::map<int, int>& gof,
                             std::size_t k) {
  std::vector<SubLog> out(k);
  for (const auto& [sequence, count] : log) {
    std::vector<std::size_t> hits(k, 0);
    for (int a : sequence) {
      const int g = Lookup(gof, a);
      if (g >= 0) ++hits[g];
    }
    const std::size_t best =
        std::max_element(hits.begin(), hits.end()) - hits.begin();
    Sequence kept;
    for (int a : sequence) {
      if (Lookup(gof, a) == static_cast<int>(best)) kept.push_back(a);
    }
    out[best][kept] += count;
  }
  return out;
}

std::vector<SubLog> SplitSequence(const SubLog& log,
                                  const std::map<int, int>& gof,
                                  std::size_t k) {
  std::vector<SubLog> out(k);
  for (const auto& [sequence, count] : log) {
    // best[i][j]: events kept among the first i with event i-1 in segment j.
    const std::size_t len = sequence.size();
    std::vector<std::vector<long>> best(len + 1, std::vector<long>(k, -1));
    std::vector<std::vector<int>> from(len + 1, std::vector<int>(k, -1));
    for (std::size_t j = 0; j < k; ++j) best[0][j] = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const int g = Lookup(gof, sequence[i]);
      long running = -1;
      int arg = -1;
      for (std::size_t j = 0; j < k; ++j) {
        if (best[i][j] > running) {
          running = best[i][j];
          arg = static_cast<int>(j);
        }
        best[i + 1][j] = running + (g == static_cast<int>(j) ? 1 : 0);
        from[i + 1][j] = arg;
      }
    }
    std::vector<int> segment(len);
    int j = static_cast<int>(
        std::max_element(best[len].begin(), best[len].end()) -
        best[len].begin());
    for (std::size_t i = len; i > 0; --i) {
      segment[i - 1] = j;
      j = from[i][j];
    }
    std::vector<Sequence> parts(k);
    for (std::size_t i = 0; i < len; ++i) {
      if (Lookup(gof, sequence[i]) == segment[i]) {
        parts[segment[i]].push_back(sequence[i]);
      }
    }
    for (std::size_t g = 0; g < k; ++g) out[g][parts[g]] += count;
  }
  return out;
}

std::vector<SubLog> SplitParallel(const SubLog& log,
                                  const std::map<int, int>& gof,
                                  std::size_t k) {
  std::vector<SubLog> out(k);
  for (const auto& [sequence, count] : log) {
    std::vector<Sequence> parts(k);
    for (int a : sequence) {
      const int g = Lookup(gof, a);
      if (g >= 0) parts[g].push_back(a);
    }
    for (std::size_t g = 0; g < k; ++g) out[g][parts[g]] += count;
  }
  return out;
}

std::vector<SubLog> SplitLoop(const SubLog& log, const std::map<int, int>& gof,
                              std::size_t k) {
  std::vector<SubLog> out(k);
  for (const auto& [sequence, count] : log) {
    // Runs alternate body, redo, body, ...; missing body runs are empty.
    std::vector<std::pair<int, Sequence>> runs;
    for (int a : sequence) {
      const int g = std::max(0, Lookup(gof, a));
      if (runs.empty() || runs.back().first != g) {
        const bool need_body = g != 0 && (runs.empty() || runs.back().first != 0);
        if (need_body) runs.emplace_back(0, Sequence{});
        runs.emplace_back(g, Sequence{});
      }
      runs.back().second.push_back(a);
    }
    if (runs.empty() || runs.back().first != 0) runs.emplace_back(0, Sequence{});
    for (const auto& [g, run] : runs) out[g][run] += count;
  }
  return out;
}

class Miner {
 public:
  Miner(const std::vector<std::string>& names, InductiveVariant variant,
        double noise)
      : names_(names), variant_(variant), noise_(noise) {}

  ProcessTree MineLog(const SubLog& log) {
    std::size_t total = 0, empty = 0;
    for (const auto& [sequence, count] : log) {
      total += count;
      if (sequence.empty()) empty += count;
    }
    if (total == 0 || empty == total) return ProcessTree::Silent();
    if (empty > 0) {
      SubLog rest;
      for (const auto& [sequence, count] : log) {
        if (!sequence.empty()) rest[sequence] = count;
      }
      const bool ignore =
          variant_ == InductiveVariant::kInfrequent &&
          static_cast<double>(empty) < noise_ * static_cast<double>(total);
      if (ignore) return MineLog(rest);
      return ProcessTree::Operator(TreeOperator::kXor,
                                   {ProcessTree::Silent(), MineLog(rest)});
    }

    DfgView view = ViewOfLog(log);
    if (view.n() == 1) {
      bool repeated = false;
      for (const auto& [sequence, count] : log) repeated |= sequence.size() > 1;
      ProcessTree leaf = ProcessTree::Activity(names_[view.acts.front()]);
      if (!repeated) return leaf;
      return ProcessTree::Loop(std::move(leaf), ProcessTree::Silent());
    }

    std::optional<Cut> cut = FindLogCut(view);
    if (!cut) return FallThrough(log, view);

    const std::map<int, int> gof = GroupOf(view, cut->groups);
    const std::size_t k = cut->groups.size();
    std::vector<SubLog> parts;
    switch (cut->op) {
      case TreeOperator::kXor:
        parts = SplitXor(log, gof, k);
        break;
      case TreeOperator::kSequence:
        parts = SplitSequence(log, gof, k);
        break;
      case TreeOperator::kParallel:
        parts = SplitParallel(log, gof, k);
        break;
      default:
        parts = SplitLoop(log, gof, k);
    }
    std::vector<ProcessTree> children;
    for (const SubLog& part : parts) children.push_back(MineLog(part));
    return Assemble(cut->op, std::move(children));
  }

  ProcessTree MineDfg(const DfgView& view) {
    if (view.n() == 0) return ProcessTree::Silent();
    if (view.n() == 1) {
      ProcessTree leaf = ProcessTree::Activity(names_[view.acts.front()]);
      if (!view.Follows(0, 0)) return leaf;
      return ProcessTree::Loop(std::move(leaf), ProcessTree::Silent());
    }
    std::optional<Cut> cut = FindCut(view);
    if (!cut) return Flower(view);
    const Groups& groups = cut->groups;
    const int k = static_cast<int>(groups.size());
    std::vector<int> group_of(view.n(), -1);
    for (int g = 0; g < k; ++g) {
      for (int v : groups[g]) group_of[v] = g;
    }
    std::vector<ProcessTree> children;
    for (int g = 0; g < k; ++g) {
      DfgView sub = Restrict(view, groups[g], group_of, g, cut->op);
      ProcessTree child = MineDfg(sub);
      if (cut->op == TreeOperator::kSequence &&
          Skippable(view, groups, group_of, g)) {
        child = ProcessTree::Operator(TreeOperator::kXor,
                                      {ProcessTree::Silent(), std::move(child)});
      }
      children.push_back(std::move(child));
    }
    return Assemble(cut->op, std::move(children));
  }

 private:
  std::optional<Cut> FindLogCut(const DfgView& view) const {
    std::optional<Cut> cut = FindCut(view);
    if (!cut && variant_ == InductiveVariant::kInfrequent && noise_ > 0.0) {
      cut = FindCut(Filtered(view, noise_));
    }
    return cut;
  }

  // Applied in order when no cut exists; each keeps every trace fitting.
  ProcessTree FallThrough(const SubLog& log, const DfgView& view) {
    // An activity occurring exactly once per trace runs concurrently with
    // the rest.
    for (int a : view.acts) {
      bool once = true;
      for (const auto& [sequence, count] : log) {
        once = once && std::count(sequence.begin(), sequence.end(), a) == 1;
      }
      if (once) return Concurrent(log, a);
    }
    // An activity whose removal exposes a cut runs concurrently with the
    // rest.
    for (int a : view.acts) {
      SubLog rest;
      for (const auto& [sequence, count] : log) {
        Sequence kept;
        for (int e : sequence) {
          if (e != a) kept.push_back(e);
        }
        if (!kept.empty()) rest[kept] += count;
      }
      if (!rest.empty() && FindLogCut(ViewOfLog(rest))) {
        return Concurrent(log, a);
      }
    }
    // Strict tau loop: cut traces where an end activity is directly
    // followed by a start activity.
    if (auto split = SplitTraces(log, [&view](int prev, int next) {
          return view.ends[view.Local(prev)] > 0 &&
                 view.starts[view.Local(next)] > 0;
        })) {
      return ProcessTree::Loop(MineLog(*split), ProcessTree::Silent());
    }
    // Tau loop: cut traces before every start activity.
    if (auto split = SplitTraces(log, [&view](int, int next) {
          return view.starts[view.Local(next)] > 0;
        })) {
      return ProcessTree::Loop(MineLog(*split), ProcessTree::Silent());
    }
    return Flower(view);
  }

  ProcessTree Concurrent(const SubLog& log, int activity) {
    SubLog only, rest;
    for (const auto& [sequence, count] : log) {
      Sequence a, others;
      for (int e : sequence) (e == activity ? a : others).push_back(e);
      only[a] += count;
      rest[others] += count;
    }
    return ProcessTree::Operator(TreeOperator::kParallel,
                                 {MineLog(only), MineLog(rest)});
  }

  // Splits every trace between consecutive events (prev, next) for which
  // `cut_here` holds; nullopt when no trace is split.
  template <typename Pred>
  static std::optional<SubLog> SplitTraces(const SubLog& log, Pred cut_here) {
    SubLog out;
    bool split = false;
    for (const auto& [sequence, count] : log) {
      Sequence part;
      for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (i > 0 && cut_here(sequence[i - 1], sequence[i])) {
          out[part] += count;
          part.clear();
          split = true;
        }
        part.push_back(sequence[i]);
      }
      out[part] += count;
    }
    if (!split) return std::nullopt;
    return out;
  }

  ProcessTree Flower(const DfgView& view) const {
    std::vector<std::string> labels;
    for (int a : view.acts) labels.push_back(names_[a]);
    return FlowerTree(labels);
  }

  static ProcessTree Assemble(TreeOperator op,
                              std::vector<ProcessTree> children) {
    if (op != TreeOperator::kLoop || children.size() == 2) {
      return ProcessTree::Operator(op, std::move(children));
    }
    ProcessTree body = std::move(children.front());
    children.erase(children.begin());
    return ProcessTree::Loop(
        std::move(body),
        ProcessTree::Operator(TreeOperator::kXor, std::move(children)));
  }

  // Sub-DFG of group `g`: internal edges plus start/end activities derived
  // from the parent's start/end sets and edges crossing the group boundary.
  static DfgView Restrict(const DfgView& view, const std::vector<int>& members,
                          const std::vector<int>& group_of, int g,
                          TreeOperator op) {
    std::vector<int> acts;
    for (int v : members) acts.push_back(view.acts[v]);
    DfgView sub;
    sub.Resize(acts);
    const int m = static_cast<int>(members.size());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        sub.edges[i * m + j] = view.Edge(members[i], members[j]);
      }
    }
    for (int i = 0; i < m; ++i) {
      const int v = members[i];
      bool start = view.starts[v] > 0;
      bool end = view.ends[v] > 0;
      if (op != TreeOperator::kXor) {
        for (int w = 0; w < view.n(); ++w) {
          if (group_of[w] == g) continue;
          start |= view.Follows(w, v);
          end |= view.Follows(v, w);
        }
      }
      sub.starts[i] = start ? 1 : 0;
      sub.ends[i] = end ? 1 : 0;
    }
    return sub;
  }

  // True when sequence group `g` can be skipped: an edge jumps over it, or
  // traces may start after it or end before it.
  static bool Skippable(const DfgView& view, const Groups& groups,
                        const std::vector<int>& group_of, int g) {
    for (int v = 0; v < view.n(); ++v) {
      if (group_of[v] > g && view.starts[v] > 0) return true;
      if (group_of[v] < g && view.ends[v] > 0) return true;
      for (int w = 0; w < view.n(); ++w) {
        if (group_of[v] < g && group_of[w] > g && view.Follows(v, w)) {
          return true;
        }
      }
    }
    (void)groups;
    return false;
  }

  const std::vector<std::string>& names_;
  InductiveVariant variant_;
  double noise_;
};

}  // namespace

ProcessTree InductiveTree(const VariantLog& log, InductiveVariant variant,
                          double noise_threshold) {
  if (!(noise_threshold >= 0.0 && noise_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "noise_threshold must lie in [0, 1]");
  }
  SubLog sublog;
  for (const auto& [sequence, count] : log.variants) sublog[sequence] += count;
  Miner miner(log.activities, variant, noise_threshold);
  if (variant != InductiveVariant::kDirect) return miner.MineLog(sublog);

  bool has_empty = false;
  SubLog non_empty;
  for (const auto& [sequence, count] : sublog) {
    if (sequence.empty()) {
      has_empty = true;
    } else {
      non_empty[sequence] = count;
    }
  }
  if (non_empty.empty()) return ProcessTree::Silent();
  ProcessTree tree = miner.MineDfg(ViewOfLog(non_empty));
  if (!has_empty) return tree;
  return ProcessTree::Operator(TreeOperator::kXor,
                               {ProcessTree::Silent(), std::move(tree)});
}

ProcessTree InductiveTree(const EventLog& log, InductiveVariant variant,
                          double noise_threshold) {
  return InductiveTree(VariantLog::FromEventLog(log), variant,
                       noise_threshold);
}

ProcessTree FlowerTree(const std::vector<std::string>& activities) {
  std::vector<ProcessTree> leaves;
  for (const std::string& a : activities) {
    leaves.push_back(ProcessTree::Activity(a));
  }
  if (leaves.empty()) return ProcessTree::Silent();
  ProcessTree choice =
      leaves.size() == 1
          ? std::move(leaves.front())
          : ProcessTree::Operator(TreeOperator::kXor, std::move(leaves));
  return ProcessTree::Loop(ProcessTree::Silent(), std::move(choice));
}

PetriNet FlowerNet(const std::vector<std::string>& activities) {
  return TreeToNet(FlowerTree(activities));
}

}  // namespace pdrec
