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

#include "pdrec/event_log.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "pdrec/error.h"

namespace pdrec {

EventLog::EventLog(std::vector<Trace> traces, AttributeMap attributes)
    : traces_(std::move(traces)), attributes_(std::move(attributes)) {
  if (traces_.empty()) {
    throw Error(ErrorCode::kEmptyLog, "event log contains no traces");
  }
  std::set<std::string_view> case_ids;
  for (Trace& trace : traces_) {
    if (trace.events.empty()) {
      throw Error(ErrorCode::kInvalidLog,
                  "trace '" + trace.case_id + "' has no events");
    }
    if (!case_ids.insert(trace.case_id).second) {
      throw Error(ErrorCode::kInvalidLog,
                  "duplicate case id '" + trace.case_id + "'");
    }
    for (const Event& event : trace.events) {
      if (event.activity.empty()) {
        throw Error(ErrorCode::kInvalidLog,
                    "empty activity in trace '" + trace.case_id + "'");
      }
    }
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const Event& a, const Event& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
}

std::size_t EventLog::num_events() const {
  std::size_t total = 0;
  for (const Trace& trace : traces_) total += trace.events.size();
  return total;
}

ActivitySequence EventLog::Sequence(std::size_t i) const {
  ActivitySequence sequence;
  sequence.reserve(traces_[i].events.size());
  for (const Event& event : traces_[i].events) {
    sequence.push_back(event.activity);
  }
  return sequence;
}

std::vector<std::string> EventLog::Activities() const {
  std::set<std::string> activities;
  for (const Trace& trace : traces_) {
    for (const Event& event : trace.events) activities.insert(event.activity);
  }
  return {activities.begin(), activities.end()};
}

std::map<ActivitySequence, std::size_t> Variants(const EventLog& log) {
  std::map<ActivitySequence, std::size_t> variants;
  for (std::size_t i = 0; i < log.num_traces(); ++i) {
    ++variants[log.Sequence(i)];
  }
  return variants;
}

std::size_t DirectlyFollowsGraph::EdgeCount(const std::string& from,
                                            const std::string& to) const {
  auto it = edges.find({from, to});
  return it == edges.end() ? 0 : it->second;
}

DirectlyFollowsGraph ComputeDfg(const EventLog& log) {
  DirectlyFollowsGraph dfg;
  for (const Trace& trace : log.traces()) {
    const auto& events = trace.events;
    for (std::size_t i = 0; i < events.size(); ++i) {
      dfg.nodes.insert(events[i].activity);
      if (i + 1 < events.size()) {
        ++dfg.edges[{events[i].activity, events[i + 1].activity}];
      }
    }
    ++dfg.start_activities[events.front().activity];
    ++dfg.end_activities[events.back().activity];
  }
  return dfg;
}

std::string_view RelationSymbol(Relation relation) {
  switch (relation) {
    case Relation::kSequence:
      return "->";
    case Relation::kReverseSequence:
      return "<-";
    case Relation::kParallel:
      return "||";
    case Relation::kChoice:
      return "#";
  }
  return "?";
}

FootprintMatrix::FootprintMatrix(std::vector<std::string> activities,
                                 const std::vector<bool>& follows)
    : activities_(std::move(activities)) {
  const std::size_t n = activities_.size();
  relations_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool ab = follows[i * n + j];
      const bool ba = follows[j * n + i];
      Relation r = Relation::kChoice;
      if (ab && ba) {
        r = Relation::kParallel;
      } else if (ab) {
        r = Relation::kSequence;
      } else if (ba) {
        r = Relation::kReverseSequence;
      }
      relations_[i * n + j] = r;
    }
  }
}

Relation FootprintMatrix::At(std::string_view a, std::string_view b) const {
  auto index_of = [this](std::string_view name) {
    auto it = std::lower_bound(activities_.begin(), activities_.end(), name);
    if (it == activities_.end() || *it != name) {
      throw Error(ErrorCode::kInvalidLog,
                  "activity '" + std::string(name) + "' not in footprint");
    }
    return static_cast<std::size_t>(it - activities_.begin());
  };
  return At(index_of(a), index_of(b));
}

FootprintMatrix ComputeFootprint(const DirectlyFollowsGraph& dfg) {
  std::vector<std::string> activities(dfg.nodes.begin(), dfg.nodes.end());
  const std::size_t n = activities.size();
  std::vector<bool> follows(n * n, false);
  auto index_of = [&](const std::string& name) {
    return static_cast<std::size_t>(
        std::lower_bound(activities.begin(), activities.end(), name) -
        activities.begin());
  };
  for (const auto& [edge, count] : dfg.edges) {
    follows[index_of(edge.first) * n + index_of(edge.second)] = true;
  }
  return FootprintMatrix(std::move(activities), follows);
}

FootprintMatrix ComputeFootprint(const EventLog& log) {
  return ComputeFootprint(ComputeDfg(log));
}

VariantLog VariantLog::FromEventLog(const EventLog& log) {
  VariantLog result;
  result.activities = log.Activities();
  std::map<std::vector<int>, std::size_t> counts;
  for (const Trace& trace : log.traces()) {
    std::vector<int> ids;
    ids.reserve(trace.events.size());
    for (const Event& event : trace.events) {
      ids.push_back(result.ActivityId(event.activity));
    }
    ++counts[std::move(ids)];
  }
  result.variants.assign(counts.begin(), counts.end());
  return result;
}

std::size_t VariantLog::num_traces() const {
  std::size_t total = 0;
  for (const auto& [sequence, count] : variants) total += count;
  return total;
}

int VariantLog::ActivityId(std::string_view name) const {
  auto it = std::lower_bound(activities.begin(), activities.end(), name);
  if (it == activities.end() || *it != name) return -1;
  return static_cast<int>(it - activities.begin());
}

}  // namespace pdrec
