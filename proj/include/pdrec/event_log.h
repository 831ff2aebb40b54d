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

// In-memory event log model and the behavioral abstractions derived from it:
// trace variants, the directly-follows graph and the footprint matrix.

#ifndef PDREC_EVENT_LOG_H_
#define PDREC_EVENT_LOG_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pdrec {

// UTC time point with millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

using AttributeValue =
    std::variant<std::string, std::int64_t, double, bool, Timestamp>;
using AttributeMap = std::map<std::string, AttributeValue>;

// Activity and timestamp are held in dedicated fields; `attributes` carries
// every other scalar attribute of the event.
struct Event {
  std::string activity;
  Timestamp timestamp;
  AttributeMap attributes;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;
};

using ActivitySequence = std::vector<std::string>;

class EventLog {
 public:
  // Validates the invariants (at least one trace, non-empty traces with
  // non-empty activities, unique case ids) and stably sorts the events of
  // every trace by timestamp. Throws Error(kEmptyLog) for zero traces and
  // Error(kInvalidLog) for other violations.
  explicit EventLog(std::vector<Trace> traces, AttributeMap attributes = {});

  const std::vector<Trace>& traces() const { return traces_; }
  const AttributeMap& attributes() const { return attributes_; }

  std::size_t num_traces() const { return traces_.size(); }
  std::size_t num_events() const;

  // The activity labels of trace `i`, in order.
  ActivitySequence Sequence(std::size_t i) const;

  // The sorted set of activity labels occurring in the log.
  std::vector<std::string> Activities() const;

 private:
  std::vector<Trace> traces_;
  AttributeMap attributes_;
};

// Distinct activity sequences with their trace counts.
std::map<ActivitySequence, std::size_t> Variants(const EventLog& log);

struct DirectlyFollowsGraph {
  std::set<std::string> nodes;
  std::map<std::pair<std::string, std::string>, std::size_t> edges;
  std::map<std::string, std::size_t> start_activities;
  std::map<std::string, std::size_t> end_activities;

  std::size_t EdgeCount(const std::string& from, const std::string& to) const;
};

DirectlyFollowsGraph ComputeDfg(const EventLog& log);

enum class Relation {
  kSequence,         // a -> b
  kReverseSequence,  // a <- b
  kParallel,         // a || b
  kChoice,           // a # b
};

std::string_view RelationSymbol(Relation relation);

class FootprintMatrix {
 public:
  FootprintMatrix() = default;
  // `follows[i * n + j]` is true iff activity i is directly followed by j
  // somewhere in the log.
  FootprintMatrix(std::vector<std::string> activities,
                  const std::vector<bool>& follows);

  const std::vector<std::string>& activities() const { return activities_; }
  std::size_t size() const { return activities_.size(); }

  Relation At(std::size_t i, std::size_t j) const {
    return relations_[i * activities_.size() + j];
  }
  // Throws Error(kInvalidLog) when either activity is unknown.
  Relation At(std::string_view a, std::string_view b) const;

 private:
  std::vector<std::string> activities_;
  std::vector<Relation> relations_;
};

FootprintMatrix ComputeFootprint(const EventLog& log);
FootprintMatrix ComputeFootprint(const DirectlyFollowsGraph& dfg);

// A multiset of traces over interned activity ids. This is the working
// representation for discovery and replay: identical traces are collapsed
// into one entry with a multiplicity.
struct VariantLog {
  std::vector<std::string> activities;  // sorted; index = activity id
  std::vector<std::pair<std::vector<int>, std::size_t>> variants;

  static VariantLog FromEventLog(const EventLog& log);

  std::size_t num_traces() const;
  int ActivityId(std::string_view name) const;  // -1 when absent
};

}  // namespace pdrec

#endif  // PDREC_EVENT_LOG_H_
