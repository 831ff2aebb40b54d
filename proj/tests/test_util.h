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

#ifndef PDREC_TESTS_TEST_UTIL_H_
#define PDREC_TESTS_TEST_UTIL_H_

#include <chrono>
#include <string>
#include <vector>

#include "pdrec/event_log.h"

namespace pdrec::testing {

// One trace per row, repeated `copies` times; events are one minute apart.
inline EventLog MakeLog(const std::vector<std::vector<std::string>>& rows,
                        int copies = 1) {
  std::vector<Trace> traces;
  const Timestamp origin{std::chrono::milliseconds(1577836800000)};
  for (int c = 0; c < copies; ++c) {
    for (const auto& row : rows) {
      Trace trace;
      trace.case_id = "case_" + std::to_string(traces.size() + 1);
      for (std::size_t i = 0; i < row.size(); ++i) {
        trace.events.push_back(
            Event{row[i], origin + std::chrono::minutes(i), {}});
      }
      traces.push_back(std::move(trace));
    }
  }
  return EventLog(std::move(traces));
}

// The classic three-variant example log.
inline EventLog LogL1() {
  return MakeLog({{"a", "b", "c", "d"}, {"a", "c", "b", "d"}, {"a", "e", "d"}});
}

}  // namespace pdrec::testing

#endif  // PDREC_TESTS_TEST_UTIL_H_
