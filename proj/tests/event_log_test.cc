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

#include <string>

#include "gtest/gtest.h"
#include "pdrec/error.h"
#include "pdrec/xes.h"
#include "test_util.h"

namespace pdrec {
namespace {

using ::pdrec::testing::LogL1;
using ::pdrec::testing::MakeLog;

constexpr char kSmallXes[] = R"(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0">
  <string key="concept:name" value="demo"/>
  <trace>
    <string key="concept:name" value="c1"/>
    <event>
      <string key="concept:name" value="b"/>
      <date key="time:timestamp" value="2020-01-01T10:05:00.000+00:00"/>
      <int key="cost" value="7"/>
    </event>
    <event>
      <string key="concept:name" value="a"/>
      <date key="time:timestamp" value="2020-01-01T11:00:00+01:00"/>
    </event>
  </trace>
  <trace>
    <string key="concept:name" value="c2"/>
    <event>
      <string key="concept:name" value="a"/>
      <date key="time:timestamp" value="2020-01-02T00:00:00Z"/>
    </event>
  </trace>
</log>
)";

ErrorCode ParseError(const std::string& text) {
  try {
    ParseXes(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorCode::kBadRequest;
}

TEST(EventLog, VariantsAndCounts) {
  const EventLog log = MakeLog({{"a", "b"}, {"a", "b"}, {"a", "b", "c"}});
  EXPECT_EQ(log.num_traces(), 3);
  EXPECT_EQ(log.num_events(), 7);
  const auto variants = Variants(log);
  ASSERT_EQ(variants.size(), 2);
  EXPECT_EQ(variants.at({"a", "b"}), 2);
  EXPECT_EQ(variants.at({"a", "b", "c"}), 1);
  EXPECT_EQ(log.Activities(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(EventLog, RejectsInvalidLogs) {
  try {
    EventLog empty({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyLog);
  }
  std::vector<Trace> dup(2);
  dup[0].case_id = dup[1].case_id = "x";
  dup[0].events = dup[1].events = {Event{"a", {}, {}}};
  try {
    EventLog bad(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidLog);
  }
}

TEST(Dfg, HandCountedExample) {
  const DirectlyFollowsGraph dfg = ComputeDfg(MakeLog({{"a", "b", "c"}, {"a", "c"}}));
  EXPECT_EQ(dfg.edges.size(), 3);
  EXPECT_EQ(dfg.EdgeCount("a", "b"), 1);
  EXPECT_EQ(dfg.EdgeCount("b", "c"), 1);
  EXPECT_EQ(dfg.EdgeCount("a", "c"), 1);
  EXPECT_EQ(dfg.EdgeCount("c", "a"), 0);
  EXPECT_EQ(dfg.start_activities.at("a"), 2);
  EXPECT_EQ(dfg.end_activities.at("c"), 2);
  EXPECT_EQ(dfg.start_activities.size(), 1);
}

TEST(Dfg, StartAndEndCountsMatchTraces) {
  const EventLog log = LogL1();
  const DirectlyFollowsGraph dfg = ComputeDfg(log);
  std::size_t starts = 0, ends = 0;
  for (const auto& [a, n] : dfg.start_activities) starts += n;
  for (const auto& [a, n] : dfg.end_activities) ends += n;
  EXPECT_EQ(starts, log.num_traces());
  EXPECT_EQ(ends, log.num_traces());
}

TEST(Footprint, Relations) {
  const FootprintMatrix fp = ComputeFootprint(MakeLog({{"a", "b"}}));
  EXPECT_EQ(fp.At("a", "b"), Relation::kSequence);
  EXPECT_EQ(fp.At("b", "a"), Relation::kReverseSequence);
  EXPECT_EQ(fp.At("a", "a"), Relation::kChoice);
  EXPECT_EQ(fp.At("b", "b"), Relation::kChoice);
  EXPECT_EQ(ComputeFootprint(MakeLog({{"a", "b"}, {"b", "a"}})).At("a", "b"),
            Relation::kParallel);
  EXPECT_EQ(ComputeFootprint(MakeLog({{"a"}, {"b"}})).At("a", "b"),
            Relation::kChoice);
}

TEST(Footprint, L1Oracle) {
  const FootprintMatrix fp = ComputeFootprint(LogL1());
  EXPECT_EQ(fp.At("a", "b"), Relation::kSequence);
  EXPECT_EQ(fp.At("a", "c"), Relation::kSequence);
  EXPECT_EQ(fp.At("a", "e"), Relation::kSequence);
  EXPECT_EQ(fp.At("b", "c"), Relation::kParallel);
  EXPECT_EQ(fp.At("b", "e"), Relation::kChoice);
  EXPECT_EQ(fp.At("e", "d"), Relation::kSequence);
  EXPECT_EQ(fp.At("d", "b"), Relation::kReverseSequence);
  EXPECT_EQ(fp.At("a", "d"), Relation::kChoice);
  // Antisymmetry of -> and <-, symmetry of || and #.
  for (std::size_t i = 0; i < fp.size(); ++i) {
    for (std::size_t j = 0; j < fp.size(); ++j) {
      const Relation r = fp.At(i, j), s = fp.At(j, i);
      if (r == Relation::kSequence) EXPECT_EQ(s, Relation::kReverseSequence);
      if (r == Relation::kParallel || r == Relation::kChoice) EXPECT_EQ(r, s);
    }
  }
  try {
    fp.At("a", "zz");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidLog);
  }
}

TEST(VariantLog, InternsActivities) {
  const VariantLog v = VariantLog::FromEventLog(
      MakeLog({{"b", "a"}, {"b", "a"}, {"c"}}));
  EXPECT_EQ(v.activities, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(v.num_traces(), 3);
  EXPECT_EQ(v.variants.size(), 2);
  EXPECT_EQ(v.ActivityId("c"), 2);
  EXPECT_EQ(v.ActivityId("zz"), -1);
}

TEST(Xes, ParsesAndSortsByTimestamp) {
  const EventLog log = ParseXes(kSmallXes);
  ASSERT_EQ(log.num_traces(), 2);
  // 11:00+01:00 is 10:00Z, before 10:05Z.
  EXPECT_EQ(log.Sequence(0), (ActivitySequence{"a", "b"}));
  EXPECT_EQ(log.traces()[0].case_id, "c1");
  EXPECT_EQ(std::get<std::int64_t>(log.traces()[0].events[1].attributes.at("cost")),
            7);
}

TEST(Xes, RoundTripAndGzip) {
  const EventLog log = ParseXes(kSmallXes);
  const std::string written = WriteXes(log);
  const EventLog again = ParseXes(written);
  EXPECT_EQ(WriteXes(again), written);
  const std::string packed = GzipCompress(written);
  EXPECT_TRUE(IsGzip(packed));
  EXPECT_EQ(GzipDecompress(packed), written);
  EXPECT_EQ(WriteXes(ParseXes(packed)), written);
}

TEST(Xes, Errors) {
  EXPECT_EQ(ParseError("<log><trace>"), ErrorCode::kMalformedXml);
  EXPECT_EQ(ParseError("not xml"), ErrorCode::kMalformedXml);
  EXPECT_EQ(ParseError("<log></log>"), ErrorCode::kEmptyLog);
  EXPECT_EQ(ParseError(R"(<log><trace><event>
      <date key="time:timestamp" value="2020-01-01T00:00:00Z"/>
      </event></trace></log>)"),
            ErrorCode::kMissingActivity);
  EXPECT_EQ(ParseError(R"(<log><trace><event>
      <string key="concept:name" value="a"/></event></trace></log>)"),
            ErrorCode::kMissingTimestamp);
  EXPECT_EQ(ParseError(R"(<log><trace><event>
      <string key="concept:name" value="a"/>
      <date key="time:timestamp" value="yesterday"/></event></trace></log>)"),
            ErrorCode::kInvalidTimestamp);
}

TEST(Xes, TimestampFormat) {
  const auto ts = ParseIsoTimestamp("2020-02-29T23:59:59.5Z");
  ASSERT_TRUE(ts.has_value());
  EXPECT_EQ(FormatIsoTimestamp(*ts), "2020-02-29T23:59:59.500+00:00");
  EXPECT_EQ(FormatIsoTimestamp(*ParseIsoTimestamp("2020-03-01T01:00:00+02:00")),
            "2020-02-29T23:00:00.000+00:00");
  EXPECT_FALSE(ParseIsoTimestamp("2020-13-01T00:00:00Z").has_value());
}

}  // namespace
}  // namespace pdrec
