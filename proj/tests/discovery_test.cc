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

#include "pdrec/discovery.h"

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "pdrec/corpus.h"
#include "pdrec/error.h"
#include "pdrec/quality.h"
#include "test_util.h"

namespace pdrec {
namespace {

using ::pdrec::testing::LogL1;
using ::pdrec::testing::MakeLog;

using LabelSet = std::set<std::string>;
// A place described by the labels of its input and output transitions.
using PlaceShape = std::pair<LabelSet, LabelSet>;

std::set<PlaceShape> Shapes(const PetriNet& net) {
  std::vector<PlaceShape> shapes(net.num_places());
  for (std::size_t t = 0; t < net.num_transitions(); ++t) {
    const std::string label = net.transition(t).label.value_or("tau");
    for (int p : net.preset(t)) shapes[p].second.insert(label);
    for (int p : net.postset(t)) shapes[p].first.insert(label);
  }
  return {shapes.begin(), shapes.end()};
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kBadRequest;
}

TEST(Alpha, L1HandDerived) {
  const PetriNet net = AlphaSteps(LogL1());
  EXPECT_TRUE(net.IsWorkflowNet());
  EXPECT_EQ(net.num_transitions(), 5);
  // Maximal pairs of the L1 footprint, plus the source and sink places.
  const std::set<PlaceShape> expected = {
      {{}, {"a"}},
      {{"a"}, {"b", "e"}},
      {{"a"}, {"c", "e"}},
      {{"b", "e"}, {"d"}},
      {{"c", "e"}, {"d"}},
      {{"d"}, {}},
  };
  EXPECT_EQ(Shapes(net), expected);
  EXPECT_EQ(net.num_arcs(), 14);
}

TEST(Alpha, SingleCausalPair) {
  const PetriNet net = AlphaSteps(MakeLog({{"a", "b"}}));
  EXPECT_EQ(Shapes(net), (std::set<PlaceShape>{
                             {{}, {"a"}}, {{"a"}, {"b"}}, {{"b"}, {}}}));
}

TEST(Alpha, ParallelPairHasNoConnectingPlace) {
  const PetriNet net = AlphaSteps(MakeLog({{"a", "b"}, {"b", "a"}}));
  for (const auto& [in, out] : Shapes(net)) {
    EXPECT_FALSE(in.count("a") && out.count("b"));
    EXPECT_FALSE(in.count("b") && out.count("a"));
  }
}

TEST(Alpha, ShortLoopFallsBackToSkeleton) {
  const PetriNet net = AlphaSteps(MakeLog({{"a", "b", "b", "c"}, {"a", "c"}}));
  EXPECT_TRUE(net.IsWorkflowNet());
  EXPECT_EQ(Shapes(net), (std::set<PlaceShape>{{{}, {"a"}}, {{"c"}, {}}}));
}

TEST(AlphaPlus, ReattachesSelfLoop) {
  const EventLog log = MakeLog({{"a", "b", "b", "c"}, {"a", "c"}, {"a", "b", "c"}});
  const PetriNet net = AlphaPlus(VariantLog::FromEventLog(log));
  EXPECT_TRUE(net.IsWorkflowNet());
  EXPECT_TRUE(Shapes(net).count({{"a", "b"}, {"b", "c"}}));
  EXPECT_DOUBLE_EQ(FitnessTokenReplay(log, net), 1.0);
}

TEST(Heuristics, DependencyMeasure) {
  DirectlyFollowsGraph dfg;
  dfg.nodes = {"a", "b"};
  dfg.edges[{"a", "b"}] = 5;
  dfg.edges[{"b", "a"}] = 1;
  dfg.edges[{"a", "a"}] = 3;
  EXPECT_DOUBLE_EQ(HeuristicsDependency(dfg, "a", "b"), 4.0 / 7.0);
  EXPECT_DOUBLE_EQ(HeuristicsDependency(dfg, "b", "a"), -4.0 / 7.0);
  EXPECT_DOUBLE_EQ(HeuristicsDependency(dfg, "a", "a"), 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(HeuristicsDependency(dfg, "b", "b"), 0.0);
}

TEST(Heuristics, SequentialLogFitsAndThresholdIsChecked) {
  const EventLog log = MakeLog({{"a", "b", "c"}}, 5);
  const PetriNet net = HeuristicsNet(log);
  EXPECT_TRUE(net.IsWorkflowNet());
  EXPECT_DOUBLE_EQ(FitnessTokenReplay(log, net), 1.0);
  EXPECT_EQ(CodeOf([&] { HeuristicsNet(log, 1.5); }),
            ErrorCode::kInvalidParameter);
}

TEST(Inductive, SequenceOfChoice) {
  const EventLog log = MakeLog({{"a", "b"}, {"a", "c"}});
  EXPECT_EQ(InductiveTree(log, InductiveVariant::kClassic).ToString(),
            "->(a, X(b, c))");
  const PetriNet net = Discover(AlgorithmId::kInductive, log);
  EXPECT_DOUBLE_EQ(FitnessTokenReplay(log, net), 1.0);
  EXPECT_DOUBLE_EQ(PrecisionEscapingEdges(log, net), 1.0);
}

TEST(Inductive, OperatorsRecovered) {
  EXPECT_EQ(InductiveTree(MakeLog({{"a", "b"}, {"b", "a"}}),
                          InductiveVariant::kClassic)
                .ToString(),
            "+(a, b)");
  EXPECT_EQ(InductiveTree(MakeLog({{"a"}, {"a", "b", "a"}}),
                          InductiveVariant::kClassic)
                .ToString(),
            "*(a, b)");
  EXPECT_EQ(InductiveTree(MakeLog({{"a", "a"}, {"a"}}),
                          InductiveVariant::kClassic)
                .ToString(),
            "*(a, tau)");
}

TEST(Inductive, InfrequentDropsRareBehaviour) {
  std::vector<std::vector<std::string>> rows(50, {"a", "b", "c"});
  rows.push_back({"a", "c"});
  const EventLog log = MakeLog(rows);
  EXPECT_EQ(InductiveTree(log, InductiveVariant::kInfrequent, 0.2).ToString(),
            "->(a, b, c)");
  EXPECT_EQ(InductiveTree(log, InductiveVariant::kInfrequent, 0.0).ToString(),
            "->(a, X(tau, b), c)");
  EXPECT_EQ(InductiveTree(log, InductiveVariant::kClassic).ToString(),
            "->(a, X(tau, b), c)");
  EXPECT_EQ(CodeOf([&] { InductiveTree(log, InductiveVariant::kInfrequent, -1); }),
            ErrorCode::kInvalidParameter);
}

TEST(Inductive, FallThroughsBeforeFlower) {
  // b occurs once per trace.
  EXPECT_EQ(InductiveTree(MakeLog({{"b", "c", "a", "a"}, {"c", "a", "a", "b"}}),
                          InductiveVariant::kClassic)
                .ToString(),
            "+(b, ->(c, *(a, tau)))");
  // No cut, but dropping b leaves a parallel cut between a and c.
  EXPECT_EQ(InductiveTree(MakeLog({{"a", "b", "c", "a"}, {"b", "c", "b", "c"}}),
                          InductiveVariant::kClassic)
                .ToString(),
            "+(*(b, tau), +(X(tau, *(a, tau)), *(c, tau)))");
  // End activity b directly followed by start activity a.
  EXPECT_EQ(InductiveTree(MakeLog({{"a", "b", "a", "b"}, {"a", "b"}}),
                          InductiveVariant::kClassic)
                .ToString(),
            "*(->(a, b), tau)");
  // Split before every start activity: {ca, ba x3, c x2}.
  const EventLog loop = MakeLog({{"c", "a", "b", "a", "c"},
                                 {"b", "a", "b", "a", "c"}});
  EXPECT_EQ(InductiveTree(loop, InductiveVariant::kClassic).ToString(),
            "*(->(X(b, c), X(tau, a)), tau)");
  EXPECT_DOUBLE_EQ(
      FitnessTokenReplay(loop, Discover(AlgorithmId::kInductive, loop)), 1.0);
}

TEST(Flower, AcceptsEverything) {
  EXPECT_EQ(FlowerTree({"a", "b"}).ToString(), "*(tau, X(a, b))");
  const PetriNet net = FlowerNet({"a", "b", "c"});
  const EventLog log = MakeLog({{"c", "c", "a"}, {"b"}, {"a", "b", "c"}});
  EXPECT_DOUBLE_EQ(FitnessTokenReplay(log, net), 1.0);
}

TEST(Discover, NamesAndParameters) {
  for (AlgorithmId id : kPortfolio) {
    EXPECT_EQ(ParseAlgorithm(AlgorithmName(id)), id);
  }
  EXPECT_EQ(CodeOf([] { ParseAlgorithm("split"); }),
            ErrorCode::kUnsupportedAlgorithm);
  const EventLog log = LogL1();
  EXPECT_EQ(CodeOf([&] { Discover(AlgorithmId::kAlpha, log, {{"x", 1}}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([&] {
              Discover(AlgorithmId::kHeuristics, log,
                       {{"dependency_threshold", 2}});
            }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(CodeOf([&] {
              Discover(AlgorithmId::kInductive, log, {{"noise_threshold", 0.1}});
            }),
            ErrorCode::kInvalidParameter);
  Discover(AlgorithmId::kInductiveInfrequent, log, {{"noise_threshold", 0.1}});
}

TEST(Discover, WorkflowNetsOnGeneratedLogs) {
  GeneratorConfig config;
  config.seed = 11;
  config.n_logs = 15;
  config.noise = 0.1;
  for (const GeneratedLog& g : GenerateLogs(config)) {
    for (AlgorithmId id : kPortfolio) {
      const PetriNet net = Discover(id, g.log);
      EXPECT_TRUE(net.IsWorkflowNet()) << AlgorithmName(id) << " " << g.log_id;
      EXPECT_EQ(NetToJson(Discover(id, g.log)), NetToJson(net));
    }
  }
}

TEST(Discover, InductiveFitsNoiseFreeLogs) {
  GeneratorConfig config;
  config.seed = 12;
  config.n_logs = 20;
  for (const GeneratedLog& g : GenerateLogs(config)) {
    const PetriNet net = Discover(AlgorithmId::kInductive, g.log);
    EXPECT_NEAR(FitnessTokenReplay(g.log, net), 1.0, 1e-9) << g.log_id;
  }
}

}  // namespace
}  // namespace pdrec
