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

#include "pdrec/petri_net.h"

#include <algorithm>
#include <string>

#include "gtest/gtest.h"
#include "pdrec/error.h"
#include "pdrec/process_tree.h"

namespace pdrec {
namespace {

PetriNet Serial() {
  PetriNet net;
  net.AddPlace("p0");
  net.AddPlace("p1");
  net.AddPlace("p2");
  net.AddTransition("ta", "a");
  net.AddTransition("tb", "b");
  net.AddArc("p0", "ta");
  net.AddArc("ta", "p1");
  net.AddArc("p1", "tb");
  net.AddArc("tb", "p2");
  net.SetInitialMarking({{"p0", 1}});
  net.SetFinalMarking({{"p2", 1}});
  return net;
}

TEST(PetriNet, TokenGame) {
  const PetriNet net = Serial();
  net.Validate();
  EXPECT_TRUE(net.IsWorkflowNet());
  Marking m = net.initial_marking();
  EXPECT_EQ(EnabledTransitions(net, m), std::vector<int>{0});
  try {
    Fire(net, m, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotEnabled);
  }
  m = Fire(net, m, 0);
  EXPECT_EQ(m[1], 1);
  EXPECT_EQ(m.Total(), 1);
  m = Fire(net, m, 1);
  EXPECT_EQ(m, net.final_marking());
  EXPECT_TRUE(EnabledTransitions(net, m).empty());
}

TEST(PetriNet, ConstructionErrors) {
  PetriNet net;
  net.AddPlace("p");
  net.AddTransition("t", std::nullopt);
  auto code = [&](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kBadRequest;
  };
  EXPECT_EQ(code([&] { net.AddPlace("t"); }), ErrorCode::kInvalidNet);
  EXPECT_EQ(code([&] { net.AddArc("p", "p"); }), ErrorCode::kInvalidNet);
  EXPECT_EQ(code([&] { net.AddArc("p", "missing"); }), ErrorCode::kInvalidNet);
  EXPECT_EQ(code([&] { net.SetInitialMarking({{"q", 1}}); }),
            ErrorCode::kInvalidNet);
  EXPECT_EQ(code([&] { net.Validate(); }), ErrorCode::kInvalidNet);
  net.AddArc("p", "t");
  net.AddArc("p", "t");
  EXPECT_EQ(net.num_arcs(), 1);
}

TEST(PetriNet, JsonRoundTrip) {
  const PetriNet net = TreeToNet(ProcessTree::Operator(
      TreeOperator::kSequence,
      {ProcessTree::Activity("a"),
       ProcessTree::Operator(TreeOperator::kParallel,
                             {ProcessTree::Activity("b"),
                              ProcessTree::Activity("c")})}));
  const nlohmann::json j = NetToJson(net);
  const PetriNet back = NetFromJson(j);
  EXPECT_EQ(NetToJson(back), j);
  EXPECT_EQ(ToDot(back), ToDot(net));
}

TEST(PetriNet, DotShapes) {
  PetriNet net = Serial();
  net.AddTransition("tau", std::nullopt);
  const std::string dot = ToDot(net);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("shape=box"), std::string::npos);
  EXPECT_NE(dot.find("shape=circle"), std::string::npos);
  EXPECT_NE(dot.find("\"p0\" -> \"ta\""), std::string::npos);
  EXPECT_NE(dot.find("filled"), std::string::npos);
}

// Labels reachable by firing labeled transitions from the initial marking,
// exploring silent moves exhaustively; enough for the small nets below.
bool Accepts(const PetriNet& net, const std::vector<std::string>& trace) {
  std::vector<Marking> frontier = {net.initial_marking()};
  auto closure = [&](std::vector<Marking> ms) {
    for (std::size_t i = 0; i < ms.size() && ms.size() < 10000; ++i) {
      for (int t : EnabledTransitions(net, ms[i])) {
        if (!net.transition(t).silent()) continue;
        Marking next = Fire(net, ms[i], t);
        if (std::find(ms.begin(), ms.end(), next) == ms.end()) {
          ms.push_back(next);
        }
      }
    }
    return ms;
  };
  frontier = closure(frontier);
  for (const std::string& label : trace) {
    std::vector<Marking> next;
    for (const Marking& m : frontier) {
      for (int t : EnabledTransitions(net, m)) {
        if (net.transition(t).label == label) next.push_back(Fire(net, m, t));
      }
    }
    frontier = closure(next);
  }
  return std::find(frontier.begin(), frontier.end(), net.final_marking()) !=
         frontier.end();
}

TEST(TreeToNet, LanguageOfOperators) {
  using T = ProcessTree;
  const PetriNet xor_net = TreeToNet(
      T::Operator(TreeOperator::kXor, {T::Activity("b"), T::Activity("c")}));
  EXPECT_TRUE(xor_net.IsWorkflowNet());
  EXPECT_TRUE(Accepts(xor_net, {"b"}));
  EXPECT_TRUE(Accepts(xor_net, {"c"}));
  EXPECT_FALSE(Accepts(xor_net, {"b", "c"}));

  const PetriNet par = TreeToNet(T::Operator(
      TreeOperator::kParallel, {T::Activity("a"), T::Activity("b")}));
  EXPECT_TRUE(Accepts(par, {"a", "b"}));
  EXPECT_TRUE(Accepts(par, {"b", "a"}));
  EXPECT_FALSE(Accepts(par, {"a"}));

  const PetriNet loop = TreeToNet(T::Loop(T::Activity("a"), T::Activity("r")));
  EXPECT_TRUE(Accepts(loop, {"a"}));
  EXPECT_TRUE(Accepts(loop, {"a", "r", "a"}));
  EXPECT_FALSE(Accepts(loop, {"a", "r"}));

  const PetriNet skip = TreeToNet(
      T::Operator(TreeOperator::kSequence,
                  {T::Activity("a"),
                   T::Operator(TreeOperator::kXor,
                               {T::Silent(), T::Activity("b")})}));
  EXPECT_TRUE(Accepts(skip, {"a"}));
  EXPECT_TRUE(Accepts(skip, {"a", "b"}));
}

TEST(ProcessTree, DepthAlphabetAndValidation) {
  using T = ProcessTree;
  const T tree = T::Operator(
      TreeOperator::kSequence,
      {T::Activity("b"),
       T::Operator(TreeOperator::kXor, {T::Activity("a"), T::Silent()})});
  EXPECT_EQ(tree.Depth(), 2);
  EXPECT_EQ(tree.Alphabet(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(tree.ToString(), "->(b, X(a, tau))");
  T bad = T::Operator(TreeOperator::kXor, {T::Activity("a"), T::Activity("b")});
  bad.children.pop_back();
  EXPECT_THROW(bad.Validate(), Error);
}

}  // namespace
}  // namespace pdrec
