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

#include "pdrec/process_tree.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "pdrec/error.h"

namespace pdrec {
namespace {

void CollectAlphabet(const ProcessTree& tree, std::set<std::string>* out) {
  if (tree.kind == TreeOperator::kActivity) out->insert(tree.label);
  for (const ProcessTree& child : tree.children) CollectAlphabet(child, out);
}

class NetBuilder {
 public:
  PetriNet Build(const ProcessTree& tree) {
    const int source = net_.AddPlace("source");
    const int sink = net_.AddPlace("sink");
    Translate(tree, source, sink);
    net_.SetInitialMarking({{"source", 1}});
    net_.SetFinalMarking({{"sink", 1}});
    return std::move(net_);
  }

 private:
  int NewPlace() { return net_.AddPlace("p" + std::to_string(++places_)); }

  int NewTransition(const ProcessTree* leaf) {
    if (leaf != nullptr && leaf->kind == TreeOperator::kActivity) {
      return net_.AddTransition("t" + std::to_string(++transitions_),
                                leaf->label);
    }
    return net_.AddTransition("tau" + std::to_string(++silent_), std::nullopt);
  }

  int Connect(const ProcessTree* leaf, int in, int out) {
    const int t = NewTransition(leaf);
    net_.AddInputArc(in, t);
    net_.AddOutputArc(t, out);
    return t;
  }

  void Translate(const ProcessTree& tree, int in, int out) {
    switch (tree.kind) {
      case TreeOperator::kActivity:
      case TreeOperator::kSilent:
        Connect(&tree, in, out);
        return;
      case TreeOperator::kSequence: {
        int current = in;
        for (std::size_t i = 0; i < tree.children.size(); ++i) {
          const int next = i + 1 == tree.children.size() ? out : NewPlace();
          Translate(tree.children[i], current, next);
          current = next;
        }
        return;
      }
      case TreeOperator::kXor:
        for (const ProcessTree& child : tree.children) {
          if (child.is_leaf()) {
            Connect(&child, in, out);
            continue;
          }
          const int child_in = NewPlace();
          const int child_out = NewPlace();
          Connect(nullptr, in, child_in);
          Translate(child, child_in, child_out);
          Connect(nullptr, child_out, out);
        }
        return;
      case TreeOperator::kParallel: {
        const int split = NewTransition(nullptr);
        const int join = NewTransition(nullptr);
        net_.AddInputArc(in, split);
        net_.AddOutputArc(join, out);
        for (const ProcessTree& child : tree.children) {
          const int child_in = NewPlace();
          const int child_out = NewPlace();
          net_.AddOutputArc(split, child_in);
          net_.AddInputArc(child_out, join);
          Translate(child, child_in, child_out);
        }
        return;
      }
      case TreeOperator::kLoop: {
        const int body_in = NewPlace();
        const int body_out = NewPlace();
        Connect(nullptr, in, body_in);
        Translate(tree.children[0], body_in, body_out);
        Translate(tree.children[1], body_out, body_in);
        Connect(nullptr, body_out, out);
        return;
      }
    }
  }

  PetriNet net_;
  int places_ = 0;
  int transitions_ = 0;
  int silent_ = 0;
};

}  // namespace

ProcessTree ProcessTree::Activity(std::string label) {
  ProcessTree tree;
  tree.kind = TreeOperator::kActivity;
  tree.label = std::move(label);
  return tree;
}

ProcessTree ProcessTree::Silent() { return ProcessTree{}; }

ProcessTree ProcessTree::Operator(TreeOperator kind,
                                  std::vector<ProcessTree> children) {
  ProcessTree tree;
  tree.kind = kind;
  tree.children = std::move(children);
  return tree;
}

ProcessTree ProcessTree::Loop(ProcessTree body, ProcessTree redo) {
  std::vector<ProcessTree> children;
  children.push_back(std::move(body));
  children.push_back(std::move(redo));
  return Operator(TreeOperator::kLoop, std::move(children));
}

std::size_t ProcessTree::Depth() const {
  std::size_t deepest = 0;
  for (const ProcessTree& child : children) {
    deepest = std::max(deepest, child.Depth());
  }
  return is_leaf() ? 0 : deepest + 1;
}

std::vector<std::string> ProcessTree::Alphabet() const {
  std::set<std::string> labels;
  CollectAlphabet(*this, &labels);
  return {labels.begin(), labels.end()};
}

void ProcessTree::Validate() const {
  switch (kind) {
    case TreeOperator::kActivity:
      if (label.empty() || !children.empty()) {
        throw Error(ErrorCode::kInvalidConfig, "malformed activity leaf");
      }
      return;
    case TreeOperator::kSilent:
      if (!children.empty()) {
        throw Error(ErrorCode::kInvalidConfig, "silent leaf with children");
      }
      return;
    case TreeOperator::kLoop:
      if (children.size() != 2) {
        throw Error(ErrorCode::kInvalidConfig, "loop needs exactly 2 children");
      }
      break;
    default:
      if (children.size() < 2) {
        throw Error(ErrorCode::kInvalidConfig, "operator needs >= 2 children");
      }
  }
  for (const ProcessTree& child : children) child.Validate();
}

std::string ProcessTree::ToString() const {
  switch (kind) {
    case TreeOperator::kActivity:
      return label;
    case TreeOperator::kSilent:
      return "tau";
    default:
      break;
  }
  std::string op;
  switch (kind) {
    case TreeOperator::kSequence:
      op = "->";
      break;
    case TreeOperator::kXor:
      op = "X";
      break;
    case TreeOperator::kParallel:
      op = "+";
      break;
    default:
      op = "*";
  }
  std::string out = op + "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0) out += ", ";
    out += children[i].ToString();
  }
  return out + ")";
}

PetriNet TreeToNet(const ProcessTree& tree) {
  tree.Validate();
  return NetBuilder().Build(tree);
}

}  // namespace pdrec
