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

// Block-structured process trees: the intermediate form of the inductive
// miners and the generator behind the synthetic corpus.

#ifndef PDREC_PROCESS_TREE_H_
#define PDREC_PROCESS_TREE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "pdrec/petri_net.h"

namespace pdrec {

enum class TreeOperator { kActivity, kSilent, kSequence, kXor, kParallel, kLoop };

struct ProcessTree {
  TreeOperator kind = TreeOperator::kSilent;
  std::string label;  // only for kActivity
  // kLoop: exactly two children, {do, redo}. Other operators: >= 2.
  std::vector<ProcessTree> children;

  static ProcessTree Activity(std::string label);
  static ProcessTree Silent();
  static ProcessTree Operator(TreeOperator kind,
                              std::vector<ProcessTree> children);
  static ProcessTree Loop(ProcessTree body, ProcessTree redo);

  bool is_leaf() const {
    return kind == TreeOperator::kActivity || kind == TreeOperator::kSilent;
  }
  // Operator levels above the deepest leaf; a leaf has depth 0.
  std::size_t Depth() const;
  std::vector<std::string> Alphabet() const;  // sorted, distinct
  // Throws Error(kInvalidConfig) on arity violations or empty labels.
  void Validate() const;
  // "->(a, X(b, c))" style: -> sequence, X xor, + parallel, * loop.
  std::string ToString() const;

  friend bool operator==(const ProcessTree&, const ProcessTree&) = default;
};

// Compositional translation into a workflow net with places "source" and
// "sink". Sequences chain through intermediate places; exclusive choices
// share entry/exit places with leaf branches and use silent split/join
// transitions around composite branches; parallel blocks use silent AND
// split/join; loops enter and exit through silent transitions and the redo
// part leads back to the body's entry place.
PetriNet TreeToNet(const ProcessTree& tree);

}  // namespace pdrec

#endif  // PDREC_PROCESS_TREE_H_
