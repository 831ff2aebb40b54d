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

#ifndef PDREC_SRC_GRAPH_UTIL_H_
#define PDREC_SRC_GRAPH_UTIL_H_

#include <algorithm>
#include <functional>
#include <vector>

namespace pdrec::internal {

// Strongly connected components (iterative Tarjan). Returns the component
// id of every node; ids are assigned in reverse topological order of the
// condensation.
inline std::vector<int> StronglyConnectedComponents(
    const std::vector<std::vector<int>>& successors, int* num_components) {
  const int n = static_cast<int>(successors.size());
  std::vector<int> index(n, -1), low(n, 0), component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  int count = 0;
  struct Frame {
    int node;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& frame = call.back();
      const int v = frame.node;
      if (frame.edge < successors[v].size()) {
        const int w = successors[v][frame.edge++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = count;
          if (w == v) break;
        }
        ++count;
      }
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().node;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  if (num_components != nullptr) *num_components = count;
  return component;
}

// Connected components of an undirected graph given as adjacency lists.
// Component ids follow the order of the smallest node in each component.
inline std::vector<int> ConnectedComponents(
    const std::vector<std::vector<int>>& neighbours, int* num_components) {
  const int n = static_cast<int>(neighbours.size());
  std::vector<int> component(n, -1);
  int count = 0;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::vector<int> pending{start};
    component[start] = count;
    while (!pending.empty()) {
      const int v = pending.back();
      pending.pop_back();
      for (int w : neighbours[v]) {
        if (component[w] < 0) {
          component[w] = count;
          pending.push_back(w);
        }
      }
    }
    ++count;
  }
  if (num_components != nullptr) *num_components = count;
  return component;
}

}  // namespace pdrec::internal

#endif  // PDREC_SRC_GRAPH_UTIL_H_
