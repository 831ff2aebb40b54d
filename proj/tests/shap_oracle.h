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

#ifndef PDREC_TESTS_SHAP_ORACLE_H_
#define PDREC_TESTS_SHAP_ORACLE_H_

#include <vector>

#include "pdrec/learner.h"

namespace pdrec::testing {

// E[f(x) | features in `mask` fixed to x], other features marginalized by
// training cover.
inline double Conditional(const RegressionTree& tree, int node,
                          const std::vector<double>& x, unsigned mask) {
  const TreeNode& n = tree.nodes[node];
  if (n.is_leaf()) return n.value;
  if (mask & (1u << n.feature)) {
    return Conditional(tree, x[n.feature] < n.threshold ? n.left : n.right, x,
                       mask);
  }
  const TreeNode& l = tree.nodes[n.left];
  const TreeNode& r = tree.nodes[n.right];
  return (l.cover * Conditional(tree, n.left, x, mask) +
          r.cover * Conditional(tree, n.right, x, mask)) /
         n.cover;
}

// Exact Shapley values by enumerating every subset of the x.size() features.
inline std::vector<double> BruteForceShapley(const RegressionTree& tree,
                                             const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  std::vector<double> fact(m + 1, 1.0);
  for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * i;
  std::vector<double> phi(m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (unsigned s = 0; s < (1u << m); ++s) {
      if (s & (1u << i)) continue;
      const int size = __builtin_popcount(s);
      const double w = fact[size] * fact[m - size - 1] / fact[m];
      phi[i] += w * (Conditional(tree, 0, x, s | (1u << i)) -
                     Conditional(tree, 0, x, s));
    }
  }
  return phi;
}

}  // namespace pdrec::testing

#endif  // PDREC_TESTS_SHAP_ORACLE_H_
