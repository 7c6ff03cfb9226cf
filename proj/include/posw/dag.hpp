// Copyright 2026 The posw-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "posw/node.hpp"

namespace posw {

struct GraphParams {
  unsigned n = 1;
  std::uint64_t N = 3;

  /// Throws InputError unless 1 <= n <= kMaxDepth.
  static GraphParams for_depth(unsigned n);
};

/// 2^{n+1} - 1. Throws InputError for n == 0 or n > kMaxDepth.
std::uint64_t node_count(unsigned n);

/// Internal v: [v0, v1]. Leaf u: u[1..j-1]0 for every j with u[j] = 1,
/// shallowest first.
std::vector<Node> parents(unsigned n, const Node& v);

/// Post-order DFS (left, right, node); every node follows its parents.
std::vector<Node> labeling_order(unsigned n);

/// All leaves {0,1}^n in increasing order.
std::vector<Node> leaves(unsigned n);

}  // namespace posw
