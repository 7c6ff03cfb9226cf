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
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "posw/dag.hpp"
#include "posw/hgraph.hpp"
#include "posw/oracle.hpp"

namespace posw {

enum class Color { kRed, kGreen };

struct NodeColoring {
  /// nullopt is ⊥ (never reached by the recursion).
  std::optional<Bits> label;
  Color color = Color::kRed;
  /// The database input chosen as this node's preimage, if one was used.
  std::optional<Bits> preimage;
};

/// Output of the recursive subtree coloring: only the nodes it touched.
using SubtreeColoring = std::map<Node, NodeColoring>;

struct ColoredTree {
  unsigned n = 0;
  unsigned lambda = 0;
  Bits chi;
  /// Indexed by heap index; slot 0 unused.
  std::vector<NodeColoring> nodes;
  /// (parent, child) pairs of G_n in the dag module's parent order.
  std::vector<std::pair<Node, Node>> edges;

  const NodeColoring& at(const Node& v) const { return nodes.at(v.heap_index()); }
  NodeColoring& at(const Node& v) { return nodes.at(v.heap_index()); }
  Color color(const Node& v) const { return at(v).color; }

  /// All nodes red with label ⊥, edges attached.
  static ColoredTree blank(unsigned n, unsigned lambda, Bits chi);
};

/// Maps each y to its preimages in increasing lexicographic order.
class PreimageIndex {
 public:
  explicit PreimageIndex(const Database& D);
  /// Lexicographically smallest x with (x, y) in D.
  std::optional<Bits> smallest(const Bits& y) const;

 private:
  std::map<Bits, std::set<Bits>> by_y_;
};

SubtreeColoring color_subtree(const Database& D, const Bits& chi, const Node& v, const Bits& x_v, const Bits& y_v,
                              unsigned n);

std::optional<ColoredTree> colored_mt(const Database& D, const Bits& chi, const Bits& y, unsigned n);

/// Every node on the path from leaf v to the root is green.
bool gptr(const ColoredTree& tree, const Node& v);

/// Leaves with gptr = 1.
std::size_t green_path_leaves(const ColoredTree& tree);
std::size_t count_unlucky_leaves(const ColoredTree& tree);

/// w = w_1‖…‖w_k‖z with every gptr(w_i) = 1; uniformly false when no tree.
std::function<bool(const Bits&)> lucky_strings(const Database& D, const Bits& chi, const Bits& y, unsigned n,
                                               unsigned lambda);
/// Closed form g^k · 2^{λ - kn} of the lucky-string count (as a double: exact below 2^53).
double lucky_count(const ColoredTree& tree);

/// LUCKY_s: some entry (χ‖marker‖ℓ_ε, y) has y lucky for the tree rooted at
/// ℓ_ε, and D is neither in COLLIDE nor in PATH_s.
bool is_lucky_db(const Database& D, std::size_t s, unsigned n, unsigned lambda);

/// PRE(D): every λ-bit window of every stored input.
std::set<Bits> pre_set(const Database& D, unsigned lambda);

struct RedNodeCheck {
  bool hypotheses_hold = false;
  std::size_t unlucky = 0;
  std::size_t T = 0;
  bool passed = true;
};

/// floor((1 - α) N).
std::size_t red_node_threshold(unsigned n, double alpha);

/// Under ¬COLLIDE and ¬PATH_T, at least α·2^n leaves must fail gptr.
/// Vacuously passes when the hypotheses fail.
RedNodeCheck check_rednodes(const Database& D, const Bits& chi, const Bits& y, unsigned n, double alpha,
                            std::size_t T);

/// The prover's oracle transcript: the N label queries and the challenge query.
Database transcript_database(const RandomOracle& H, unsigned n, const Bits& chi);

struct AuditReport {
  unsigned n = 0;
  unsigned lambda = 0;
  std::size_t s = 0;
  EdgeRule rule = EdgeRule::kSubstring;
  std::optional<ColoredTree> tree;
  std::size_t green_leaves = 0;
  bool collide = false;
  bool path_s = false;
  bool lucky = false;
  std::optional<std::size_t> longest_walk;
  bool cyclic = false;
  std::optional<HSequence> witness;

  std::string to_json() const;
};

AuditReport audit(const Database& D, const Bits& chi, const Bits& root, unsigned n, std::size_t s,
                  EdgeRule rule = EdgeRule::kSubstring);

}  // namespace posw
