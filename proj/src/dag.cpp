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

#include "posw/dag.hpp"

#include "posw/bits.hpp"

namespace posw {

Node Node::from_string(std::string_view bits) {
  if (bits.size() > kMaxDepth) throw InputError("node longer than supported maximum depth");
  Node v;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("node string contains a character other than 0/1");
    v = v.child(c == '1');
  }
  return v;
}

Node Node::from_heap_index(std::uint64_t index) {
  if (index == 0) throw InputError("heap index 0 is reserved for the challenge marker");
  const unsigned depth = 63U - static_cast<unsigned>(__builtin_clzll(index));
  if (depth > kMaxDepth) throw InputError("heap index too deep");
  return {depth, index ^ (std::uint64_t{1} << depth)};
}

std::string Node::to_string() const {
  std::string s;
  for (unsigned j = 1; j <= depth; ++j) s.push_back(bit(j) ? '1' : '0');
  return s;
}

GraphParams GraphParams::for_depth(unsigned n) { return {n, node_count(n)}; }

std::uint64_t node_count(unsigned n) {
  if (n == 0) throw InputError("tree depth n must be at least 1");
  if (n > kMaxDepth - 1) throw InputError("tree depth n too large for 64-bit node counts");
  return (std::uint64_t{2} << n) - 1;
}

std::vector<Node> parents(unsigned n, const Node& v) {
  if (v.depth > n) throw InputError("node deeper than the tree");
  if (v.depth < n) return {v.child(false), v.child(true)};
  std::vector<Node> out;
  for (unsigned j = 1; j <= n; ++j) {
    if (v.bit(j)) out.push_back(v.prefix(j - 1).child(false));
  }
  return out;
}

namespace {

void post_order(unsigned n, const Node& v, std::vector<Node>& out) {
  if (v.depth < n) {
    post_order(n, v.child(false), out);
    post_order(n, v.child(true), out);
  }
  out.push_back(v);
}

}  // namespace

std::vector<Node> labeling_order(unsigned n) {
  std::vector<Node> out;
  out.reserve(node_count(n));
  post_order(n, Node::root(), out);
  return out;
}

std::vector<Node> leaves(unsigned n) {
  node_count(n);
  std::vector<Node> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) out.push_back({n, p});
  return out;
}

}  // namespace posw
