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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "posw/dag.hpp"

using namespace posw;

namespace {

std::vector<std::string> names(const std::vector<Node>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.to_string());
  return out;
}

using S = std::vector<std::string>;

}  // namespace

TEST(Node, HeapIndexArithmetic) {
  EXPECT_EQ(Node::root().heap_index(), 1U);
  EXPECT_EQ(Node::from_string("111").heap_index(), 15U);
  EXPECT_EQ(Node::from_string("0110").heap_index(), 22U);
  for (std::uint64_t i = 1; i < 64; ++i) {
    const Node v = Node::from_heap_index(i);
    EXPECT_EQ(v.heap_index(), i);
    EXPECT_EQ(Node::from_string(v.to_string()), v);
    if (!v.is_root()) EXPECT_EQ(v.parent_in_tree().child(v.bit(v.depth)), v);
  }
  EXPECT_THROW(Node::from_heap_index(0), InputError);
}

TEST(NodeCount, Values) {
  EXPECT_EQ(node_count(1), 3U);
  EXPECT_EQ(node_count(3), 15U);
  EXPECT_EQ(node_count(20), 2097151U);
  EXPECT_THROW(node_count(0), InputError);
  EXPECT_THROW(node_count(62), InputError);
}

TEST(Parents, InternalNodes) {
  EXPECT_EQ(names(parents(3, Node::root())), (S{"0", "1"}));
  EXPECT_EQ(names(parents(3, Node::from_string("10"))), (S{"100", "101"}));
}

TEST(Parents, LeafLeftSiblings) {
  EXPECT_EQ(names(parents(3, Node::from_string("111"))), (S{"0", "10", "110"}));
  EXPECT_EQ(names(parents(4, Node::from_string("0110"))), (S{"00", "010"}));
  EXPECT_TRUE(parents(3, Node::from_string("000")).empty());
}

TEST(Parents, LeafParentsMatchPrefixDefinition) {
  // Independent rule: for every split v = a‖1‖a', the node a‖0 is a parent.
  for (unsigned n = 1; n <= 8; ++n) {
    for (const Node& u : leaves(n)) {
      const std::string s = u.to_string();
      std::set<std::string> expected;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') expected.insert(s.substr(0, i) + "0");
      }
      const auto got = names(parents(n, u));
      EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected);
      EXPECT_EQ(got.size(), static_cast<std::size_t>(std::count(s.begin(), s.end(), '1')));
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end(),
                                 [](const std::string& a, const std::string& b) { return a.size() < b.size(); }));
    }
  }
}

TEST(Parents, DegreeProfile) {
  for (unsigned n = 1; n <= 7; ++n) {
    std::size_t max_in = 0;
    for (const Node& v : labeling_order(n)) {
      const auto ps = parents(n, v);
      if (v.depth < n) EXPECT_EQ(ps.size(), 2U);
      max_in = std::max(max_in, ps.size());
    }
    EXPECT_EQ(max_in, std::max<std::size_t>(n, 2));
  }
}

TEST(Parents, FullEdgeSetAtDepthThree) {
  // (parent, node) pairs written out by hand: 14 tree edges, then leaf sibling edges.
  const std::set<std::pair<std::string, std::string>> expected{
      {"0", ""},      {"1", ""},      {"00", "0"},    {"01", "0"},    {"10", "1"},    {"11", "1"},
      {"000", "00"},  {"001", "00"},  {"010", "01"},  {"011", "01"},  {"100", "10"},  {"101", "10"},
      {"110", "11"},  {"111", "11"},  {"000", "001"}, {"00", "010"},  {"00", "011"},  {"010", "011"},
      {"0", "100"},   {"0", "101"},   {"100", "101"}, {"0", "110"},   {"10", "110"},  {"0", "111"},
      {"10", "111"},  {"110", "111"}};
  std::set<std::pair<std::string, std::string>> got;
  for (const Node& v : labeling_order(3)) {
    for (const Node& p : parents(3, v)) got.insert({p.to_string(), v.to_string()});
  }
  EXPECT_EQ(got.size(), 26U);
  EXPECT_EQ(got, expected);
}

TEST(LabelingOrder, PostOrder) {
  EXPECT_EQ(names(labeling_order(1)), (S{"0", "1", ""}));
  EXPECT_EQ(names(labeling_order(2)), (S{"00", "01", "0", "10", "11", "1", ""}));
  for (unsigned n = 1; n <= 10; ++n) {
    const auto order = labeling_order(n);
    ASSERT_EQ(order.size(), node_count(n));
    std::map<std::uint64_t, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i].heap_index()] = i;
    ASSERT_EQ(pos.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const Node& p : parents(n, order[i])) EXPECT_LT(pos.at(p.heap_index()), i);
    }
  }
}
