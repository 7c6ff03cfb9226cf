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

#include <random>

#include "posw/coloring.hpp"
#include "posw/posw.hpp"
#include "random_db.hpp"

namespace posw::testing {

inline Bits label_input(const Bits& chi, const std::string& v, std::vector<Bits> labels) {
  return encode_label_input(chi, Node::from_string(v), labels);
}

/// Node 1 fails to parse, node 00 has no preimage, leaf 010 carries a
/// mismatching copy of ℓ_00. n = 3, λ = 8; labels are arbitrary distinct bytes.
struct SubtreeScenario {
  Bits chi = Bits::from_uint(0xA5, 8);
  Database D{8};
  Bits root;
};

inline Bits byte(std::uint64_t v) { return Bits::from_uint(v, 8); }

inline SubtreeScenario colsubtree_scenario() {
  SubtreeScenario s;
  const Bits &chi = s.chi;
  const Bits le = byte(0x10), l0 = byte(0x20), l1 = byte(0x21), l00 = byte(0x30), l01 = byte(0x31),
             l10 = byte(0x32), l11 = byte(0x33), l010 = byte(0x40), l011 = byte(0x41), bogus = byte(0x7E);
  s.root = le;
  s.D.insert(label_input(chi, "", {l0, l1}), le);
  s.D.insert(label_input(chi, "0", {l00, l01}), l0);
  s.D.insert(label_input(chi, "0", {l10, l11}), l1);  // wrong node field
  s.D.insert(label_input(chi, "01", {l010, l011}), l01);
  s.D.insert(label_input(chi, "010", {bogus}), l010);
  s.D.insert(label_input(chi, "011", {l00, l010}), l011);
  return s;
}

/// Tree reachable by the coloring pass: ε, 0, 01, 010, 011 green; 1 unparseable; 00 without preimage.
inline SubtreeScenario colmt_scenario() {
  SubtreeScenario s;
  const Bits &chi = s.chi;
  const Bits le = byte(0x90), l0 = byte(0xA0), l1 = byte(0xA1), l00 = byte(0xB0), l01 = byte(0xB1),
             l10 = byte(0xB2), l11 = byte(0xB3), l010 = byte(0xC0), l011 = byte(0xC1);
  s.root = le;
  s.D.insert(label_input(chi, "", {l0, l1}), le);
  s.D.insert(label_input(chi, "0", {l00, l01}), l0);
  s.D.insert(chi + byte(0x03) + l10, l1);  // too short to parse
  s.D.insert(label_input(chi, "01", {l010, l011}), l01);
  s.D.insert(label_input(chi, "010", {l00}), l010);
  s.D.insert(label_input(chi, "011", {l00, l010}), l011);
  return s;
}

/// The tree as drawn: 00 red while its child 000 is green.
inline ColoredTree colmt_drawn_tree() {
  ColoredTree t = ColoredTree::blank(3, 8, Bits::from_uint(0xA5, 8));
  for (const char* v : {"", "0", "1", "01", "000", "010", "011", "10", "100"}) {
    t.at(Node::from_string(v)).color = Color::kGreen;
    t.at(Node::from_string(v)).label = byte(Node::from_string(v).heap_index());
  }
  return t;
}

/// Honest transcript with entries removed or corrupted at random.
inline Database corrupt_transcript(std::mt19937_64& rng, const Database& honest) {
  Database D(honest.lambda());
  const double drop = (rng() % 100) / 100.0 * 0.6;
  for (const auto& e : honest.entries()) {
    if ((rng() % 1000) / 1000.0 < drop) continue;
    Bits x = e.x, y = e.y;
    switch (rng() % 8) {
      case 0: y.flip(rng() % y.size()); break;
      case 1: x.flip(rng() % x.size()); break;
      default: break;
    }
    if (!D.index_of(x)) D.insert(std::move(x), std::move(y));
  }
  return D;
}

}  // namespace posw::testing
