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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "posw/bits.hpp"

namespace posw {

/// Maximum supported tree depth; heap indices must fit in 64 bits.
inline constexpr unsigned kMaxDepth = 62;

/// A vertex of the PoSW graph: a bit string of length `depth` <= n.
///
/// `path` holds the bits MSB-first in its low `depth` bits, so the heap
/// index is `(1 << depth) | path`: index(ε) = 1, index(v‖b) = 2·index(v) + b.
struct Node {
  unsigned depth = 0;
  std::uint64_t path = 0;

  static Node root() { return {}; }
  static Node from_string(std::string_view bits);
  static Node from_heap_index(std::uint64_t index);

  std::uint64_t heap_index() const { return (std::uint64_t{1} << depth) | path; }
  bool is_root() const { return depth == 0; }
  /// Bit at 1-based position j (1 <= j <= depth).
  bool bit(unsigned j) const { return ((path >> (depth - j)) & 1U) != 0; }

  Node child(bool b) const { return {depth + 1, (path << 1) | (b ? 1U : 0U)}; }
  Node parent_in_tree() const { return {depth - 1, path >> 1}; }
  Node sibling() const { return {depth, path ^ 1U}; }
  /// The length-i prefix v[1..i].
  Node prefix(unsigned i) const { return {i, path >> (depth - i)}; }

  Bits to_bits() const { return Bits::from_uint(path, depth); }
  std::string to_string() const;

  friend bool operator==(const Node&, const Node&) = default;
  friend std::strong_ordering operator<=>(const Node& a, const Node& b) {
    return a.heap_index() <=> b.heap_index();
  }
};

/// The Fiat–Shamir challenge slot N+1; encoded as the all-zero field.
struct ChallengeMarker {
  friend bool operator==(const ChallengeMarker&, const ChallengeMarker&) = default;
};

}  // namespace posw
