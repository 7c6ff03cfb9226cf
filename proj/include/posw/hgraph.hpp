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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "posw/bits.hpp"
#include "posw/oracle.hpp"

namespace posw {

struct Entry {
  Bits x;
  Bits y;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// A partial function x -> y kept in insertion order. Lookups are by x.
class Database {
 public:
  Database() = default;
  explicit Database(unsigned lambda) : lambda_(lambda) {}
  Database(unsigned lambda, std::vector<Entry> entries);

  unsigned lambda() const { return lambda_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }

  /// Throws InputError on a duplicate x or a y of the wrong width.
  void insert(Bits x, Bits y);
  std::optional<Bits> lookup(const Bits& x) const;
  std::optional<std::size_t> index_of(const Bits& x) const;

  /// {"lambda":λ,"entries":[{"x":"0101","y":"110"},...]}.
  std::string to_json() const;
  static Database from_json(const std::string& text);

  friend bool operator==(const Database&, const Database&) = default;

 private:
  unsigned lambda_ = 0;
  std::vector<Entry> entries_;
};

/// Contiguous bit-level match, hay = a‖needle‖b.
inline bool substring(const Bits& needle, const Bits& hay) { return hay.contains(needle); }

enum class EdgeRule {
  /// Edge (i, j) iff y_i is a substring of x_j; self-loops and cycles allowed.
  kSubstring,
  /// kSubstring restricted to i < j in database order.
  kForward,
};

EdgeRule parse_edge_rule(const std::string& name);
std::string to_string(EdgeRule rule);

struct DbGraph {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
  std::size_t node_count() const { return out.size(); }
  std::size_t edge_count() const;
};

DbGraph build_graph(const Database& D, EdgeRule rule = EdgeRule::kSubstring);

/// ends[v] is true iff some walk of exactly s edges ends at entry v.
std::vector<bool> walk_endpoints(const DbGraph& g, std::size_t s);

/// PATH_s: some walk of s edges exists. True for s = 0 iff D is nonempty.
bool has_walk_of_length(const Database& D, std::size_t s, EdgeRule rule = EdgeRule::kSubstring);

/// Length of the longest walk, or nullopt when a cycle makes it unbounded.
/// Empty databases yield nullopt as well (no walk at all).
std::optional<std::size_t> longest_walk(const Database& D, EdgeRule rule = EdgeRule::kSubstring);
bool has_cycle(const DbGraph& g);

struct HSequence {
  std::vector<std::size_t> entries;
  std::vector<Bits> xs;
};

/// One walk of s edges, smallest endpoint and smallest predecessors first.
std::optional<HSequence> extract_hseq(const Database& D, std::size_t s, EdgeRule rule = EdgeRule::kSubstring);

/// COLLIDE: two entries with distinct x share y.
bool has_collision(const Database& D);

/// PATH_{s,i}: a walk of s edges ending at an entry whose x is not among queries[0..i).
bool path_s_i(const Database& D, std::span<const Bits> queries, std::size_t s, std::size_t i,
              EdgeRule rule = EdgeRule::kSubstring);
/// Contain_{s,i} (i is 1-based): D(x_i) is defined, some query contains D(x_i),
/// and a walk of s edges ends at x_i.
bool contain_s_i(const Database& D, std::span<const Bits> queries, std::size_t s, std::size_t i,
                 EdgeRule rule = EdgeRule::kSubstring);
/// BAD_{s,i} = PATH_{s,i} ∪ Contain_{s,1..i}; BAD_{s,0} = PATH_s.
bool bad_s_i(const Database& D, std::span<const Bits> queries, std::size_t s, std::size_t i,
             EdgeRule rule = EdgeRule::kSubstring);

/// Every link y_{i-1} = H(x_{i-1}) appears in x_i, with lookups undefined outside D.
bool verify_hseq(const Database& D, std::span<const Bits> seq);
bool verify_hseq(const RandomOracle& H, std::span<const Bits> seq);

}  // namespace posw
