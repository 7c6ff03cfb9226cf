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
#include <span>
#include <string>
#include <vector>

#include "posw/bits.hpp"
#include "posw/dag.hpp"
#include "posw/oracle.hpp"

namespace posw {

/// Labels for every node of G_n, indexed by heap index.
class LabelTable {
 public:
  LabelTable(unsigned n, unsigned lambda) : n_(n), lambda_(lambda), labels_(node_count(n) + 1) {}

  unsigned n() const { return n_; }
  unsigned lambda() const { return lambda_; }
  const Bits& at(const Node& v) const { return labels_.at(v.heap_index()); }
  void set(const Node& v, Bits label) { labels_.at(v.heap_index()) = std::move(label); }

 private:
  unsigned n_;
  unsigned lambda_;
  std::vector<Bits> labels_;
};

struct Proof {
  unsigned n = 0;
  unsigned lambda = 0;
  Bits chi;
  Bits root_label;
  std::vector<Node> challenges;
  /// openings[i] = mt_reveal(labels, challenges[i]).
  std::vector<std::vector<Bits>> openings;

  friend bool operator==(const Proof&, const Proof&) = default;
};

/// k = floor(λ/n).
unsigned challenge_count(unsigned lambda, unsigned n);

LabelTable compute_labels(const RandomOracle& H, unsigned n, const Bits& chi);

/// R = H(χ ‖ marker ‖ ℓ_ε).
Bits challenge_seed(const RandomOracle& H, const Bits& chi, const Bits& root_label);
/// Prefix slices of R into k n-bit leaves; the λ - kn trailing bits are dropped.
std::vector<Node> split_challenges(const Bits& R, unsigned n);
std::vector<Node> derive_challenges(const RandomOracle& H, const Bits& chi, const Bits& root_label, unsigned n);

/// Sibling labels along the root path of `leaf`, shallowest first.
std::vector<Bits> mt_reveal(const LabelTable& labels, const Node& leaf);

Proof solve(const RandomOracle& H, unsigned n, const Bits& chi);

enum class VerifyStatus {
  kAccept,
  kChallengeMismatch,
  kLeafInconsistent,
  kRootMismatch,
  kMalformedProof,
  kStatementMismatch,
};

struct VerifyResult {
  VerifyStatus status = VerifyStatus::kAccept;
  /// Index of the offending challenge, or -1.
  int challenge = -1;
  std::string detail;

  bool accepted() const { return status == VerifyStatus::kAccept; }
};

std::string to_string(VerifyStatus s);

VerifyResult verify(const RandomOracle& H, unsigned n, const Bits& chi, const Proof& proof);

/// Raised by decode_proof / proof_from_json on structurally invalid input.
class MalformedProofError : public InputError {
 public:
  using InputError::InputError;
};

/// Binary format: "PSW1", u8 n, u16 λ, χ, ℓ_ε, u8 k, then k × (challenge,
/// n sibling labels), one MSB-first bitstream zero-padded to a byte.
/// k = 256 (λ = 256, n = 1) is written as 0.
std::vector<std::uint8_t> encode_proof(const Proof& proof);
Proof decode_proof(std::span<const std::uint8_t> bytes);

std::string proof_to_json(const Proof& proof);
Proof proof_from_json(const std::string& text);

}  // namespace posw
