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
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "posw/bits.hpp"
#include "posw/node.hpp"

namespace posw {

enum class OracleMode { kReal, kToy };

/// Oracle parameters. Real mode truncates SHA-256 to `lambda` bits; toy mode
/// is an explicit seeded table over {0,1}^{<=toy_input_bits}.
struct OracleConfig {
  OracleMode mode = OracleMode::kReal;
  unsigned lambda = 256;
  unsigned toy_input_bits = 0;
  std::uint64_t toy_seed = 0;

  static OracleConfig real(unsigned lambda);
  static OracleConfig toy(unsigned lambda, unsigned input_bits, std::uint64_t seed);

  /// Throws InputError when the invariants for the chosen mode do not hold.
  void validate() const;

  /// Versioned JSON document {"version":1,"mode","lambda","toy_input_bits","toy_seed"}.
  std::string to_json() const;
  static OracleConfig from_json(const std::string& text);
};

/// A λ-bit random oracle H. Implementations are immutable after construction
/// and safe to share between threads.
class RandomOracle {
 public:
  virtual ~RandomOracle() = default;
  virtual unsigned lambda() const = 0;
  virtual Bits query(const Bits& input) const = 0;
};

class Sha256Oracle final : public RandomOracle {
 public:
  explicit Sha256Oracle(unsigned lambda);
  unsigned lambda() const override { return lambda_; }
  /// First λ bits of SHA-256(u16 bit-count ‖ input packed MSB-first).
  Bits query(const Bits& input) const override;

 private:
  unsigned lambda_;
};

class ToyOracle final : public RandomOracle {
 public:
  ToyOracle(unsigned lambda, unsigned input_bits, std::uint64_t seed);
  unsigned lambda() const override { return lambda_; }
  /// Table lookup; throws InputError for inputs longer than input_bits.
  Bits query(const Bits& input) const override;

  /// Table slot of an input: (2^len - 1) + value.
  static std::uint64_t table_index(const Bits& input);
  /// Counter-mode SplitMix64 word for a table slot.
  static std::uint64_t table_word(std::uint64_t seed, std::uint64_t index);

 private:
  unsigned lambda_;
  unsigned input_bits_;
  std::vector<std::uint16_t> table_;
};

std::unique_ptr<RandomOracle> make_oracle(const OracleConfig& cfg);

/// SHA-256 of raw bytes (used by both the oracle and the CLI proof digest).
std::vector<std::uint8_t> sha256(std::span<const std::uint8_t> bytes);

using NodeOrMarker = std::variant<Node, ChallengeMarker>;

/// Heap index of `v` as a λ-bit big-endian field; the marker is all zeros.
/// Throws InputError if the index does not fit.
Bits encode_node(const NodeOrMarker& v, unsigned lambda);

/// χ ‖ encode_node(v) ‖ labels..., every field λ bits wide.
Bits encode_label_input(const Bits& chi, const NodeOrMarker& v, std::span<const Bits> labels);

/// Splits a label input back into fixed fields; inverse of encode_label_input.
struct LabelInputFields {
  Bits chi;
  Bits node_field;
  std::vector<Bits> labels;
};
/// Returns false if the length is not a multiple of λ or shorter than 2λ.
bool split_label_input(const Bits& input, unsigned lambda, LabelInputFields& out);

}  // namespace posw
