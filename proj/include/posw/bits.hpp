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
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace posw {

/// Error raised on malformed input at a module boundary (bad hex, bad
/// bit-string, out-of-range parameter). Callers at the CLI map it to a
/// usage exit code.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An arbitrary-length bit string, most significant (first) bit at index 0.
///
/// One byte per bit: inputs in this project are a few thousand bits at most
/// and the substring scans in hgraph/coloring want cheap indexed access.
/// Ordering is lexicographic with a proper prefix sorting first, which is the
/// order used when picking "the smallest preimage".
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size, bool value = false) : bits_(size, value ? 1 : 0) {}

  /// Parses a string over {'0','1'}. The empty string is the empty bitstring.
  static Bits from_string(std::string_view s);
  /// `width` low bits of `value`, big-endian.
  static Bits from_uint(std::uint64_t value, std::size_t width);
  /// Right-aligned hex: ceil(width/4) digits whose integer value is < 2^width.
  static Bits from_hex(std::string_view hex, std::size_t width);
  /// Unpacks `width` bits MSB-first from `bytes`.
  static Bits from_bytes(std::span<const std::uint8_t> bytes, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }
  void push_back(bool v) { bits_.push_back(v ? 1 : 0); }

  void append(const Bits& other);
  Bits slice(std::size_t pos, std::size_t len) const;
  bool is_zero() const;
  std::size_t popcount() const;

  /// Value of the bits as an unsigned integer; requires size() <= 64.
  std::uint64_t to_uint() const;
  std::string to_string() const;
  std::string to_hex() const;
  /// MSB-first packing, zero padded to a whole byte.
  std::vector<std::uint8_t> to_bytes() const;

  /// True iff `needle` occurs as a contiguous run inside *this.
  bool contains(const Bits& needle) const;

  friend Bits operator+(Bits a, const Bits& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const Bits&, const Bits&) = default;
  friend std::strong_ordering operator<=>(const Bits& a, const Bits& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Convenience for tests and fixtures: Bits::from_string.
inline Bits operator""_b(const char* s, std::size_t n) { return Bits::from_string({s, n}); }

/// Writes successive fixed-width fields MSB-first into a byte buffer.
class BitWriter {
 public:
  void write_uint(std::uint64_t value, std::size_t width);
  void write_bits(const Bits& bits);
  void write_bytes(std::span<const std::uint8_t> bytes);
  std::size_t bit_count() const { return bit_count_; }
  /// Zero-pads to a byte boundary and returns the buffer.
  std::vector<std::uint8_t> finish() const { return bytes_; }

 private:
  void write_bit(bool b);
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

/// Reads fixed-width fields; throws InputError past the end.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint64_t read_uint(std::size_t width);
  Bits read_bits(std::size_t width);
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() * 8 - pos_; }
  /// True iff every bit from the cursor to the end is zero.
  bool rest_is_zero() const;

 private:
  bool read_bit();
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace posw
