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

#include "posw/bits.hpp"

#include <algorithm>

namespace posw {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bits Bits::from_string(std::string_view s) {
  Bits out;
  out.bits_.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw InputError("bit-string contains a character other than 0/1");
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

Bits Bits::from_uint(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) throw InputError("value does not fit in the requested width");
  Bits out(width);
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t shift = width - 1 - i;
    out.bits_[i] = shift < 64 ? static_cast<std::uint8_t>((value >> shift) & 1U) : 0;
  }
  return out;
}

Bits Bits::from_hex(std::string_view hex, std::size_t width) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  const std::size_t digits = (width + 3) / 4;
  if (hex.size() != digits) {
    throw InputError("hex value must have exactly " + std::to_string(digits) + " digits for " +
                     std::to_string(width) + " bits");
  }
  Bits wide;
  wide.bits_.reserve(digits * 4);
  for (char c : hex) {
    int d = hex_digit(c);
    if (d < 0) throw InputError("invalid hex digit");
    for (int b = 3; b >= 0; --b) wide.bits_.push_back(static_cast<std::uint8_t>((d >> b) & 1));
  }
  const std::size_t extra = digits * 4 - width;
  for (std::size_t i = 0; i < extra; ++i) {
    if (wide.bits_[i]) throw InputError("hex value exceeds the bit width");
  }
  return wide.slice(extra, width);
}

Bits Bits::from_bytes(std::span<const std::uint8_t> bytes, std::size_t width) {
  if (width > bytes.size() * 8) throw InputError("not enough bytes");
  Bits out(width);
  for (std::size_t i = 0; i < width; ++i) out.bits_[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
  return out;
}

void Bits::append(const Bits& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

Bits Bits::slice(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) throw std::out_of_range("Bits::slice out of range");
  Bits out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                   bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

bool Bits::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

std::size_t Bits::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::uint64_t Bits::to_uint() const {
  if (size() > 64) throw std::out_of_range("Bits::to_uint on more than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string Bits::to_string() const {
  std::string s;
  s.reserve(size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

std::string Bits::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (size() + 3) / 4;
  const std::size_t pad = digits * 4 - size();
  std::string s;
  s.reserve(digits);
  int acc = 0;
  for (std::size_t i = 0; i < digits * 4; ++i) {
    int bit = i < pad ? 0 : bits_[i - pad];
    acc = (acc << 1) | bit;
    if (i % 4 == 3) {
      s.push_back(kDigits[acc]);
      acc = 0;
    }
  }
  return s;
}

std::vector<std::uint8_t> Bits::to_bytes() const {
  std::vector<std::uint8_t> out((size() + 7) / 8, 0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

bool Bits::contains(const Bits& needle) const {
  if (needle.size() > size()) return false;
  return std::search(bits_.begin(), bits_.end(), needle.bits_.begin(), needle.bits_.end()) != bits_.end();
}

void BitWriter::write_bit(bool b) {
  if (bit_count_ % 8 == 0) bytes_.push_back(0);
  if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (bit_count_ % 8));
  ++bit_count_;
}

void BitWriter::write_uint(std::uint64_t value, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) write_bit(((value >> (width - 1 - i)) & 1U) != 0);
}

void BitWriter::write_bits(const Bits& bits) {
  for (std::size_t i = 0; i < bits.size(); ++i) write_bit(bits[i]);
}

void BitWriter::write_bytes(std::span<const std::uint8_t> bytes) {
  for (auto b : bytes) write_uint(b, 8);
}

bool BitReader::read_bit() {
  if (pos_ >= bytes_.size() * 8) throw InputError("unexpected end of data");
  bool b = ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1U) != 0;
  ++pos_;
  return b;
}

std::uint64_t BitReader::read_uint(std::size_t width) {
  if (width > remaining()) throw InputError("unexpected end of data");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(read_bit());
  return v;
}

Bits BitReader::read_bits(std::size_t width) {
  if (width > remaining()) throw InputError("unexpected end of data");
  Bits out(width);
  for (std::size_t i = 0; i < width; ++i) out.set(i, read_bit());
  return out;
}

bool BitReader::rest_is_zero() const {
  for (std::size_t p = pos_; p < bytes_.size() * 8; ++p) {
    if ((bytes_[p / 8] >> (7 - p % 8)) & 1U) return false;
  }
  return true;
}

}  // namespace posw
