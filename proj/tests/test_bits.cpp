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

#include "posw/bits.hpp"

using namespace posw;

TEST(Bits, StringRoundTrip) {
  EXPECT_EQ(Bits::from_string("").size(), 0U);
  EXPECT_EQ("0110"_b.to_string(), "0110");
  EXPECT_THROW(Bits::from_string("012"), InputError);
}

TEST(Bits, UintAndHex) {
  EXPECT_EQ(Bits::from_uint(5, 4).to_string(), "0101");
  EXPECT_THROW(Bits::from_uint(16, 4), InputError);
  EXPECT_EQ(Bits::from_uint(0x1F, 5).to_hex(), "1f");
  EXPECT_EQ(Bits::from_hex("1f", 5).to_string(), "11111");
  EXPECT_EQ(Bits::from_hex("0x0a", 5).to_string(), "01010");
  EXPECT_THROW(Bits::from_hex("2f", 5), InputError);
  EXPECT_THROW(Bits::from_hex("f", 5), InputError);
  EXPECT_THROW(Bits::from_hex("zz", 5), InputError);
}

TEST(Bits, BytesPackMsbFirst) {
  const Bits b = "101"_b;
  EXPECT_EQ(b.to_bytes(), std::vector<std::uint8_t>{0xA0});
  const std::vector<std::uint8_t> raw{0xA0};
  EXPECT_EQ(Bits::from_bytes(raw, 3), b);
}

TEST(Bits, SubstringAndOrder) {
  EXPECT_TRUE("00010"_b.contains("000"_b));
  EXPECT_TRUE("00010"_b.contains("00010"_b));
  EXPECT_TRUE("00010"_b.contains(""_b));
  EXPECT_FALSE("00000"_b.contains("111"_b));
  EXPECT_FALSE("01"_b.contains("010"_b));
  EXPECT_LT("0"_b, "00"_b);
  EXPECT_LT("01"_b, "1"_b);
}

TEST(BitStream, WriterReaderSymmetry) {
  BitWriter w;
  w.write_uint(0x5, 3);
  w.write_bits("11001"_b);
  w.write_uint(0xBEEF, 16);
  EXPECT_EQ(w.bit_count(), 24U);
  const auto bytes = w.finish();
  BitReader r(bytes);
  EXPECT_EQ(r.read_uint(3), 5U);
  EXPECT_EQ(r.read_bits(5), "11001"_b);
  EXPECT_EQ(r.read_uint(16), 0xBEEFU);
  EXPECT_THROW(r.read_uint(1), InputError);
}
