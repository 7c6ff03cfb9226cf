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

#include "posw/oracle.hpp"

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

namespace posw {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

OracleConfig OracleConfig::real(unsigned lambda) {
  OracleConfig c;
  c.mode = OracleMode::kReal;
  c.lambda = lambda;
  return c;
}

OracleConfig OracleConfig::toy(unsigned lambda, unsigned input_bits, std::uint64_t seed) {
  OracleConfig c;
  c.mode = OracleMode::kToy;
  c.lambda = lambda;
  c.toy_input_bits = input_bits;
  c.toy_seed = seed;
  return c;
}

void OracleConfig::validate() const {
  if (mode == OracleMode::kReal) {
    if (lambda < 1 || lambda > 256) throw InputError("real mode requires 1 <= lambda <= 256");
  } else {
    if (lambda < 1 || lambda > 8) throw InputError("toy mode requires 1 <= lambda <= 8");
    if (toy_input_bits < 1 || toy_input_bits > 12) throw InputError("toy mode requires 1 <= toy_input_bits <= 12");
  }
}

std::string OracleConfig::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["mode"] = mode == OracleMode::kReal ? "real" : "toy";
  j["lambda"] = lambda;
  j["toy_input_bits"] = toy_input_bits;
  j["toy_seed"] = toy_seed;
  return j.dump(2);
}

OracleConfig OracleConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("oracle config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("oracle config must be a JSON object");
  if (j.contains("version") && j["version"] != 1) throw InputError("unsupported oracle config version");
  OracleConfig c;
  try {
    const std::string mode = j.value("mode", "real");
    if (mode == "real") {
      c.mode = OracleMode::kReal;
    } else if (mode == "toy") {
      c.mode = OracleMode::kToy;
    } else {
      throw InputError("oracle mode must be \"real\" or \"toy\"");
    }
    c.lambda = j.at("lambda").get<unsigned>();
    c.toy_input_bits = j.value("toy_input_bits", 0U);
    c.toy_seed = j.value("toy_seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad oracle config field: ") + e.what());
  }
  c.validate();
  return c;
}

std::vector<std::uint8_t> sha256(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> out(32);
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return out;
}

Sha256Oracle::Sha256Oracle(unsigned lambda) : lambda_(lambda) { OracleConfig::real(lambda).validate(); }

Bits Sha256Oracle::query(const Bits& input) const {
  if (input.size() > 0xFFFF) throw InputError("real-mode input longer than 65535 bits");
  BitWriter w;
  w.write_uint(input.size(), 16);
  w.write_bits(input);
  const auto digest = sha256(w.finish());
  return Bits::from_bytes(digest, lambda_);
}

ToyOracle::ToyOracle(unsigned lambda, unsigned input_bits, std::uint64_t seed)
    : lambda_(lambda), input_bits_(input_bits) {
  OracleConfig::toy(lambda, input_bits, seed).validate();
  const std::uint64_t size = (std::uint64_t{2} << input_bits) - 1;
  table_.resize(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    table_[i] = static_cast<std::uint16_t>(table_word(seed, i) >> (64 - lambda));
  }
}

std::uint64_t ToyOracle::table_index(const Bits& input) {
  return ((std::uint64_t{1} << input.size()) - 1) + input.to_uint();
}

std::uint64_t ToyOracle::table_word(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_mix(seed + (index + 1) * kGamma);
}

Bits ToyOracle::query(const Bits& input) const {
  if (input.size() > input_bits_) {
    throw InputError("toy oracle input of " + std::to_string(input.size()) + " bits exceeds domain {0,1}^<=" +
                     std::to_string(input_bits_));
  }
  return Bits::from_uint(table_[table_index(input)], lambda_);
}

std::unique_ptr<RandomOracle> make_oracle(const OracleConfig& cfg) {
  cfg.validate();
  if (cfg.mode == OracleMode::kReal) return std::make_unique<Sha256Oracle>(cfg.lambda);
  return std::make_unique<ToyOracle>(cfg.lambda, cfg.toy_input_bits, cfg.toy_seed);
}

Bits encode_node(const NodeOrMarker& v, unsigned lambda) {
  if (std::holds_alternative<ChallengeMarker>(v)) return Bits(lambda);
  const Node& node = std::get<Node>(v);
  if (node.depth > kMaxDepth) throw InputError("node depth exceeds supported maximum");
  const std::uint64_t index = node.heap_index();
  if (lambda < 64 && index >> lambda) {
    throw InputError("heap index " + std::to_string(index) + " does not fit in " + std::to_string(lambda) + " bits");
  }
  if (lambda <= 64) return Bits::from_uint(index, lambda);
  return Bits(lambda - 64) + Bits::from_uint(index, 64);
}

Bits encode_label_input(const Bits& chi, const NodeOrMarker& v, std::span<const Bits> labels) {
  const unsigned lambda = static_cast<unsigned>(chi.size());
  Bits out = chi;
  out.append(encode_node(v, lambda));
  for (const auto& l : labels) {
    if (l.size() != lambda) throw InputError("label width differs from statement width");
    out.append(l);
  }
  return out;
}

bool split_label_input(const Bits& input, unsigned lambda, LabelInputFields& out) {
  if (lambda == 0 || input.size() % lambda != 0 || input.size() < 2 * std::size_t{lambda}) return false;
  out.chi = input.slice(0, lambda);
  out.node_field = input.slice(lambda, lambda);
  out.labels.clear();
  for (std::size_t pos = 2 * std::size_t{lambda}; pos < input.size(); pos += lambda) {
    out.labels.push_back(input.slice(pos, lambda));
  }
  return true;
}

}  // namespace posw
