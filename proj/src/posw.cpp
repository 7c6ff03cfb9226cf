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

#include "posw/posw.hpp"

#include <array>

#include <nlohmann/json.hpp>

namespace posw {

unsigned challenge_count(unsigned lambda, unsigned n) {
  if (n == 0) throw InputError("tree depth n must be at least 1");
  if (lambda < n) throw InputError("lambda must be at least n to derive a challenge");
  return lambda / n;
}

LabelTable compute_labels(const RandomOracle& H, unsigned n, const Bits& chi) {
  const unsigned lambda = H.lambda();
  if (chi.size() != lambda) throw InputError("statement must be exactly lambda bits");
  if (n + 1 > lambda) throw InputError("node indices need n + 1 <= lambda");
  LabelTable table(n, lambda);
  std::vector<Bits> in;
  for (const Node& v : labeling_order(n)) {
    in.clear();
    for (const Node& p : parents(n, v)) in.push_back(table.at(p));
    table.set(v, H.query(encode_label_input(chi, v, in)));
  }
  return table;
}

Bits challenge_seed(const RandomOracle& H, const Bits& chi, const Bits& root_label) {
  const std::array<Bits, 1> in{root_label};
  return H.query(encode_label_input(chi, ChallengeMarker{}, in));
}

std::vector<Node> split_challenges(const Bits& R, unsigned n) {
  const unsigned k = challenge_count(static_cast<unsigned>(R.size()), n);
  std::vector<Node> out;
  out.reserve(k);
  for (unsigned i = 0; i < k; ++i) out.push_back({n, R.slice(std::size_t{i} * n, n).to_uint()});
  return out;
}

std::vector<Node> derive_challenges(const RandomOracle& H, const Bits& chi, const Bits& root_label, unsigned n) {
  return split_challenges(challenge_seed(H, chi, root_label), n);
}

std::vector<Bits> mt_reveal(const LabelTable& labels, const Node& leaf) {
  if (leaf.depth != labels.n()) throw InputError("mt_reveal needs a leaf");
  std::vector<Bits> out;
  out.reserve(leaf.depth);
  for (unsigned j = 1; j <= leaf.depth; ++j) out.push_back(labels.at(leaf.prefix(j).sibling()));
  return out;
}

Proof solve(const RandomOracle& H, unsigned n, const Bits& chi) {
  const LabelTable labels = compute_labels(H, n, chi);
  Proof p;
  p.n = n;
  p.lambda = H.lambda();
  p.chi = chi;
  p.root_label = labels.at(Node::root());
  p.challenges = derive_challenges(H, chi, p.root_label, n);
  for (const Node& c : p.challenges) p.openings.push_back(mt_reveal(labels, c));
  return p;
}

std::string to_string(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kAccept: return "Accept";
    case VerifyStatus::kChallengeMismatch: return "ChallengeMismatch";
    case VerifyStatus::kLeafInconsistent: return "LeafInconsistent";
    case VerifyStatus::kRootMismatch: return "RootMismatch";
    case VerifyStatus::kMalformedProof: return "MalformedProof";
    case VerifyStatus::kStatementMismatch: return "StatementMismatch";
  }
  return "Unknown";
}

namespace {

VerifyResult reject(VerifyStatus s, std::string detail, int challenge = -1) {
  return {s, challenge, std::move(detail)};
}

}  // namespace

VerifyResult verify(const RandomOracle& H, unsigned n, const Bits& chi, const Proof& proof) {
  const unsigned lambda = H.lambda();
  if (proof.n != n || proof.lambda != lambda) {
    return reject(VerifyStatus::kMalformedProof, "proof parameters (n, lambda) differ from the verifier's");
  }
  if (n == 0 || n + 1 > lambda) return reject(VerifyStatus::kMalformedProof, "n out of range for lambda");
  if (chi.size() != lambda) return reject(VerifyStatus::kMalformedProof, "statement must be lambda bits");
  if (proof.chi != chi) return reject(VerifyStatus::kStatementMismatch, "proof is bound to a different statement");
  if (proof.root_label.size() != lambda) return reject(VerifyStatus::kMalformedProof, "root label width");
  const unsigned k = challenge_count(lambda, n);
  if (proof.challenges.size() != k || proof.openings.size() != k) {
    return reject(VerifyStatus::kMalformedProof, "expected " + std::to_string(k) + " challenges");
  }
  for (unsigned i = 0; i < k; ++i) {
    if (proof.challenges[i].depth != n || proof.openings[i].size() != n) {
      return reject(VerifyStatus::kMalformedProof, "challenge or opening has the wrong length", static_cast<int>(i));
    }
    for (const Bits& l : proof.openings[i]) {
      if (l.size() != lambda) return reject(VerifyStatus::kMalformedProof, "opening label width", static_cast<int>(i));
    }
  }

  try {
    const auto expected = derive_challenges(H, chi, proof.root_label, n);
    for (unsigned i = 0; i < k; ++i) {
      if (expected[i] != proof.challenges[i]) {
        return reject(VerifyStatus::kChallengeMismatch,
                      "challenge " + std::to_string(i) + " should be " + expected[i].to_string(),
                      static_cast<int>(i));
      }
    }

    std::vector<Bits> in;
    for (unsigned i = 0; i < k; ++i) {
      const Node& c = proof.challenges[i];
      const auto& open = proof.openings[i];
      // Leaf parents are the left siblings, i.e. opening[j-1] wherever c[j] = 1.
      in.clear();
      for (unsigned j = 1; j <= n; ++j) {
        if (c.bit(j)) in.push_back(open[j - 1]);
      }
      Bits cur;
      try {
        cur = H.query(encode_label_input(chi, c, in));
      } catch (const InputError& e) {
        return reject(VerifyStatus::kLeafInconsistent, e.what(), static_cast<int>(i));
      }
      for (unsigned j = n; j >= 1; --j) {
        const std::array<Bits, 2> kids =
            c.bit(j) ? std::array<Bits, 2>{open[j - 1], cur} : std::array<Bits, 2>{cur, open[j - 1]};
        cur = H.query(encode_label_input(chi, c.prefix(j - 1), kids));
      }
      if (cur != proof.root_label) {
        return reject(VerifyStatus::kRootMismatch, "opening does not fold to the root label", static_cast<int>(i));
      }
    }
  } catch (const InputError& e) {
    return reject(VerifyStatus::kMalformedProof, e.what());
  }
  return {};
}

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'P', 'S', 'W', '1'};

std::size_t proof_bits(unsigned n, unsigned lambda, unsigned k) {
  return 32 + 8 + 16 + 2 * std::size_t{lambda} + 8 + std::size_t{k} * (n + std::size_t{n} * lambda);
}

}  // namespace

std::vector<std::uint8_t> encode_proof(const Proof& p) {
  if (p.n == 0 || p.n > 255) throw InputError("n does not fit the proof header");
  if (p.lambda == 0 || p.lambda > 0xFFFF) throw InputError("lambda does not fit the proof header");
  const std::size_t k = p.challenges.size();
  if (k == 0 || k > 256 || p.openings.size() != k) throw InputError("bad challenge count");
  BitWriter w;
  w.write_bytes(kMagic);
  w.write_uint(p.n, 8);
  w.write_uint(p.lambda, 16);
  if (p.chi.size() != p.lambda || p.root_label.size() != p.lambda) throw InputError("field width");
  w.write_bits(p.chi);
  w.write_bits(p.root_label);
  w.write_uint(k & 0xFF, 8);
  for (std::size_t i = 0; i < k; ++i) {
    if (p.challenges[i].depth != p.n || p.openings[i].size() != p.n) throw InputError("record shape");
    w.write_uint(p.challenges[i].path, p.n);
    for (const Bits& l : p.openings[i]) {
      if (l.size() != p.lambda) throw InputError("field width");
      w.write_bits(l);
    }
  }
  return w.finish();
}

Proof decode_proof(std::span<const std::uint8_t> bytes) {
  try {
    BitReader r(bytes);
    for (auto m : kMagic) {
      if (r.read_uint(8) != m) throw MalformedProofError("bad magic");
    }
    Proof p;
    p.n = static_cast<unsigned>(r.read_uint(8));
    p.lambda = static_cast<unsigned>(r.read_uint(16));
    if (p.n == 0 || p.lambda < p.n) throw MalformedProofError("header has n = 0 or lambda < n");
    if (p.n > kMaxDepth - 1) throw MalformedProofError("n too large");
    const unsigned k_expected = p.lambda / p.n;
    const std::size_t need = proof_bits(p.n, p.lambda, k_expected);
    if (bytes.size() != (need + 7) / 8) {
      throw MalformedProofError("proof is " + std::to_string(bytes.size()) + " bytes, expected " +
                                std::to_string((need + 7) / 8));
    }
    p.chi = r.read_bits(p.lambda);
    p.root_label = r.read_bits(p.lambda);
    unsigned k = static_cast<unsigned>(r.read_uint(8));
    if (k == 0) k = 256;
    if (k != k_expected) throw MalformedProofError("challenge count is not floor(lambda/n)");
    for (unsigned i = 0; i < k; ++i) {
      p.challenges.push_back({p.n, r.read_uint(p.n)});
      auto& open = p.openings.emplace_back();
      for (unsigned j = 0; j < p.n; ++j) open.push_back(r.read_bits(p.lambda));
    }
    if (!r.rest_is_zero()) throw MalformedProofError("nonzero padding");
    return p;
  } catch (const MalformedProofError&) {
    throw;
  } catch (const InputError& e) {
    throw MalformedProofError(std::string("truncated proof: ") + e.what());
  }
}

std::string proof_to_json(const Proof& p) {
  nlohmann::ordered_json j;
  j["format"] = "PSW1";
  j["n"] = p.n;
  j["lambda"] = p.lambda;
  j["chi"] = p.chi.to_hex();
  j["root_label"] = p.root_label.to_hex();
  auto& recs = j["challenges"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p.challenges.size(); ++i) {
    nlohmann::ordered_json rec;
    rec["leaf"] = p.challenges[i].to_string();
    auto& sib = rec["siblings"] = nlohmann::ordered_json::array();
    for (const Bits& l : p.openings[i]) sib.push_back(l.to_hex());
    recs.push_back(std::move(rec));
  }
  return j.dump(2);
}

Proof proof_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "PSW1") throw MalformedProofError("unknown proof format");
    Proof p;
    p.n = j.at("n").get<unsigned>();
    p.lambda = j.at("lambda").get<unsigned>();
    p.chi = Bits::from_hex(j.at("chi").get<std::string>(), p.lambda);
    p.root_label = Bits::from_hex(j.at("root_label").get<std::string>(), p.lambda);
    for (const auto& rec : j.at("challenges")) {
      const Node c = Node::from_string(rec.at("leaf").get<std::string>());
      if (c.depth != p.n) throw MalformedProofError("challenge length differs from n");
      p.challenges.push_back(c);
      auto& open = p.openings.emplace_back();
      for (const auto& h : rec.at("siblings")) open.push_back(Bits::from_hex(h.get<std::string>(), p.lambda));
    }
    return p;
  } catch (const MalformedProofError&) {
    throw;
  } catch (const std::exception& e) {
    throw MalformedProofError(std::string("bad proof JSON: ") + e.what());
  }
}

}  // namespace posw
