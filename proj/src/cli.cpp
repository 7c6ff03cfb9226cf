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

#include "posw/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "posw/bounds.hpp"
#include "posw/coloring.hpp"
#include "posw/experiments.hpp"
#include "posw/hgraph.hpp"
#include "posw/oracle.hpp"
#include "posw/posw.hpp"
#include "posw/qsim.hpp"

namespace posw::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path);
  return data;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("cannot write " + path);
}

std::string hex_bytes(const std::vector<std::uint8_t>& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

struct OracleFlags {
  std::string config_path;
  std::string mode;
  unsigned lambda = 0;
  unsigned toy_input_bits = 0;
  std::optional<std::uint64_t> toy_seed;
};

/// Config file (flag, then $POSW_CONFIG), then inline overrides. Defaults to real mode, λ = 256.
OracleConfig resolve_config(const OracleFlags& f) {
  OracleConfig cfg = OracleConfig::real(256);
  std::string path = f.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (!path.empty()) cfg = OracleConfig::from_json(read_file(path));
  if (!f.mode.empty()) {
    if (f.mode == "real") {
      cfg.mode = OracleMode::kReal;
    } else if (f.mode == "toy") {
      cfg.mode = OracleMode::kToy;
    } else {
      throw InputError("--mode must be real or toy");
    }
  }
  if (f.lambda) cfg.lambda = f.lambda;
  if (f.toy_input_bits) cfg.toy_input_bits = f.toy_input_bits;
  if (f.toy_seed) cfg.toy_seed = *f.toy_seed;
  cfg.validate();
  return cfg;
}

void emit(std::ostream& out, const std::string& path, const std::string& doc) {
  if (path.empty()) {
    out << doc << "\n";
  } else {
    write_file(path, doc + "\n");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof-of-sequential-work toolkit", "posw"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  OracleFlags of;
  int verbosity = 0;
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--config", of.config_path, std::string("Oracle config JSON (default: $") + kConfigEnv + ")");
    sub->add_option("--mode", of.mode, "Oracle mode override: real | toy");
    sub->add_option("--lambda", of.lambda, "Output length override in bits");
    sub->add_option("--toy-input-bits", of.toy_input_bits, "Toy domain bound m override");
    sub->add_option("--toy-seed", of.toy_seed, "Toy table seed override");
  };
  app.add_flag("-v,--verbose", verbosity, "Diagnostics on stderr");

  unsigned n = 0;
  std::string chi_hex, root_hex, out_path, proof_path, db_path, spec_path, grid_path, edge_rule, json_path;
  std::size_t s = 0;
  std::size_t budget = qsim::kDefaultBudget;

  auto* prove = app.add_subcommand("prove", "Compute a proof for statement chi");
  add_oracle(prove);
  prove->add_option("--n", n, "Tree depth")->required();
  prove->add_option("--chi", chi_hex, "Statement, ceil(lambda/4) hex digits")->required();
  prove->add_option("--out", out_path, "Binary proof output path")->required();
  prove->add_option("--json", json_path, "Also write the JSON form of the proof");

  auto* verify = app.add_subcommand("verify", "Check a binary proof");
  add_oracle(verify);
  verify->add_option("--n", n, "Tree depth")->required();
  verify->add_option("--chi", chi_hex, "Statement, ceil(lambda/4) hex digits")->required();
  verify->add_option("--proof", proof_path, "Binary proof path")->required();

  auto* aud = app.add_subcommand("audit", "Color the Merkle tree a database induces");
  add_oracle(aud);
  aud->add_option("--db", db_path, "Database JSON")->required();
  aud->add_option("--chi", chi_hex, "Statement, hex")->required();
  aud->add_option("--root", root_hex, "Claimed root label, hex")->required();
  aud->add_option("--n", n, "Tree depth")->required();
  aud->add_option("--s", s, "Sequential bound for PATH_s and LUCKY_s")->required();
  aud->add_option("--edge-rule", edge_rule, "substring | forward (default: the database's edge_rule, else substring)");
  aud->add_option("--out", out_path, "Report path (default stdout)");

  auto* sim = app.add_subcommand("simulate", "Run a compressed-oracle experiment");
  sim->add_option("--spec", spec_path, "Experiment spec JSON")->required();
  sim->add_option("--out", out_path, "Report path (default stdout)");
  sim->add_option("--budget", budget, "Maximum nonzero amplitudes")->check(CLI::PositiveNumber);

  auto* bnd = app.add_subcommand("bounds", "Evaluate security bounds over a grid");
  bnd->add_option("--grid", grid_path, "Grid spec JSON")->required();
  bnd->add_option("--out", out_path, "Table path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*prove) {
      const auto cfg = resolve_config(of);
      const auto H = make_oracle(cfg);
      const Bits chi = Bits::from_hex(chi_hex, cfg.lambda);
      if (verbosity) err << "prove: n=" << n << " lambda=" << cfg.lambda << "\n";
      const Proof proof = solve(*H, n, chi);
      const auto bytes = encode_proof(proof);
      write_file(out_path, std::string(bytes.begin(), bytes.end()));
      if (!json_path.empty()) write_file(json_path, proof_to_json(proof) + "\n");
      nlohmann::ordered_json j;
      j["n"] = n;
      j["lambda"] = cfg.lambda;
      j["root_label"] = proof.root_label.to_hex();
      j["challenges"] = proof.challenges.size();
      j["bytes"] = bytes.size();
      j["sha256"] = hex_bytes(sha256(bytes));
      out << j.dump() << "\n";
      return kOk;
    }
    if (*verify) {
      const auto cfg = resolve_config(of);
      const auto H = make_oracle(cfg);
      const Bits chi = Bits::from_hex(chi_hex, cfg.lambda);
      const std::string data = read_file(proof_path);
      nlohmann::ordered_json j;
      Proof proof;
      try {
        proof = decode_proof(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
      } catch (const MalformedProofError& e) {
        j["status"] = to_string(VerifyStatus::kMalformedProof);
        j["detail"] = e.what();
        out << j.dump() << "\n";
        return kUsage;
      }
      const VerifyResult r = posw::verify(*H, n, chi, proof);
      j["status"] = to_string(r.status);
      if (r.challenge >= 0) j["challenge"] = r.challenge;
      if (!r.detail.empty()) j["detail"] = r.detail;
      out << j.dump() << "\n";
      if (r.accepted()) return kOk;
      return r.status == VerifyStatus::kMalformedProof ? kUsage : kVerifyFailed;
    }
    if (*aud) {
      const std::string text = read_file(db_path);
      const Database D = Database::from_json(text);
      EdgeRule rule = EdgeRule::kSubstring;
      if (!edge_rule.empty()) {
        rule = parse_edge_rule(edge_rule);
      } else {
        const auto j = nlohmann::json::parse(text);
        if (j.contains("edge_rule")) rule = parse_edge_rule(j["edge_rule"].get<std::string>());
      }
      const unsigned lambda = D.lambda();
      if (lambda < 1) throw InputError("database lambda must be at least 1");
      const Bits chi = Bits::from_hex(chi_hex, lambda);
      const Bits root = Bits::from_hex(root_hex, lambda);
      if (verbosity) err << "audit: " << D.size() << " entries, rule " << to_string(rule) << "\n";
      emit(out, out_path, audit(D, chi, root, n, s, rule).to_json());
      return kOk;
    }
    if (*sim) {
      nlohmann::json spec;
      try {
        spec = nlohmann::json::parse(read_file(spec_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("experiment spec is not valid JSON: ") + e.what());
      }
      emit(out, out_path, qsim::run_experiment(spec, budget).dump(2));
      return kOk;
    }
    if (*bnd) {
      emit(out, out_path, bounds::evaluate_grid(read_file(grid_path)));
      return kOk;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const qsim::ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace posw::cli
