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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "posw/bounds.hpp"
#include "posw/cli.hpp"
#include "posw/coloring.hpp"
#include "posw/dag.hpp"
#include "posw/experiments.hpp"
#include "posw/hgraph.hpp"
#include "posw/posw.hpp"
#include "posw/qsim.hpp"

namespace py = pybind11;
using namespace posw;

namespace {

OracleConfig make_config(const std::string& mode, unsigned lambda, unsigned toy_input_bits, std::uint64_t toy_seed) {
  OracleConfig cfg;
  if (mode == "real") {
    cfg = OracleConfig::real(lambda);
  } else if (mode == "toy") {
    cfg = OracleConfig::toy(lambda, toy_input_bits, toy_seed);
  } else {
    throw InputError("mode must be real or toy");
  }
  cfg.validate();
  return cfg;
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the posw C++ core. JSON documents cross the boundary as strings.";

  // Translators run newest first, so the specific types are registered after the InputError fallback.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
  py::register_exception<MalformedProofError>(m, "MalformedProofError", PyExc_ValueError);
  py::register_exception<qsim::ResourceError>(m, "ResourceError", PyExc_MemoryError);

  m.def(
      "prove",
      [](unsigned n, const std::string& chi, const std::string& mode, unsigned lambda, unsigned toy_input_bits,
         std::uint64_t toy_seed) {
        const auto cfg = make_config(mode, lambda, toy_input_bits, toy_seed);
        const auto H = make_oracle(cfg);
        Proof p;
        {
          py::gil_scoped_release release;
          p = solve(*H, n, Bits::from_hex(chi, cfg.lambda));
        }
        return to_bytes(encode_proof(p));
      },
      py::arg("n"), py::arg("chi"), py::arg("mode") = "real", py::arg("lambda_") = 256, py::arg("toy_input_bits") = 0,
      py::arg("toy_seed") = 0, "Binary proof for hex statement chi.");

  m.def(
      "verify",
      [](unsigned n, const std::string& chi, const py::bytes& proof, const std::string& mode, unsigned lambda,
         unsigned toy_input_bits, std::uint64_t toy_seed) {
        const auto cfg = make_config(mode, lambda, toy_input_bits, toy_seed);
        const auto H = make_oracle(cfg);
        const std::string raw = proof;
        const Proof p = decode_proof(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
        const VerifyResult r = posw::verify(*H, n, Bits::from_hex(chi, cfg.lambda), p);
        py::dict d;
        d["status"] = to_string(r.status);
        d["challenge"] = r.challenge;
        d["detail"] = r.detail;
        return d;
      },
      py::arg("n"), py::arg("chi"), py::arg("proof"), py::arg("mode") = "real", py::arg("lambda_") = 256,
      py::arg("toy_input_bits") = 0, py::arg("toy_seed") = 0);

  m.def(
      "proof_json",
      [](const py::bytes& proof) {
        const std::string raw = proof;
        return proof_to_json(decode_proof(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size())));
      },
      py::arg("proof"));

  m.def(
      "parents",
      [](unsigned n, const std::string& v) {
        std::vector<std::string> out;
        for (const Node& p : parents(n, Node::from_string(v))) out.push_back(p.to_string());
        return out;
      },
      py::arg("n"), py::arg("node"));

  m.def(
      "longest_walk",
      [](const std::string& db_json, const std::string& rule) {
        return longest_walk(Database::from_json(db_json), parse_edge_rule(rule));
      },
      py::arg("db_json"), py::arg("edge_rule") = "substring", "None when G_D has a cycle.");

  m.def(
      "audit_json",
      [](const std::string& db_json, const std::string& chi, const std::string& root, unsigned n, std::size_t s,
         const std::string& rule) {
        const Database D = Database::from_json(db_json);
        return audit(D, Bits::from_hex(chi, D.lambda()), Bits::from_hex(root, D.lambda()), n, s, parse_edge_rule(rule))
            .to_json();
      },
      py::arg("db_json"), py::arg("chi"), py::arg("root"), py::arg("n"), py::arg("s"),
      py::arg("edge_rule") = "substring");

  m.def(
      "transcript_json",
      [](unsigned n, const std::string& chi, const std::string& mode, unsigned lambda, unsigned toy_input_bits,
         std::uint64_t toy_seed) {
        const auto cfg = make_config(mode, lambda, toy_input_bits, toy_seed);
        return transcript_database(*make_oracle(cfg), n, Bits::from_hex(chi, cfg.lambda)).to_json();
      },
      py::arg("n"), py::arg("chi"), py::arg("mode") = "real", py::arg("lambda_") = 256, py::arg("toy_input_bits") = 0,
      py::arg("toy_seed") = 0, "The honest prover's oracle transcript as a database document.");

  m.def(
      "simulate_json",
      [](const std::string& spec, std::size_t budget) {
        const auto j = nlohmann::json::parse(spec);
        py::gil_scoped_release release;
        return qsim::run_experiment(j, budget).dump();
      },
      py::arg("spec"), py::arg("budget") = qsim::kDefaultBudget);

  m.def(
      "bounds_json", [](const std::string& grid) { return bounds::evaluate_grid(grid); }, py::arg("grid"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command in-process; returns (exit_code, stdout, stderr).");
}
