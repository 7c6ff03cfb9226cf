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
#include <string>

#include <nlohmann/json.hpp>

#include "posw/qsim.hpp"

namespace posw::qsim {

/// Program document:
/// {"m","lambda","slots","z_dim","initial":[step...],"rounds":[{"width":k,"after":[step...]}]}
/// with steps {"gate":"hadamard"|"not"|"random"|"matrix","targets":[..]|"all",...} or {"swap":[i,j]}.
AdversaryProgram program_from_json(const nlohmann::json& j);
nlohmann::json program_to_json(const AdversaryProgram& p);

/// Runs an experiment spec {"preset": ..., params...} and returns the report.
///
/// Presets: collision, grover, path-growth, oracle-equivalence, tuple-relation, custom.
/// Throws InputError on a bad spec and ResourceError when the budget is exceeded.
nlohmann::ordered_json run_experiment(const nlohmann::json& spec, std::size_t budget = kDefaultBudget);

/// Random program with a Haar-random gate on every register before the first and
/// after every round. `parallel` batches all q queries into one round on q slots.
AdversaryProgram random_program(unsigned m, unsigned lambda, unsigned q, bool parallel, unsigned z_dim,
                                std::uint64_t seed);

/// Hadamard on every x and y, one round of width k, Hadamard on every y: the phase-oracle
/// form of k parallel standard queries y_j <- y_j xor H(x_j).
AdversaryProgram standard_query_program(unsigned m, unsigned lambda, unsigned k);

}  // namespace posw::qsim
