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

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace posw::bounds {

/// 100 decimal digits (332-bit mantissa).
using Real = boost::multiprecision::cpp_bin_float_100;

/// Real from a decimal string, an integer, or "2^e" / "a*2^e".
Real parse_real(const std::string& text);
/// Shortest round-trip-ish decimal representation with `digits` significant digits.
std::string format_real(const Real& v, int digits = 40);

Real pow2(const Real& e);

/// 64q³δλ/2^λ + 2N/2^λ.
Real hseq_bound(const Real& q, const Real& delta, unsigned lambda, const Real& N);

/// 32q²(1-α)^k + 2q³/2^λ + 64q³(n+2)λ/2^λ + 2k(n+2)/2^λ with k = ⌊λ/n⌋.
Real posw_bound(const Real& q, const Real& alpha, unsigned lambda, unsigned n);

struct StepBounds {
  Real per_query;  // 4√(qδλ + kδλ)/2^{λ/2}
  Real per_round;  // k times the per-query value
};
StepBounds step_bounds(const Real& q, const Real& k, const Real& delta, unsigned lambda);

/// 32q³δλ/2^λ.
Real path_measure_bound(const Real& q, const Real& delta, unsigned lambda);

struct LuckyBounds {
  Real per_query;  // 4(1-α)^{k/2}
  Real total;      // 16q²(1-α)^k
};
LuckyBounds lucky_bounds(const Real& q, const Real& alpha, unsigned lambda, unsigned n);

/// q³/2^λ.
Real collision_bound(const Real& q, unsigned lambda);

/// (√p' + √(k/2^λ))², the upper bound on p implied by √p <= √p' + √(k/2^λ).
Real zhandry_relation(const Real& p_prime, const Real& k, unsigned lambda);

/// N²/2^λ + 1/(2^λ - N) + √(48λN⁴q²T/2^{λ/2}). Throws InputError if N >= 2^λ.
Real iterhash_bound(const Real& N, const Real& q, const Real& T, unsigned lambda);

/// c·q²/2^λ. The constant is not given by the source bound, which is asymptotic.
Real grover_bound(const Real& q, unsigned lambda, const Real& c = 1);

/// Parameters for the named-bound interface. Unset PoSW-derived fields are filled
/// from n: N = 2^{n+1}-1, δ = n+2, k = ⌊λ/n⌋.
struct BoundParams {
  unsigned lambda = 0;
  std::optional<unsigned> n;
  std::optional<Real> N, q, s, k, delta, alpha, T, p_prime, c;

  /// Fills derived fields; throws InputError on missing or out-of-range values for `bound`.
  BoundParams resolved(const std::string& bound) const;
};

struct BoundValue {
  std::string name;
  Real raw;
  Real clamped;
  bool asymptotic = false;
};

/// hseq, posw, step_query, step_round, path_measure, lucky_query, lucky_total,
/// collision, zhandry, iterhash, grover.
const std::vector<std::string>& bound_names();
BoundValue evaluate(const std::string& bound, const BoundParams& params);

/// Largest integer q >= 0 with bound(q) <= 2^{-target_bits}, or nullopt if even q = 0 fails.
/// The search stops at q = 2^300, which is returned if it is still secure.
std::optional<Real> max_secure_q(const std::string& bound, const BoundParams& params, unsigned target_bits);

/// Evaluates the cartesian product grid described by `spec_json`:
/// {"bounds":[names], "grid":{"lambda":[...], "n":[...], "q":[...], ...}}.
/// Values may be numbers or strings accepted by parse_real. Returns the JSON table.
std::string evaluate_grid(const std::string& spec_json);

}  // namespace posw::bounds
