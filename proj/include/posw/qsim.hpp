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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "posw/hgraph.hpp"

namespace posw::qsim {

/// Raised when a simulation would exceed its configured state-size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 22;
inline constexpr double kPruneThreshold = 1e-14;

using Amplitude = std::complex<double>;

/// Register widths. Query slots hold (x: m bits, y: λ bits); z takes values in [0, z_dim).
struct QShape {
  unsigned m = 1;
  unsigned lambda = 1;
  unsigned slots = 1;
  unsigned z_dim = 1;

  /// 1 <= m, λ <= 8, slots >= 1, 1 <= z_dim <= 65536.
  void validate() const;
  std::size_t adversary_dim() const;
};

/// Compressed database: (x, y) pairs sorted by x, no duplicate x.
using QDatabase = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// A decoded computational basis state.
struct Basis {
  std::vector<std::uint32_t> x;
  std::vector<std::uint32_t> y;
  std::uint32_t z = 0;
  QDatabase db;
};

/// Sparse state vector over |x, y, z⟩ ⊗ |D⟩ with database capacity t.
///
/// Keys are packed bytes [x_1 y_1 ... x_k y_k][z hi lo][D entries], which keeps
/// them inside the small-string buffer at desk-scale sizes.
class QState {
 public:
  using Map = std::unordered_map<std::string, Amplitude>;

  /// |0...0⟩ ⊗ |∅⟩ with t = 0.
  explicit QState(QShape shape, std::size_t budget = kDefaultBudget);

  const QShape& shape() const { return shape_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t budget() const { return budget_; }
  std::size_t size() const { return amps_.size(); }
  const Map& amplitudes() const { return amps_; }

  Amplitude amplitude(const Basis& b) const;
  double norm_squared() const;

  std::string encode(const Basis& b) const;
  Basis decode(const std::string& key) const;
  /// The [slots][z] prefix of a key.
  std::string adversary_part(const std::string& key) const;
  QDatabase database_part(const std::string& key) const;

  /// Replaces the amplitudes, pruning tiny entries and enforcing the budget.
  void assign(Map amps);
  void set_capacity(std::size_t t) { capacity_ = t; }

  /// Builds a state from explicit basis amplitudes (not renormalized).
  static QState from_terms(QShape shape, std::size_t capacity, const std::vector<std::pair<Basis, Amplitude>>& terms,
                           std::size_t budget = kDefaultBudget);

 private:
  QShape shape_;
  std::size_t capacity_ = 0;
  std::size_t budget_;
  Map amps_;
};

/// Max-norm distance between two states over the union of their supports.
double max_distance(const QState& a, const QState& b);

// Oracle-side operations. Slot indices are 1-based. Each returns a new state.

QState std_decomp(const QState& s, unsigned slot);
QState increase(const QState& s, std::size_t count);
QState cphso_prime(const QState& s, unsigned slot);
/// Joint phase (-1)^{Σ_{j<=k} y_j·D(x_j)}.
QState cphso_prime_k(const QState& s, unsigned k);
/// StdDecomp ∘ CPhsO' ∘ StdDecomp ∘ Increase on slot 1.
QState cphso(const QState& s);
QState swap_slots(const QState& s, unsigned i, unsigned j);
/// Swap_{1,i} ∘ CPhsO ∘ Swap_{1,i}.
QState scphso(const QState& s, unsigned i);
/// SCPhsO_k ∘ ... ∘ SCPhsO_1.
QState cphso_k(const QState& s, unsigned k);
/// StdDecomp^k ∘ CPhsO'^k ∘ StdDecomp^k ∘ Increase^k.
QState alt_parallel_cphso(const QState& s, unsigned k);
/// Explicit phase oracle (-1)^{Σ_{j<=k} y_j·H(x_j)}; H is a table over {0,1}^m. D is untouched.
QState standard_phase(const QState& s, const std::vector<std::uint32_t>& H, unsigned k);

// Adversary-side unitaries.

enum class RegKind { kX, kY, kZ };
struct Register {
  RegKind kind;
  unsigned slot = 0;  // 1-based; ignored for z
  /// "x1", "y2", "z".
  static Register parse(const std::string& name);
  std::string name() const;
};

struct Gate {
  std::string name;
  std::vector<Register> targets;  // most significant first
  Eigen::MatrixXcd matrix;
};

struct SlotSwap {
  unsigned i = 1;
  unsigned j = 1;
};

using Step = std::variant<Gate, SlotSwap>;

unsigned register_dim(const QShape& shape, const Register& r);
bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10);

/// Walsh–Hadamard on every target (each must have power-of-two dimension).
Gate hadamard_gate(const QShape& shape, std::vector<Register> targets);
/// Bitwise NOT on every target (maps 0 to all-ones).
Gate not_gate(const QShape& shape, std::vector<Register> targets);
/// Haar-random unitary on the targets, from a complex Gaussian via Householder QR.
Gate random_gate(const QShape& shape, std::vector<Register> targets, std::uint64_t seed);
/// Every register of the shape: x1, y1, ..., xk, yk, z.
std::vector<Register> all_registers(const QShape& shape);

QState apply_gate(const QState& s, const Gate& g);
QState apply_step(const QState& s, const Step& step);

struct Round {
  unsigned width = 1;
  std::vector<Step> after;
};

/// ψ_0 = U_0|0⟩, ψ_r = U_r ∘ O^{k_r} ψ_{r-1}.
struct AdversaryProgram {
  QShape shape;
  std::vector<Step> initial;
  std::vector<Round> rounds;

  std::size_t query_budget() const;
  /// Throws InputError on a non-unitary gate, bad register or width > slots.
  void validate() const;
};

enum class OracleVariant { kSequential, kAltParallel };
OracleVariant parse_variant(const std::string& name);
std::string to_string(OracleVariant v);

QState run_adversary(const AdversaryProgram& p, OracleVariant variant = OracleVariant::kSequential,
                     std::size_t budget = kDefaultBudget);
/// Runs p against one explicit oracle table H.
QState run_standard(const AdversaryProgram& p, const std::vector<std::uint32_t>& H,
                    std::size_t budget = kDefaultBudget);

/// Measurement distribution of the adversary registers, keyed by adversary_part.
using Distribution = std::map<std::string, double>;
Distribution adversary_distribution(const QState& s);
double total_variation(const Distribution& a, const Distribution& b);

/// Every table H: {0,1}^m -> {0,1}^λ, in lexicographic order of (H(0), H(1), ...).
std::vector<std::vector<std::uint32_t>> all_oracles(unsigned m, unsigned lambda);
/// Average of adversary_distribution over all 2^{λ·2^m} explicit oracles.
Distribution standard_oracle_reference(const AdversaryProgram& p, std::size_t budget = kDefaultBudget);

using DbPredicate = std::function<bool(const QDatabase&)>;
/// Σ|a|² over basis states whose database satisfies pred (evaluated once per distinct D).
double measure_probability(const QState& s, const DbPredicate& pred);

Database to_database(const QShape& shape, const QDatabase& db);
DbPredicate collide_predicate();
/// Some entry has y = 0^λ.
DbPredicate contains_zero_predicate();
DbPredicate path_predicate(const QShape& shape, std::size_t s, EdgeRule rule = EdgeRule::kSubstring);

enum class YInit { kHadamard, kOnes };
YInit parse_y_init(const std::string& name);
std::string to_string(YInit y);

/// q slots; x registers in uniform superposition, y per `y`; round r queries slot 1
/// and then swaps slot 1 with fresh slot r+1.
AdversaryProgram uniform_query_program(unsigned m, unsigned lambda, unsigned q, YInit y = YInit::kHadamard);

/// Classical reference for COLLIDE: average over every H and every query vector
/// x ∈ ({0,1}^m)^q of [H is non-injective on {x_1..x_q}].
double collision_reference(unsigned m, unsigned lambda, unsigned q);

/// Tuple experiment on the first k slots after running p: p_std is the standard-oracle
/// probability that y_j = H(x_j) for all j and R holds; p_db is the compressed probability
/// that D(x_j) = y_j for all j and R holds.
using TupleRelation = std::function<bool(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y)>;
struct TupleProbabilities {
  double p_std = 0;
  double p_db = 0;
};
TupleProbabilities tuple_probabilities(const AdversaryProgram& p, unsigned k, const TupleRelation& rel,
                                       std::size_t budget = kDefaultBudget);

}  // namespace posw::qsim
