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

#include "posw/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>

namespace posw::qsim {

namespace {

std::size_t db_offset(const QShape& shape) { return 2 * std::size_t{shape.slots} + 2; }

std::size_t db_size(const QShape& shape, const std::string& key) { return (key.size() - db_offset(shape)) / 2; }

std::uint8_t byte_at(const std::string& key, std::size_t pos) { return static_cast<std::uint8_t>(key[pos]); }

/// Position of entry x in the database part, or of its insertion point.
std::pair<std::size_t, bool> find_entry(const QShape& shape, const std::string& key, std::uint32_t x) {
  const std::size_t off = db_offset(shape);
  const std::size_t n = db_size(shape, key);
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (byte_at(key, off + 2 * mid) < x) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const bool found = lo < n && byte_at(key, off + 2 * lo) == x;
  return {off + 2 * lo, found};
}

std::uint32_t slot_x(const std::string& key, unsigned slot) { return byte_at(key, 2 * (slot - 1)); }
std::uint32_t slot_y(const std::string& key, unsigned slot) { return byte_at(key, 2 * (slot - 1) + 1); }

void check_slot(const QShape& shape, unsigned slot) {
  if (slot < 1 || slot > shape.slots) throw InputError("slot index " + std::to_string(slot) + " out of range");
}

template <typename F>
QState transform(const QState& s, F&& emit) {
  QState::Map out;
  out.reserve(s.size() * 2);
  // Terms can cancel after accumulation, so the map may briefly exceed the budget; cap it at 4x.
  const std::size_t cap = s.budget() > SIZE_MAX / 4 ? SIZE_MAX : 4 * s.budget();
  for (const auto& [key, a] : s.amplitudes()) {
    emit(key, a, out);
    if (out.size() > cap) {
      throw ResourceError("intermediate state exceeds 4x the budget of " + std::to_string(s.budget()) +
                          " nonzero amplitudes");
    }
  }
  // Fresh state rather than a copy of s: only the new map should be alive next to the input.
  QState r(s.shape(), s.budget());
  r.set_capacity(s.capacity());
  r.assign(std::move(out));
  return r;
}

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

void QShape::validate() const {
  if (m < 1 || m > 8) throw InputError("simulator requires 1 <= m <= 8");
  if (lambda < 1 || lambda > 8) throw InputError("simulator requires 1 <= lambda <= 8");
  if (slots < 1 || slots > 64) throw InputError("simulator requires 1 <= slots <= 64");
  if (z_dim < 1 || z_dim > 65536) throw InputError("simulator requires 1 <= z_dim <= 65536");
}

std::size_t QShape::adversary_dim() const {
  std::size_t d = z_dim;
  for (unsigned i = 0; i < slots; ++i) d <<= (m + lambda);
  return d;
}

QState::QState(QShape shape, std::size_t budget) : shape_(shape), budget_(budget) {
  shape_.validate();
  Basis zero;
  zero.x.assign(shape.slots, 0);
  zero.y.assign(shape.slots, 0);
  amps_[encode(zero)] = 1.0;
}

std::string QState::encode(const Basis& b) const {
  if (b.x.size() != shape_.slots || b.y.size() != shape_.slots) throw InputError("basis slot count mismatch");
  std::string key;
  key.reserve(db_offset(shape_) + 2 * b.db.size());
  for (unsigned i = 0; i < shape_.slots; ++i) {
    if (b.x[i] >> shape_.m || b.y[i] >> shape_.lambda) throw InputError("basis register value out of range");
    key.push_back(static_cast<char>(b.x[i]));
    key.push_back(static_cast<char>(b.y[i]));
  }
  if (b.z >= shape_.z_dim) throw InputError("basis z value out of range");
  key.push_back(static_cast<char>(b.z >> 8));
  key.push_back(static_cast<char>(b.z & 0xFF));
  QDatabase db = b.db;
  std::sort(db.begin(), db.end());
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (i > 0 && db[i].first == db[i - 1].first) throw InputError("database has a duplicate x");
    if (db[i].first >> shape_.m || db[i].second >> shape_.lambda) throw InputError("database entry out of range");
    key.push_back(static_cast<char>(db[i].first));
    key.push_back(static_cast<char>(db[i].second));
  }
  return key;
}

Basis QState::decode(const std::string& key) const {
  Basis b;
  for (unsigned i = 1; i <= shape_.slots; ++i) {
    b.x.push_back(slot_x(key, i));
    b.y.push_back(slot_y(key, i));
  }
  const std::size_t zpos = 2 * std::size_t{shape_.slots};
  b.z = (std::uint32_t{byte_at(key, zpos)} << 8) | byte_at(key, zpos + 1);
  b.db = database_part(key);
  return b;
}

std::string QState::adversary_part(const std::string& key) const { return key.substr(0, db_offset(shape_)); }

QDatabase QState::database_part(const std::string& key) const {
  QDatabase db;
  for (std::size_t p = db_offset(shape_); p + 1 < key.size(); p += 2) {
    db.emplace_back(byte_at(key, p), byte_at(key, p + 1));
  }
  return db;
}

Amplitude QState::amplitude(const Basis& b) const {
  auto it = amps_.find(encode(b));
  return it == amps_.end() ? Amplitude{} : it->second;
}

double QState::norm_squared() const {
  double acc = 0;
  for (const auto& [k, a] : amps_) acc += std::norm(a);
  return acc;
}

void QState::assign(Map amps) {
  std::erase_if(amps, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
  if (amps.size() > budget_) {
    throw ResourceError("state has " + std::to_string(amps.size()) + " nonzero amplitudes, budget is " +
                        std::to_string(budget_));
  }
  amps_ = std::move(amps);
}

QState QState::from_terms(QShape shape, std::size_t capacity, const std::vector<std::pair<Basis, Amplitude>>& terms,
                          std::size_t budget) {
  QState s(shape, budget);
  s.capacity_ = capacity;
  Map amps;
  for (const auto& [b, a] : terms) {
    if (b.db.size() > capacity) throw InputError("basis database exceeds capacity");
    amps[s.encode(b)] += a;
  }
  s.assign(std::move(amps));
  return s;
}

double max_distance(const QState& a, const QState& b) {
  double d = 0;
  for (const auto& [k, v] : a.amplitudes()) {
    auto it = b.amplitudes().find(k);
    d = std::max(d, std::abs(v - (it == b.amplitudes().end() ? Amplitude{} : it->second)));
  }
  for (const auto& [k, v] : b.amplitudes()) {
    if (!a.amplitudes().contains(k)) d = std::max(d, std::abs(v));
  }
  return d;
}

QState std_decomp(const QState& s, unsigned slot) {
  const QShape& shape = s.shape();
  check_slot(shape, slot);
  const std::uint32_t Y = 1U << shape.lambda;
  const double c = std::pow(2.0, -0.5 * shape.lambda);
  const double inv = 1.0 / Y;
  const std::size_t t = s.capacity();
  const QState::Map& in = s.amplitudes();
  auto get = [&](const std::string& k) {
    const auto it = in.find(k);
    return it == in.end() ? Amplitude{} : it->second;
  };
  // Work fiber by fiber: the key K0 with x undefined and the Y keys with (x, y) added.
  // Writing b = amp(K0) and S = Σ_y a_y, the fiber maps to
  //   K0 -> c·S,   K0 ∪ (x,y) -> a_y - S/Y + c·b,
  // so every output key is produced once and the cancelling terms never hit the map.
  QState::Map out;
  out.reserve(s.size() + s.size() / 2);
  auto put = [&](const std::string& k, Amplitude v) {
    if (std::abs(v) < kPruneThreshold) return;
    out.emplace(k, v);
    if (out.size() > s.budget()) {
      throw ResourceError("state exceeds the budget of " + std::to_string(s.budget()) + " nonzero amplitudes");
    }
  };
  std::vector<Amplitude> a(Y);
  std::string k0, filled;
  for (const auto& [key, amp] : in) {
    const std::uint32_t x = slot_x(key, slot);
    const auto [pos, found] = find_entry(shape, key, x);
    if (!found && db_size(shape, key) >= t) {
      put(key, amp);
      continue;
    }
    k0 = key;
    if (found) k0.erase(pos, 2);
    filled = k0;
    filled.insert(pos, 2, '\0');
    filled[pos] = static_cast<char>(x);
    // Only the first present member, in the order K0, y = 0, 1, ..., handles the fiber.
    if (found) {
      if (in.contains(k0)) continue;
      bool earlier = false;
      for (std::uint32_t y = 0; y < byte_at(key, pos + 1) && !earlier; ++y) {
        filled[pos + 1] = static_cast<char>(y);
        earlier = in.contains(filled);
      }
      if (earlier) continue;
    }
    const Amplitude b = found ? Amplitude{} : amp;
    Amplitude S{};
    for (std::uint32_t y = 0; y < Y; ++y) {
      filled[pos + 1] = static_cast<char>(y);
      a[y] = get(filled);
      S += a[y];
    }
    put(k0, c * S);
    for (std::uint32_t y = 0; y < Y; ++y) {
      filled[pos + 1] = static_cast<char>(y);
      put(filled, a[y] - S * inv + c * b);
    }
  }
  QState r(shape, s.budget());
  r.set_capacity(t);
  r.assign(std::move(out));
  return r;
}

QState increase(const QState& s, std::size_t count) {
  QState r = s;
  r.set_capacity(s.capacity() + count);
  return r;
}

namespace {

// Sequential forms that drop each intermediate as soon as the next one exists.

QState cphso_from(QState s) {
  s.set_capacity(s.capacity() + 1);
  s = std_decomp(s, 1);
  s = cphso_prime(s, 1);
  return std_decomp(s, 1);
}

QState scphso_from(QState s, unsigned i) {
  if (i != 1) s = swap_slots(s, 1, i);
  s = cphso_from(std::move(s));
  if (i != 1) s = swap_slots(s, 1, i);
  return s;
}

}  // namespace

QState cphso_prime(const QState& s, unsigned slot) {
  check_slot(s.shape(), slot);
  return transform(s, [&](const std::string& key, Amplitude a, QState::Map& out) {
    const auto [pos, found] = find_entry(s.shape(), key, slot_x(key, slot));
    const bool flip = found && (std::popcount(slot_y(key, slot) & byte_at(key, pos + 1)) & 1U);
    out[key] += flip ? -a : a;
  });
}

QState cphso_prime_k(const QState& s, unsigned k) {
  if (k > s.shape().slots) throw InputError("parallel width exceeds slot count");
  return transform(s, [&](const std::string& key, Amplitude a, QState::Map& out) {
    unsigned parity = 0;
    for (unsigned j = 1; j <= k; ++j) {
      const auto [pos, found] = find_entry(s.shape(), key, slot_x(key, j));
      if (found) parity += std::popcount(slot_y(key, j) & byte_at(key, pos + 1));
    }
    out[key] += (parity & 1U) ? -a : a;
  });
}

QState cphso(const QState& s) { return cphso_from(s); }

QState swap_slots(const QState& s, unsigned i, unsigned j) {
  check_slot(s.shape(), i);
  check_slot(s.shape(), j);
  if (i == j) return s;
  return transform(s, [&](const std::string& key, Amplitude a, QState::Map& out) {
    std::string k = key;
    std::swap(k[2 * (i - 1)], k[2 * (j - 1)]);
    std::swap(k[2 * (i - 1) + 1], k[2 * (j - 1) + 1]);
    out[k] += a;
  });
}

QState scphso(const QState& s, unsigned i) {
  check_slot(s.shape(), i);
  return scphso_from(s, i);
}

QState cphso_k(const QState& s, unsigned k) {
  if (k > s.shape().slots) throw InputError("parallel width exceeds slot count");
  QState r = s;
  for (unsigned i = 1; i <= k; ++i) r = scphso_from(std::move(r), i);
  return r;
}

QState alt_parallel_cphso(const QState& s, unsigned k) {
  if (k > s.shape().slots) throw InputError("parallel width exceeds slot count");
  // With t raised by k first, the StdDecomp_{x_j} never hit the full-capacity case:
  // those for distinct x commute and each is an involution, so product order is immaterial.
  QState r = increase(s, k);
  for (unsigned j = 1; j <= k; ++j) r = std_decomp(r, j);
  r = cphso_prime_k(r, k);
  for (unsigned j = 1; j <= k; ++j) r = std_decomp(r, j);
  return r;
}

QState standard_phase(const QState& s, const std::vector<std::uint32_t>& H, unsigned k) {
  if (H.size() != (std::size_t{1} << s.shape().m)) throw InputError("oracle table size must be 2^m");
  if (k > s.shape().slots) throw InputError("parallel width exceeds slot count");
  return transform(s, [&](const std::string& key, Amplitude a, QState::Map& out) {
    unsigned parity = 0;
    for (unsigned j = 1; j <= k; ++j) parity += std::popcount(slot_y(key, j) & H[slot_x(key, j)]);
    out[key] += (parity & 1U) ? -a : a;
  });
}

Register Register::parse(const std::string& name) {
  if (name == "z") return {RegKind::kZ, 0};
  if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) throw InputError("bad register name: " + name);
  unsigned slot = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') throw InputError("bad register name: " + name);
    slot = slot * 10 + static_cast<unsigned>(name[i] - '0');
    if (slot > 1000) throw InputError("bad register name: " + name);
  }
  return {name[0] == 'x' ? RegKind::kX : RegKind::kY, slot};
}

std::string Register::name() const {
  if (kind == RegKind::kZ) return "z";
  return (kind == RegKind::kX ? "x" : "y") + std::to_string(slot);
}

unsigned register_dim(const QShape& shape, const Register& r) {
  switch (r.kind) {
    case RegKind::kX:
      return 1U << shape.m;
    case RegKind::kY:
      return 1U << shape.lambda;
    case RegKind::kZ:
      return shape.z_dim;
  }
  return 0;
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

namespace {

std::size_t targets_dim(const QShape& shape, const std::vector<Register>& targets) {
  std::size_t d = 1;
  for (const auto& r : targets) {
    d *= register_dim(shape, r);
    if (d > 4096) throw InputError("gate acts on more than 4096 dimensions");
  }
  return d;
}

void check_targets(const QShape& shape, const std::vector<Register>& targets) {
  if (targets.empty()) throw InputError("gate has no target registers");
  std::set<std::string> seen;
  for (const auto& r : targets) {
    if (r.kind != RegKind::kZ) check_slot(shape, r.slot);
    if (!seen.insert(r.name()).second) throw InputError("gate targets register " + r.name() + " twice");
  }
}

}  // namespace

std::vector<Register> all_registers(const QShape& shape) {
  std::vector<Register> regs;
  for (unsigned i = 1; i <= shape.slots; ++i) {
    regs.push_back({RegKind::kX, i});
    regs.push_back({RegKind::kY, i});
  }
  regs.push_back({RegKind::kZ, 0});
  return regs;
}

Gate hadamard_gate(const QShape& shape, std::vector<Register> targets) {
  check_targets(shape, targets);
  for (const auto& r : targets) {
    if (!is_power_of_two(register_dim(shape, r))) throw InputError("Hadamard needs a power-of-two register");
  }
  const std::size_t d = targets_dim(shape, targets);
  Eigen::MatrixXcd h(d, d);
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) h(i, j) = (std::popcount(i & j) & 1U) ? -c : c;
  }
  return {"hadamard", std::move(targets), std::move(h)};
}

Gate not_gate(const QShape& shape, std::vector<Register> targets) {
  check_targets(shape, targets);
  for (const auto& r : targets) {
    if (!is_power_of_two(register_dim(shape, r))) throw InputError("NOT needs a power-of-two register");
  }
  const std::size_t d = targets_dim(shape, targets);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) p(d - 1 - i, i) = 1.0;
  return {"not", std::move(targets), std::move(p)};
}

Gate random_gate(const QShape& shape, std::vector<Register> targets, std::uint64_t seed) {
  check_targets(shape, targets);
  const auto d = static_cast<Eigen::Index>(targets_dim(shape, targets));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Amplitude rd = r(j, j);
    if (std::abs(rd) > 0) q.col(j) *= rd / std::abs(rd);
  }
  return {"random", std::move(targets), std::move(q)};
}

QState apply_gate(const QState& s, const Gate& g) {
  const QShape& shape = s.shape();
  check_targets(shape, g.targets);
  const std::size_t d = targets_dim(shape, g.targets);
  if (static_cast<std::size_t>(g.matrix.rows()) != d || static_cast<std::size_t>(g.matrix.cols()) != d) {
    throw InputError("gate matrix dimension does not match its targets");
  }
  // Sparse columns of the matrix.
  std::vector<std::vector<std::pair<std::size_t, Amplitude>>> cols(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      const Amplitude v = g.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::abs(v) > 0) cols[j].emplace_back(i, v);
    }
  }
  std::vector<unsigned> dims;
  for (const auto& r : g.targets) dims.push_back(register_dim(shape, r));
  const std::size_t zpos = 2 * std::size_t{shape.slots};
  auto read = [&](const std::string& key, const Register& r) -> std::uint32_t {
    switch (r.kind) {
      case RegKind::kX:
        return slot_x(key, r.slot);
      case RegKind::kY:
        return slot_y(key, r.slot);
      case RegKind::kZ:
        return (std::uint32_t{byte_at(key, zpos)} << 8) | byte_at(key, zpos + 1);
    }
    return 0;
  };
  auto write = [&](std::string& key, const Register& r, std::uint32_t v) {
    switch (r.kind) {
      case RegKind::kX:
        key[2 * (r.slot - 1)] = static_cast<char>(v);
        break;
      case RegKind::kY:
        key[2 * (r.slot - 1) + 1] = static_cast<char>(v);
        break;
      case RegKind::kZ:
        key[zpos] = static_cast<char>(v >> 8);
        key[zpos + 1] = static_cast<char>(v & 0xFF);
        break;
    }
  };
  return transform(s, [&](const std::string& key, Amplitude a, QState::Map& out) {
    std::size_t col = 0;
    for (std::size_t t = 0; t < g.targets.size(); ++t) col = col * dims[t] + read(key, g.targets[t]);
    std::string k = key;
    for (const auto& [row, v] : cols[col]) {
      std::size_t rest = row;
      for (std::size_t t = g.targets.size(); t-- > 0;) {
        write(k, g.targets[t], static_cast<std::uint32_t>(rest % dims[t]));
        rest /= dims[t];
      }
      out[k] += v * a;
    }
  });
}

QState apply_step(const QState& s, const Step& step) {
  if (const auto* g = std::get_if<Gate>(&step)) return apply_gate(s, *g);
  const auto& sw = std::get<SlotSwap>(step);
  return swap_slots(s, sw.i, sw.j);
}

std::size_t AdversaryProgram::query_budget() const {
  std::size_t q = 0;
  for (const auto& r : rounds) q += r.width;
  return q;
}

void AdversaryProgram::validate() const {
  shape.validate();
  auto check = [&](const Step& step) {
    if (const auto* g = std::get_if<Gate>(&step)) {
      check_targets(shape, g->targets);
      const std::size_t d = targets_dim(shape, g->targets);
      if (static_cast<std::size_t>(g->matrix.rows()) != d || static_cast<std::size_t>(g->matrix.cols()) != d) {
        throw InputError("gate '" + g->name + "' matrix dimension does not match its targets");
      }
      if (!is_unitary(g->matrix)) throw InputError("gate '" + g->name + "' is not unitary to 1e-10");
    } else {
      const auto& sw = std::get<SlotSwap>(step);
      check_slot(shape, sw.i);
      check_slot(shape, sw.j);
    }
  };
  for (const auto& st : initial) check(st);
  for (const auto& r : rounds) {
    if (r.width < 1 || r.width > shape.slots) throw InputError("round width must be in [1, slots]");
    for (const auto& st : r.after) check(st);
  }
}

OracleVariant parse_variant(const std::string& name) {
  if (name == "sequential") return OracleVariant::kSequential;
  if (name == "alt-parallel") return OracleVariant::kAltParallel;
  throw InputError("unknown oracle variant: " + name);
}

std::string to_string(OracleVariant v) { return v == OracleVariant::kSequential ? "sequential" : "alt-parallel"; }

QState run_adversary(const AdversaryProgram& p, OracleVariant variant, std::size_t budget) {
  p.validate();
  QState s(p.shape, budget);
  for (const auto& st : p.initial) s = apply_step(s, st);
  for (const auto& r : p.rounds) {
    if (variant == OracleVariant::kSequential) {
      for (unsigned i = 1; i <= r.width; ++i) s = scphso_from(std::move(s), i);
    } else {
      s = alt_parallel_cphso(s, r.width);
    }
    for (const auto& st : r.after) s = apply_step(s, st);
  }
  return s;
}

QState run_standard(const AdversaryProgram& p, const std::vector<std::uint32_t>& H, std::size_t budget) {
  p.validate();
  QState s(p.shape, budget);
  for (const auto& st : p.initial) s = apply_step(s, st);
  for (const auto& r : p.rounds) {
    s = standard_phase(s, H, r.width);
    for (const auto& st : r.after) s = apply_step(s, st);
  }
  return s;
}

Distribution adversary_distribution(const QState& s) {
  Distribution d;
  for (const auto& [key, a] : s.amplitudes()) d[s.adversary_part(key)] += std::norm(a);
  return d;
}

double total_variation(const Distribution& a, const Distribution& b) {
  double acc = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    acc += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, p] : b) {
    if (!a.contains(k)) acc += p;
  }
  return acc / 2;
}

std::vector<std::vector<std::uint32_t>> all_oracles(unsigned m, unsigned lambda) {
  const std::size_t cells = std::size_t{1} << m;
  if (cells * lambda > 20) throw ResourceError("more than 2^20 explicit oracles to enumerate");
  const std::size_t count = std::size_t{1} << (cells * lambda);
  const std::uint32_t mask = (1U << lambda) - 1;
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(count);
  for (std::size_t h = 0; h < count; ++h) {
    std::vector<std::uint32_t> table(cells);
    for (std::size_t x = 0; x < cells; ++x) table[x] = static_cast<std::uint32_t>(h >> ((cells - 1 - x) * lambda)) & mask;
    out.push_back(std::move(table));
  }
  return out;
}

Distribution standard_oracle_reference(const AdversaryProgram& p, std::size_t budget) {
  const auto oracles = all_oracles(p.shape.m, p.shape.lambda);
  Distribution avg;
  const double w = 1.0 / static_cast<double>(oracles.size());
  for (const auto& H : oracles) {
    for (const auto& [k, prob] : adversary_distribution(run_standard(p, H, budget))) avg[k] += w * prob;
  }
  return avg;
}

double measure_probability(const QState& s, const DbPredicate& pred) {
  std::unordered_map<std::string, double> by_db;
  const std::size_t off = db_offset(s.shape());
  for (const auto& [key, a] : s.amplitudes()) by_db[key.substr(off)] += std::norm(a);
  double acc = 0;
  for (const auto& [dbkey, prob] : by_db) {
    QDatabase db;
    for (std::size_t p = 0; p + 1 < dbkey.size(); p += 2) db.emplace_back(byte_at(dbkey, p), byte_at(dbkey, p + 1));
    if (pred(db)) acc += prob;
  }
  return acc;
}

Database to_database(const QShape& shape, const QDatabase& db) {
  Database out(shape.lambda);
  for (const auto& [x, y] : db) out.insert(Bits::from_uint(x, shape.m), Bits::from_uint(y, shape.lambda));
  return out;
}

DbPredicate collide_predicate() {
  return [](const QDatabase& db) {
    std::set<std::uint32_t> ys;
    for (const auto& e : db) {
      if (!ys.insert(e.second).second) return true;
    }
    return false;
  };
}

DbPredicate contains_zero_predicate() {
  return [](const QDatabase& db) {
    return std::any_of(db.begin(), db.end(), [](const auto& e) { return e.second == 0; });
  };
}

DbPredicate path_predicate(const QShape& shape, std::size_t s, EdgeRule rule) {
  return [shape, s, rule](const QDatabase& db) { return has_walk_of_length(to_database(shape, db), s, rule); };
}

YInit parse_y_init(const std::string& name) {
  if (name == "hadamard") return YInit::kHadamard;
  if (name == "ones") return YInit::kOnes;
  throw InputError("y_init must be \"hadamard\" or \"ones\"");
}

std::string to_string(YInit y) { return y == YInit::kHadamard ? "hadamard" : "ones"; }

AdversaryProgram uniform_query_program(unsigned m, unsigned lambda, unsigned q, YInit y) {
  AdversaryProgram p;
  p.shape = {m, lambda, std::max(q, 1U), 1};
  p.shape.validate();
  for (unsigned i = 1; i <= p.shape.slots; ++i) {
    p.initial.emplace_back(hadamard_gate(p.shape, {{RegKind::kX, i}}));
    if (y == YInit::kHadamard) {
      p.initial.emplace_back(hadamard_gate(p.shape, {{RegKind::kY, i}}));
    } else {
      p.initial.emplace_back(not_gate(p.shape, {{RegKind::kY, i}}));
    }
  }
  for (unsigned r = 1; r <= q; ++r) {
    Round round;
    round.width = 1;
    if (r < q) round.after.emplace_back(SlotSwap{1, r + 1});
    p.rounds.push_back(std::move(round));
  }
  return p;
}

double collision_reference(unsigned m, unsigned lambda, unsigned q) {
  const auto oracles = all_oracles(m, lambda);
  const std::uint32_t cells = 1U << m;
  if (std::size_t{m} * q > 20) throw ResourceError("more than 2^20 query vectors to enumerate");
  const std::size_t vectors = std::size_t{1} << (m * q);
  std::size_t hits = 0;
  std::vector<std::uint32_t> xs(q);
  for (const auto& H : oracles) {
    for (std::size_t v = 0; v < vectors; ++v) {
      for (unsigned i = 0; i < q; ++i) xs[i] = static_cast<std::uint32_t>(v >> (m * i)) & (cells - 1);
      std::set<std::uint32_t> distinct(xs.begin(), xs.end());
      std::set<std::uint32_t> images;
      for (auto x : distinct) images.insert(H[x]);
      if (images.size() < distinct.size()) ++hits;
    }
  }
  return static_cast<double>(hits) / (static_cast<double>(oracles.size()) * static_cast<double>(vectors));
}

TupleProbabilities tuple_probabilities(const AdversaryProgram& p, unsigned k, const TupleRelation& rel,
                                       std::size_t budget) {
  if (k < 1 || k > p.shape.slots) throw InputError("tuple width must be in [1, slots]");
  TupleProbabilities out;
  const auto oracles = all_oracles(p.shape.m, p.shape.lambda);
  const double w = 1.0 / static_cast<double>(oracles.size());
  for (const auto& H : oracles) {
    const QState s = run_standard(p, H, budget);
    for (const auto& [key, a] : s.amplitudes()) {
      const Basis b = s.decode(key);
      std::vector<std::uint32_t> xs(b.x.begin(), b.x.begin() + k), ys(b.y.begin(), b.y.begin() + k);
      bool ok = true;
      for (unsigned j = 0; j < k && ok; ++j) ok = ys[j] == H[xs[j]];
      if (ok && rel(xs, ys)) out.p_std += w * std::norm(a);
    }
  }
  const QState s = run_adversary(p, OracleVariant::kSequential, budget);
  for (const auto& [key, a] : s.amplitudes()) {
    const Basis b = s.decode(key);
    std::vector<std::uint32_t> xs(b.x.begin(), b.x.begin() + k), ys(b.y.begin(), b.y.begin() + k);
    bool ok = true;
    for (unsigned j = 0; j < k && ok; ++j) {
      auto it = std::find_if(b.db.begin(), b.db.end(), [&](const auto& e) { return e.first == xs[j]; });
      ok = it != b.db.end() && it->second == ys[j];
    }
    if (ok && rel(xs, ys)) out.p_db += std::norm(a);
  }
  return out;
}

}  // namespace posw::qsim
