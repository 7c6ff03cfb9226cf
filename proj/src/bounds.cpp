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

#include "posw/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "posw/bits.hpp"

namespace posw::bounds {

namespace {

Real two_to(unsigned lambda) { return boost::multiprecision::ldexp(Real(1), static_cast<int>(lambda)); }

Real floor_div(unsigned lambda, unsigned n) { return Real(lambda / n); }

void require_n(unsigned lambda, unsigned n) {
  if (n < 1) throw InputError("n must be at least 1");
  if (lambda < 1) throw InputError("lambda must be at least 1");
}

const Real kSearchCap = boost::multiprecision::ldexp(Real(1), 300);

}  // namespace

Real parse_real(const std::string& text) {
  const auto caret = text.find('^');
  try {
    if (caret == std::string::npos) return Real(text);
    if (caret < 1 || text[caret - 1] != '2') throw InputError("only powers of two are accepted: " + text);
    Real mult = 1;
    const std::string head = text.substr(0, caret - 1);
    if (!head.empty()) {
      if (head.back() != '*') throw InputError("expected a*2^e: " + text);
      mult = Real(head.substr(0, head.size() - 1));
    }
    const long e = std::stol(text.substr(caret + 1));
    if (e < -100000 || e > 100000) throw InputError("exponent out of range: " + text);
    return boost::multiprecision::ldexp(mult, static_cast<int>(e));
  } catch (const std::runtime_error&) {
    throw InputError("not a number: " + text);
  } catch (const std::logic_error&) {
    throw InputError("not a number: " + text);
  }
}

std::string format_real(const Real& v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

Real pow2(const Real& e) { return boost::multiprecision::pow(Real(2), e); }

Real hseq_bound(const Real& q, const Real& delta, unsigned lambda, const Real& N) {
  const Real d = two_to(lambda);
  return 64 * q * q * q * delta * lambda / d + 2 * N / d;
}

Real posw_bound(const Real& q, const Real& alpha, unsigned lambda, unsigned n) {
  require_n(lambda, n);
  const Real k = floor_div(lambda, n);
  const Real d = two_to(lambda);
  const Real q3 = q * q * q;
  return 32 * q * q * boost::multiprecision::pow(1 - alpha, k) + 2 * q3 / d + 64 * q3 * (n + 2) * lambda / d +
         2 * k * (n + 2) / d;
}

StepBounds step_bounds(const Real& q, const Real& k, const Real& delta, unsigned lambda) {
  const Real per_query = 4 * sqrt(q * delta * lambda + k * delta * lambda) / sqrt(two_to(lambda));
  return {per_query, k * per_query};
}

Real path_measure_bound(const Real& q, const Real& delta, unsigned lambda) {
  return 32 * q * q * q * delta * lambda / two_to(lambda);
}

LuckyBounds lucky_bounds(const Real& q, const Real& alpha, unsigned lambda, unsigned n) {
  require_n(lambda, n);
  const Real k = floor_div(lambda, n);
  return {4 * boost::multiprecision::pow(1 - alpha, k / 2), 16 * q * q * boost::multiprecision::pow(1 - alpha, k)};
}

Real collision_bound(const Real& q, unsigned lambda) { return q * q * q / two_to(lambda); }

Real zhandry_relation(const Real& p_prime, const Real& k, unsigned lambda) {
  const Real r = sqrt(p_prime) + sqrt(k / two_to(lambda));
  return r * r;
}

Real iterhash_bound(const Real& N, const Real& q, const Real& T, unsigned lambda) {
  const Real d = two_to(lambda);
  if (N >= d) throw InputError("iterhash bound requires N < 2^lambda");
  const Real N2 = N * N;
  return N2 / d + 1 / (d - N) + sqrt(48 * Real(lambda) * N2 * N2 * q * q * T / sqrt(d));
}

Real grover_bound(const Real& q, unsigned lambda, const Real& c) { return c * q * q / two_to(lambda); }

const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names = {"hseq",        "posw",        "step_query", "step_round",
                                                 "path_measure", "lucky_query", "lucky_total", "collision",
                                                 "zhandry",     "iterhash",    "grover"};
  return names;
}

BoundParams BoundParams::resolved(const std::string& bound) const {
  BoundParams p = *this;
  if (p.lambda < 1) throw InputError("lambda must be at least 1");
  if (p.n) {
    if (*p.n < 1 || *p.n > 1000) throw InputError("n must be in [1, 1000]");
    if (!p.N) p.N = boost::multiprecision::ldexp(Real(1), static_cast<int>(*p.n + 1)) - 1;
    if (!p.delta) p.delta = Real(*p.n + 2);
    if (!p.k) p.k = Real(p.lambda / *p.n);
  }
  if (!p.c) p.c = Real(1);
  auto need = [&](const std::optional<Real>& v, const char* name) {
    if (!v) throw InputError(std::string("bound '") + bound + "' needs parameter " + name);
    if (*v < 0) throw InputError(std::string("parameter ") + name + " must be nonnegative");
  };
  auto need_n = [&] {
    if (!p.n) throw InputError("bound '" + bound + "' needs parameter n");
  };
  auto need_alpha = [&] {
    need(p.alpha, "alpha");
    if (*p.alpha <= 0 || *p.alpha >= 1) throw InputError("alpha must lie in (0, 1)");
  };
  auto need_delta = [&] {
    need(p.delta, "delta");
    if (*p.delta < 1) throw InputError("delta must be at least 1");
  };
  if (bound == "hseq") {
    need(p.q, "q"), need_delta(), need(p.N, "N");
  } else if (bound == "posw" || bound == "lucky_total") {
    need(p.q, "q"), need_alpha(), need_n();
  } else if (bound == "lucky_query") {
    need_alpha(), need_n();
  } else if (bound == "step_query" || bound == "step_round") {
    need(p.q, "q"), need(p.k, "k"), need_delta();
  } else if (bound == "path_measure") {
    need(p.q, "q"), need_delta();
  } else if (bound == "collision" || bound == "grover") {
    need(p.q, "q");
  } else if (bound == "zhandry") {
    need(p.p_prime, "p_prime"), need(p.k, "k");
  } else if (bound == "iterhash") {
    need(p.N, "N"), need(p.q, "q"), need(p.T, "T");
  } else {
    throw InputError("unknown bound: " + bound);
  }
  return p;
}

BoundValue evaluate(const std::string& bound, const BoundParams& params) {
  const BoundParams p = params.resolved(bound);
  BoundValue v;
  v.name = bound;
  if (bound == "hseq") {
    v.raw = hseq_bound(*p.q, *p.delta, p.lambda, *p.N);
  } else if (bound == "posw") {
    v.raw = posw_bound(*p.q, *p.alpha, p.lambda, *p.n);
  } else if (bound == "step_query") {
    v.raw = step_bounds(*p.q, *p.k, *p.delta, p.lambda).per_query;
  } else if (bound == "step_round") {
    v.raw = step_bounds(*p.q, *p.k, *p.delta, p.lambda).per_round;
  } else if (bound == "path_measure") {
    v.raw = path_measure_bound(*p.q, *p.delta, p.lambda);
  } else if (bound == "lucky_query") {
    v.raw = lucky_bounds(0, *p.alpha, p.lambda, *p.n).per_query;
  } else if (bound == "lucky_total") {
    v.raw = lucky_bounds(*p.q, *p.alpha, p.lambda, *p.n).total;
  } else if (bound == "collision") {
    v.raw = collision_bound(*p.q, p.lambda);
  } else if (bound == "zhandry") {
    v.raw = zhandry_relation(*p.p_prime, *p.k, p.lambda);
  } else if (bound == "iterhash") {
    v.raw = iterhash_bound(*p.N, *p.q, *p.T, p.lambda);
  } else {
    v.raw = grover_bound(*p.q, p.lambda, *p.c);
    v.asymptotic = true;
  }
  v.clamped = v.raw > 1 ? Real(1) : v.raw;
  return v;
}

std::optional<Real> max_secure_q(const std::string& bound, const BoundParams& params, unsigned target_bits) {
  if (bound == "zhandry" || bound == "lucky_query") throw InputError("bound '" + bound + "' does not depend on q");
  const Real target = boost::multiprecision::ldexp(Real(1), -static_cast<int>(target_bits));
  auto at = [&](const Real& q) {
    BoundParams p = params;
    p.q = q;
    return evaluate(bound, p).raw;
  };
  if (at(0) > target) return std::nullopt;
  Real lo = 0, hi = 1;
  while (at(hi) <= target) {
    lo = hi;
    hi *= 2;
    if (hi > kSearchCap) return kSearchCap;
  }
  // at(lo) <= target < at(hi)
  while (hi - lo > 1) {
    const Real mid = floor((lo + hi) / 2);
    if (at(mid) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

namespace {

Real json_real(const nlohmann::json& v) {
  if (v.is_string()) return parse_real(v.get<std::string>());
  if (v.is_number_integer()) return Real(v.get<long long>());
  if (v.is_number_unsigned()) return Real(v.get<unsigned long long>());
  if (v.is_number_float()) return Real(v.dump());
  throw InputError("grid values must be numbers or numeric strings");
}

unsigned json_unsigned(const nlohmann::json& v, const char* name) {
  const Real r = json_real(v);
  if (r < 0 || r > 100000 || floor(r) != r) throw InputError(std::string(name) + " must be a small nonnegative integer");
  return r.convert_to<unsigned>();
}

}  // namespace

std::string evaluate_grid(const std::string& spec_json) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(spec_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("grid spec is not valid JSON: ") + e.what());
  }
  if (!spec.is_object()) throw InputError("grid spec must be a JSON object");
  std::vector<std::string> names;
  if (spec.contains("bounds")) {
    if (!spec["bounds"].is_array()) throw InputError("\"bounds\" must be an array");
    for (const auto& b : spec["bounds"]) names.push_back(b.get<std::string>());
  } else {
    names = bound_names();
  }
  const nlohmann::json grid = spec.value("grid", nlohmann::json::object());
  if (!grid.is_object()) throw InputError("\"grid\" must be an object");
  static const std::vector<std::string> keys = {"lambda", "n", "N", "q", "s", "k", "delta", "alpha", "T", "p_prime", "c"};
  std::vector<std::pair<std::string, std::vector<nlohmann::json>>> axes;
  for (const auto& [key, values] : grid.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw InputError("unknown grid parameter: " + key);
    if (!values.is_array()) throw InputError("grid parameter " + key + " must be an array");
    axes.emplace_back(key, std::vector<nlohmann::json>(values.begin(), values.end()));
  }
  std::optional<unsigned> target;
  if (spec.contains("target_bits")) target = json_unsigned(spec["target_bits"], "target_bits");

  nlohmann::ordered_json table;
  table["rows"] = nlohmann::ordered_json::array();
  const bool empty = names.empty() || axes.empty() ||
                     std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.second.empty(); });
  if (empty) return table.dump(2);

  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    BoundParams p;
    nlohmann::ordered_json echo;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto& key = axes[a].first;
      const auto& v = axes[a].second[idx[a]];
      echo[key] = v;
      if (key == "lambda") {
        p.lambda = json_unsigned(v, "lambda");
      } else if (key == "n") {
        p.n = json_unsigned(v, "n");
      } else {
        const Real r = json_real(v);
        if (key == "N") p.N = r;
        if (key == "q") p.q = r;
        if (key == "s") p.s = r;
        if (key == "k") p.k = r;
        if (key == "delta") p.delta = r;
        if (key == "alpha") p.alpha = r;
        if (key == "T") p.T = r;
        if (key == "p_prime") p.p_prime = r;
        if (key == "c") p.c = r;
      }
    }
    for (const auto& name : names) {
      const BoundValue v = evaluate(name, p);
      nlohmann::ordered_json row;
      row["bound"] = name;
      row["params"] = echo;
      row["raw"] = format_real(v.raw);
      row["clamped"] = format_real(v.clamped);
      row["vacuous"] = v.raw >= 1;
      if (v.raw > 0) {
        row["log2_raw"] = static_cast<double>(log2(v.raw));
      } else {
        row["log2_raw"] = nullptr;
      }
      row["asymptotic"] = v.asymptotic;
      if (v.asymptotic) row["note"] = "asymptotic: the constant c is a free parameter, not part of the stated bound";
      if (target && name != "zhandry" && name != "lucky_query") {
        const auto q = max_secure_q(name, p, *target);
        row["target_bits"] = *target;
        row["max_secure_q"] = q ? nlohmann::ordered_json(format_real(*q, 100)) : nlohmann::ordered_json(nullptr);
      }
      table["rows"].push_back(std::move(row));
    }
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return table.dump(2);
    }
  }
}

}  // namespace posw::bounds
