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

#include "posw/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "posw/bounds.hpp"

namespace posw::qsim {

namespace {

using ojson = nlohmann::ordered_json;

template <typename T>
T param(const nlohmann::json& spec, const char* name, T fallback) {
  if (!spec.contains(name)) return fallback;
  try {
    return spec.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad experiment parameter ") + name + ": " + e.what());
  }
}

unsigned small_param(const nlohmann::json& spec, const char* name, unsigned fallback, unsigned lo, unsigned hi) {
  const auto v = param<long long>(spec, name, fallback);
  if (v < lo || v > hi) {
    throw InputError(std::string("experiment parameter ") + name + " must be in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  return static_cast<unsigned>(v);
}

std::vector<Register> parse_targets(const QShape& shape, const nlohmann::json& t) {
  if (t.is_string() && t.get<std::string>() == "all") return all_registers(shape);
  if (!t.is_array()) throw InputError("gate targets must be an array of register names or \"all\"");
  std::vector<Register> out;
  for (const auto& name : t) {
    if (!name.is_string()) throw InputError("register names must be strings");
    out.push_back(Register::parse(name.get<std::string>()));
  }
  return out;
}

Step step_from_json(const QShape& shape, const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("program step must be an object");
  if (j.contains("swap")) {
    const auto& s = j["swap"];
    if (!s.is_array() || s.size() != 2) throw InputError("swap step needs [i, j]");
    return SlotSwap{s[0].get<unsigned>(), s[1].get<unsigned>()};
  }
  const std::string kind = j.value("gate", "");
  const auto targets = parse_targets(shape, j.value("targets", nlohmann::json("all")));
  if (kind == "hadamard") return hadamard_gate(shape, targets);
  if (kind == "not") return not_gate(shape, targets);
  if (kind == "random") return random_gate(shape, targets, j.value("seed", std::uint64_t{0}));
  if (kind == "matrix") {
    const auto& re = j.at("re");
    const nlohmann::json im = j.value("im", nlohmann::json::array());
    const auto d = static_cast<Eigen::Index>(re.size());
    Eigen::MatrixXcd u(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (re[r].size() != re.size()) throw InputError("matrix must be square");
      for (Eigen::Index c = 0; c < d; ++c) {
        const double imag = im.empty() ? 0.0 : im.at(r).at(c).get<double>();
        u(r, c) = {re[r][c].get<double>(), imag};
      }
    }
    return Gate{j.value("name", "matrix"), targets, u};
  }
  throw InputError("unknown gate: " + kind);
}

nlohmann::json step_to_json(const Step& step) {
  if (const auto* sw = std::get_if<SlotSwap>(&step)) return {{"swap", {sw->i, sw->j}}};
  const auto& g = std::get<Gate>(step);
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& r : g.targets) targets.push_back(r.name());
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) {
      rr.push_back(g.matrix(r, c).real());
      ri.push_back(g.matrix(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"gate", "matrix"}, {"name", g.name}, {"targets", targets}, {"re", re}, {"im", im}};
}

QState oracle_round(const QState& s, unsigned width, OracleVariant v) {
  return v == OracleVariant::kSequential ? cphso_k(s, width) : alt_parallel_cphso(s, width);
}

struct Traced {
  std::vector<QState> states;  // after U_0, then after each round
};

Traced trace(const AdversaryProgram& p, OracleVariant v, std::size_t budget) {
  p.validate();
  Traced t;
  QState s(p.shape, budget);
  for (const auto& st : p.initial) s = apply_step(s, st);
  t.states.push_back(s);
  for (const auto& r : p.rounds) {
    s = oracle_round(s, r.width, v);
    for (const auto& st : r.after) s = apply_step(s, st);
    t.states.push_back(s);
  }
  return t;
}

ojson run_collision(const nlohmann::json& spec, std::size_t budget) {
  const unsigned m = small_param(spec, "m", 2, 1, 4);
  const unsigned lambda = small_param(spec, "lambda", 2, 1, 8);
  const unsigned q = small_param(spec, "q", 2, 0, 8);
  const YInit y = parse_y_init(param<std::string>(spec, "y_init", "hadamard"));
  const auto p = uniform_query_program(m, lambda, q, y);
  const auto t = trace(p, OracleVariant::kSequential, budget);
  ojson rounds = ojson::array();
  for (std::size_t r = 0; r < t.states.size(); ++r) {
    const double b = std::pow(static_cast<double>(r), 3) / std::ldexp(1.0, static_cast<int>(lambda));
    rounds.push_back({{"round", r},
                      {"queries", r},
                      {"probabilities", {{"collide", measure_probability(t.states[r], collide_predicate())}}},
                      {"bound", b}});
  }
  const double prob = measure_probability(t.states.back(), collide_predicate());
  const double bound = std::pow(static_cast<double>(q), 3) / std::ldexp(1.0, static_cast<int>(lambda));
  const double reference = collision_reference(m, lambda, q);
  ojson out;
  out["params"] = {{"m", m}, {"lambda", lambda}, {"q", q}, {"y_init", to_string(y)}};
  out["rounds"] = rounds;
  out["result"] = {{"probability", prob},
                   {"bound", bound},
                   {"reference", reference},
                   {"within_bound", prob <= bound + 1e-9},
                   {"within_reference", prob <= reference + 1e-9}};
  out["pass"] = prob <= bound + 1e-9 && prob <= reference + 1e-9;
  return out;
}

ojson run_grover(const nlohmann::json& spec, std::size_t budget) {
  const unsigned m = small_param(spec, "m", 2, 1, 4);
  const unsigned lambda = small_param(spec, "lambda", 2, 1, 8);
  const unsigned q_max = small_param(spec, "q_max", 3, 0, 8);
  const double c = param<double>(spec, "c", 1.0);
  const YInit y = parse_y_init(param<std::string>(spec, "y_init", "hadamard"));
  const auto t = trace(uniform_query_program(m, lambda, q_max, y), OracleVariant::kSequential, budget);
  ojson curve = ojson::array();
  bool monotone = true;
  double prev = 0;
  for (std::size_t r = 0; r < t.states.size(); ++r) {
    const double pr = measure_probability(t.states[r], contains_zero_predicate());
    if (pr + 1e-12 < prev) monotone = false;
    prev = pr;
    const double fit = c * static_cast<double>(r * r) / std::ldexp(1.0, static_cast<int>(lambda));
    curve.push_back({{"round", r}, {"queries", r}, {"probabilities", {{"contains_zero", pr}}}, {"fit", fit}});
  }
  ojson out;
  out["params"] = {{"m", m}, {"lambda", lambda}, {"q_max", q_max}, {"c", c}, {"y_init", to_string(y)}};
  out["rounds"] = curve;
  out["result"] = {{"nondecreasing", monotone}, {"asymptotic", true}};
  out["pass"] = monotone;
  return out;
}

ojson run_path_growth(const nlohmann::json& spec, std::size_t budget) {
  const unsigned m = small_param(spec, "m", 2, 1, 4);
  const unsigned lambda = small_param(spec, "lambda", 1, 1, 8);
  const unsigned q = small_param(spec, "q", 3, 0, 8);
  const YInit y = parse_y_init(param<std::string>(spec, "y_init", "hadamard"));
  const EdgeRule rule = parse_edge_rule(param<std::string>(spec, "edge_rule", "substring"));
  const unsigned delta = std::max(1U, (m + lambda - 1) / lambda);
  const QShape shape{m, lambda, std::max(q, 1U), 1};
  const auto t = trace(uniform_query_program(m, lambda, q, y), OracleVariant::kSequential, budget);
  const double step =
      bounds::step_bounds(bounds::Real(q), bounds::Real(1), bounds::Real(delta), lambda).per_query.convert_to<double>();
  ojson rounds = ojson::array();
  std::vector<double> prev(q + 2, 0.0);
  double max_growth = 0;
  for (std::size_t r = 0; r < t.states.size(); ++r) {
    ojson probs, l2;
    for (unsigned s = 1; s <= q + 1; ++s) {
      const double pr = measure_probability(t.states[r], path_predicate(shape, s, rule));
      const double cur = std::sqrt(pr);
      if (r > 0) max_growth = std::max(max_growth, cur - prev[s]);
      prev[s] = cur;
      probs["path_" + std::to_string(s)] = pr;
      l2["path_" + std::to_string(s)] = cur;
    }
    rounds.push_back({{"round", r}, {"queries", r}, {"probabilities", probs}, {"l2", l2}});
  }
  ojson out;
  out["params"] = {{"m", m}, {"lambda", lambda}, {"q", q}, {"delta", delta}, {"y_init", to_string(y)},
                   {"edge_rule", to_string(rule)}};
  out["rounds"] = rounds;
  out["result"] = {{"max_l2_growth", max_growth}, {"step_bound", step}};
  out["pass"] = max_growth <= step + 1e-9;
  return out;
}

ojson run_equivalence(const nlohmann::json& spec, std::size_t budget) {
  const unsigned m = small_param(spec, "m", 1, 1, 2);
  const unsigned lambda = small_param(spec, "lambda", 1, 1, 2);
  const unsigned q = small_param(spec, "q", 2, 0, 3);
  const unsigned z_dim = small_param(spec, "z_dim", 2, 1, 4);
  const unsigned trials = small_param(spec, "trials", 5, 1, 1000);
  const auto seed = param<std::uint64_t>(spec, "seed", 1);
  const std::string layout = param<std::string>(spec, "layout", "sequential");
  if (layout != "sequential" && layout != "parallel") throw InputError("layout must be sequential or parallel");
  const OracleVariant v = parse_variant(param<std::string>(spec, "variant", "sequential"));
  double max_tv = 0;
  ojson per = ojson::array();
  for (unsigned i = 0; i < trials; ++i) {
    const auto p = random_program(m, lambda, q, layout == "parallel", z_dim, seed + i);
    const double tv = total_variation(adversary_distribution(run_adversary(p, v, budget)),
                                      standard_oracle_reference(p, budget));
    max_tv = std::max(max_tv, tv);
    per.push_back(tv);
  }
  ojson out;
  out["params"] = {{"m", m},           {"lambda", lambda}, {"q", q},         {"z_dim", z_dim}, {"trials", trials},
                   {"seed", seed},      {"layout", layout}, {"variant", to_string(v)}};
  out["result"] = {{"total_variation", per}, {"max_total_variation", max_tv}};
  out["pass"] = max_tv <= 1e-9;
  return out;
}

ojson run_tuple_relation(const nlohmann::json& spec, std::size_t budget) {
  const unsigned m = small_param(spec, "m", 2, 1, 3);
  const unsigned lambda = small_param(spec, "lambda", 2, 1, 3);
  const unsigned k = small_param(spec, "k", 1, 1, 2);
  const std::string relation = param<std::string>(spec, "relation", "any");
  TupleRelation rel;
  if (relation == "any") {
    rel = [](const auto&, const auto&) { return true; };
  } else if (relation == "zero") {
    rel = [](const auto&, const auto& y) { return std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; }); };
  } else if (relation == "distinct") {
    rel = [](const auto& x, const auto&) {
      auto s = x;
      std::sort(s.begin(), s.end());
      return std::adjacent_find(s.begin(), s.end()) == s.end();
    };
  } else {
    throw InputError("relation must be any, zero or distinct");
  }
  const auto tp = tuple_probabilities(standard_query_program(m, lambda, k), k, rel, budget);
  const double slack = std::sqrt(static_cast<double>(k) / std::ldexp(1.0, static_cast<int>(lambda)));
  const bool holds = std::sqrt(tp.p_std) <= std::sqrt(tp.p_db) + slack + 1e-9;
  ojson out;
  out["params"] = {{"m", m}, {"lambda", lambda}, {"k", k}, {"relation", relation}};
  out["result"] = {{"p", tp.p_std}, {"p_prime", tp.p_db}, {"slack", slack}, {"holds", holds}};
  out["pass"] = holds;
  return out;
}

ojson run_custom(const nlohmann::json& spec, std::size_t budget) {
  if (!spec.contains("program")) throw InputError("custom experiment needs a program");
  const auto p = program_from_json(spec["program"]);
  const OracleVariant v = parse_variant(param<std::string>(spec, "variant", "sequential"));
  std::vector<std::pair<std::string, DbPredicate>> preds;
  const nlohmann::json names = spec.value("predicates", nlohmann::json::array({"collide"}));
  for (const auto& n : names) {
    const std::string name = n.get<std::string>();
    if (name == "collide") {
      preds.emplace_back(name, collide_predicate());
    } else if (name == "contains_zero") {
      preds.emplace_back(name, contains_zero_predicate());
    } else if (name.starts_with("path_")) {
      preds.emplace_back(name, path_predicate(p.shape, std::stoul(name.substr(5))));
    } else if (name == "nonempty") {
      preds.emplace_back(name, [](const QDatabase& d) { return !d.empty(); });
    } else {
      throw InputError("unknown predicate: " + name);
    }
  }
  const auto t = trace(p, v, budget);
  ojson rounds = ojson::array();
  std::size_t queries = 0;
  for (std::size_t r = 0; r < t.states.size(); ++r) {
    if (r > 0) queries += p.rounds[r - 1].width;
    ojson probs;
    for (const auto& [name, pred] : preds) probs[name] = measure_probability(t.states[r], pred);
    rounds.push_back({{"round", r}, {"queries", queries}, {"probabilities", probs}, {"size", t.states[r].size()}});
  }
  ojson out;
  out["params"] = {{"variant", to_string(v)}, {"query_budget", p.query_budget()}};
  out["rounds"] = rounds;
  out["pass"] = true;
  return out;
}

}  // namespace

AdversaryProgram program_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("program must be a JSON object");
  AdversaryProgram p;
  try {
    p.shape = {j.at("m").get<unsigned>(), j.at("lambda").get<unsigned>(), j.value("slots", 1U), j.value("z_dim", 1U)};
    p.shape.validate();
    for (const auto& st : j.value("initial", nlohmann::json::array())) p.initial.push_back(step_from_json(p.shape, st));
    for (const auto& r : j.value("rounds", nlohmann::json::array())) {
      Round round;
      round.width = r.value("width", 1U);
      for (const auto& st : r.value("after", nlohmann::json::array())) round.after.push_back(step_from_json(p.shape, st));
      p.rounds.push_back(std::move(round));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad program document: ") + e.what());
  }
  p.validate();
  return p;
}

nlohmann::json program_to_json(const AdversaryProgram& p) {
  nlohmann::json j{{"m", p.shape.m}, {"lambda", p.shape.lambda}, {"slots", p.shape.slots}, {"z_dim", p.shape.z_dim}};
  j["initial"] = nlohmann::json::array();
  for (const auto& st : p.initial) j["initial"].push_back(step_to_json(st));
  j["rounds"] = nlohmann::json::array();
  for (const auto& r : p.rounds) {
    nlohmann::json after = nlohmann::json::array();
    for (const auto& st : r.after) after.push_back(step_to_json(st));
    j["rounds"].push_back({{"width", r.width}, {"after", after}});
  }
  return j;
}

AdversaryProgram random_program(unsigned m, unsigned lambda, unsigned q, bool parallel, unsigned z_dim,
                                std::uint64_t seed) {
  AdversaryProgram p;
  p.shape = {m, lambda, parallel ? std::max(q, 1U) : 1U, z_dim};
  p.shape.validate();
  const auto regs = all_registers(p.shape);
  p.initial.emplace_back(random_gate(p.shape, regs, seed * 1000 + 0));
  const unsigned rounds = parallel ? (q > 0 ? 1U : 0U) : q;
  for (unsigned r = 0; r < rounds; ++r) {
    Round round;
    round.width = parallel ? q : 1;
    round.after.emplace_back(random_gate(p.shape, regs, seed * 1000 + r + 1));
    p.rounds.push_back(std::move(round));
  }
  return p;
}

AdversaryProgram standard_query_program(unsigned m, unsigned lambda, unsigned k) {
  AdversaryProgram p;
  p.shape = {m, lambda, k, 1};
  p.shape.validate();
  for (unsigned i = 1; i <= k; ++i) {
    p.initial.emplace_back(hadamard_gate(p.shape, {{RegKind::kX, i}}));
    p.initial.emplace_back(hadamard_gate(p.shape, {{RegKind::kY, i}}));
  }
  Round round;
  round.width = k;
  for (unsigned i = 1; i <= k; ++i) round.after.emplace_back(hadamard_gate(p.shape, {{RegKind::kY, i}}));
  p.rounds.push_back(std::move(round));
  return p;
}

nlohmann::ordered_json run_experiment(const nlohmann::json& spec, std::size_t budget) {
  if (!spec.is_object()) throw InputError("experiment spec must be a JSON object");
  const std::string preset = param<std::string>(spec, "preset", "");
  if (spec.contains("budget")) budget = std::min<std::size_t>(budget, param<std::size_t>(spec, "budget", budget));
  ojson out;
  if (preset == "collision") {
    out = run_collision(spec, budget);
  } else if (preset == "grover") {
    out = run_grover(spec, budget);
  } else if (preset == "path-growth") {
    out = run_path_growth(spec, budget);
  } else if (preset == "oracle-equivalence") {
    out = run_equivalence(spec, budget);
  } else if (preset == "tuple-relation") {
    out = run_tuple_relation(spec, budget);
  } else if (preset == "custom") {
    out = run_custom(spec, budget);
  } else {
    throw InputError("unknown preset: \"" + preset + "\"");
  }
  ojson report;
  report["preset"] = preset;
  for (auto& [k, v] : out.items()) report[k] = v;
  return report;
}

}  // namespace posw::qsim
