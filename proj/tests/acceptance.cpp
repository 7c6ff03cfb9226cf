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

// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bounds_points.hpp"
#include "fixtures.hpp"
#include "mpfr_oracle.hpp"
#include "posw/bounds.hpp"
#include "posw/coloring.hpp"
#include "posw/dag.hpp"
#include "posw/experiments.hpp"
#include "posw/hgraph.hpp"
#include "posw/posw.hpp"
#include "posw/qsim.hpp"
#include "qsim_util.hpp"
#include "test_util.hpp"

using namespace posw;
using posw::testing::random_bits;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail, Clock::time_point start) {
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("[%s] C%-2d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title, detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void c1_completeness() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  int total = 0, accepted = 0;
  for (unsigned lambda : {8U, 16U, 256U}) {
    const Sha256Oracle H(lambda);
    for (unsigned n = 1; n <= 6; ++n) {
      for (int t = 0; t < 100; ++t) {
        const Bits chi = random_bits(rng, lambda);
        ++total;
        accepted += verify(H, n, chi, solve(H, n, chi)).accepted();
      }
    }
  }
  const double secs = since(t0);
  report(1, "PoSW completeness", accepted == total && secs < 30,
         fmt("%d/%d accepted, limit 30 s", accepted, total), t0);
}

void c2_tamper() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  const unsigned lambda = 16, n = 4;
  const Sha256Oracle H(lambda);
  const char* names[] = {"chi", "root", "challenge", "opening", "encoded"};
  int rejected[5] = {}, trials = 1000;
  for (int c = 0; c < 5; ++c) {
    for (int t = 0; t < trials; ++t) {
      const Bits chi = random_bits(rng, lambda);
      Proof p = solve(H, n, chi);
      bool rej = false;
      switch (c) {
        case 0: p.chi.flip(rng() % lambda); break;
        case 1: p.root_label.flip(rng() % lambda); break;
        case 2: p.challenges[rng() % p.challenges.size()].path ^= std::uint64_t{1} << (rng() % n); break;
        case 3: {
          auto& o = p.openings[rng() % p.openings.size()];
          o[rng() % o.size()].flip(rng() % lambda);
          break;
        }
        default: {
          auto bytes = encode_proof(p);
          bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1U << (rng() % 8));
          try {
            p = decode_proof(bytes);
          } catch (const MalformedProofError&) {
            rej = true;
          }
        }
      }
      if (!rej) rej = !verify(H, n, chi, p).accepted();
      rejected[c] += rej;
    }
  }
  int all = 0;
  std::string detail;
  for (int c = 0; c < 5; ++c) {
    all += rejected[c];
    detail += fmt("%s %d/%d, ", names[c], rejected[c], trials);
  }
  const double rate = static_cast<double>(all) / (5 * trials);
  detail += fmt("overall %.4f (need >= 0.99, openings 1.0)", rate);
  report(2, "Tamper soundness", rate >= 0.99 && rejected[3] == trials && since(t0) < 60, detail, t0);
}

std::vector<std::string> names_of(const std::vector<Node>& v) {
  std::vector<std::string> s;
  for (const Node& x : v) s.push_back(x.to_string());
  return s;
}

void c3_parents() {
  const auto t0 = Clock::now();
  using S = std::vector<std::string>;
  const bool a = names_of(parents(4, Node::from_string("0110"))) == S{"00", "010"};
  const bool b = names_of(parents(3, Node::from_string("111"))) == S{"0", "10", "110"};
  const bool c = names_of(parents(3, Node::root())) == S{"0", "1"};
  report(3, "Graph fixtures", a && b && c,
         fmt("u=0110 %s, node 111 %s, root %s", a ? "ok" : "bad", b ? "ok" : "bad", c ? "ok" : "bad"), t0);
}

void c4_hseq() {
  const auto t0 = Clock::now();
  const Database D = Database::from_json(posw::testing::read_text("example_h.json"));
  const auto lw = longest_walk(D, EdgeRule::kForward);
  const auto h = extract_hseq(D, 5, EdgeRule::kForward);
  const bool fixture = lw == std::optional<std::size_t>(5) && h &&
                       h->entries == std::vector<std::size_t>{0, 1, 2, 4, 6, 7} && verify_hseq(D, h->xs);
  std::mt19937_64 rng(4);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const Database R = posw::testing::random_database(rng, 6);
    for (std::size_t s = 0; s <= 6; ++s) mismatches += has_walk_of_length(R, s) != posw::testing::brute_force_walk(R, s);
  }
  report(4, "H-sequence fixture", fixture && mismatches == 0,
         fmt("longest walk %d, witness %s, DP vs exhaustive mismatches %d/7000", lw ? static_cast<int>(*lw) : -1,
             fixture ? "x1,x2,x3,x5,x7,x8" : "wrong", mismatches),
         t0);
}

void c5_round_sets() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5);
  int premise = 0, bad_violations = 0;
  while (premise < 10000) {
    const Database Dp = posw::testing::random_database(rng, 5);
    const std::size_t k = 1 + rng() % 4, s = rng() % 4;
    const auto q = posw::testing::random_queries(rng, Dp, k);
    const std::size_t i = rng() % k;
    if (Dp.lookup(q[i])) continue;
    Database D = Dp;
    D.insert(q[i], random_bits(rng, 2));
    if (bad_s_i(D, q, s, i)) continue;
    ++premise;
    bad_violations += bad_s_i(D, q, s, i + 1);
  }
  int inclusion = 0, subset_violations = 0;
  while (inclusion < 10000) {
    const Database D = posw::testing::random_database(rng, 6);
    const std::size_t k = 1 + rng() % 4, s = rng() % 5;
    const auto q = posw::testing::random_queries(rng, D, k);
    if (!has_walk_of_length(D, s + 1)) continue;
    ++inclusion;
    subset_violations += !bad_s_i(D, q, s, k);
  }
  report(5, "BAD implication and PATH inclusion", bad_violations == 0 && subset_violations == 0 && since(t0) < 120,
         fmt("BAD implication %d/%d violations, PATH_{s+1} in BAD_{s,k} %d/%d violations", bad_violations, premise,
             subset_violations, inclusion),
         t0);
}

void c6_coloring() {
  const auto t0 = Clock::now();
  using namespace posw::testing;
  const auto s = colsubtree_scenario();
  const auto x = PreimageIndex(s.D).smallest(s.root);
  bool red = false;
  if (x) {
    const auto sub = color_subtree(s.D, s.chi, Node::root(), *x, s.root, 3);
    auto col = [&](const char* v) {
      const auto it = sub.find(Node::from_string(v));
      return it == sub.end() ? Color::kGreen : it->second.color;
    };
    red = col("1") == Color::kRed && col("00") == Color::kRed && col("010") == Color::kRed &&
          col("") == Color::kGreen && col("0") == Color::kGreen && col("01") == Color::kGreen &&
          col("011") == Color::kGreen;
  }
  const ColoredTree drawn = colmt_drawn_tree();
  const auto m = colmt_scenario();
  const auto alg = colored_mt(m.D, m.chi, m.root, 3);
  const bool g = gptr(drawn, Node::from_string("011")) && !gptr(drawn, Node::from_string("000")) && alg &&
                 gptr(*alg, Node::from_string("011")) && !gptr(*alg, Node::from_string("000"));
  std::mt19937_64 rng(6);
  // A transcript with an output collision can colour honest nodes red (the smallest preimage wins),
  // so all-green is required of the collision-free ones and the rest are counted separately.
  int honest = 0, green = 0, colliding = 0;
  for (unsigned lambda : {8U, 16U, 256U}) {
    const Sha256Oracle H(lambda);
    for (unsigned n = 1; n <= 4; ++n) {
      for (int t = 0; t < 5; ++t) {
        const Bits chi = random_bits(rng, lambda);
        const Bits root = compute_labels(H, n, chi).at(Node::root());
        const Database D = transcript_database(H, n, chi);
        if (has_collision(D)) {
          ++colliding;
          continue;
        }
        const auto rep = audit(D, chi, root, n, 1);
        ++honest;
        bool all = rep.tree && rep.green_leaves == (std::size_t{1} << n);
        for (const Node& v : labeling_order(n)) all = all && rep.tree->color(v) == Color::kGreen;
        green += all;
      }
    }
  }
  report(6, "Coloring fixtures", red && g && honest > 0 && green == honest,
         fmt("red {1,00,010} %s, gPTR(011)=1 gPTR(000)=0 %s, honest all-green %d/%d (%d colliding transcripts "
             "skipped)",
             red ? "ok" : "bad", g ? "ok" : "bad", green, honest, colliding),
         t0);
}

void c7_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0, alt_worst = 0;
  int cases = 0;
  for (unsigned m = 1; m <= 2; ++m) {
    for (unsigned q = 0; q <= 2; ++q) {
      for (bool parallel : {false, true}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
          const auto p = qsim::random_program(m, 1, q, parallel, 2, 1000 * m + 100 * q + 10 * parallel + seed);
          const auto ref = qsim::standard_oracle_reference(p);
          worst = std::max(worst, qsim::total_variation(qsim::adversary_distribution(qsim::run_adversary(p)), ref));
          alt_worst = std::max(alt_worst, qsim::total_variation(qsim::adversary_distribution(qsim::run_adversary(
                                                                    p, qsim::OracleVariant::kAltParallel)),
                                                                ref));
          ++cases;
        }
      }
    }
  }
  report(7, "Simulator equivalence", worst <= 1e-9 && since(t0) < 300,
         fmt("%d programs at lambda=1, m in {1,2}, q <= 2: max TV %.3g (tol 1e-9); alternative parallel oracle "
             "max TV %.3g (informational)",
             cases, worst, alt_worst),
         t0);
}

void c8_unitarity() {
  const auto t0 = Clock::now();
  using namespace posw::qsim;
  std::mt19937_64 rng(8);
  const QShape sh{2, 2, 2, 2};
  const std::vector<std::pair<const char*, std::function<QState(const QState&)>>> variants{
      {"StdDecomp", [](const QState& s) { return std_decomp(s, 1); }},
      {"CPhsO", [](const QState& s) { return cphso(s); }},
      {"SCPhsO_2", [](const QState& s) { return scphso(s, 2); }},
      {"CPhsO^2", [](const QState& s) { return cphso_k(s, 2); }},
      {"alt-parallel", [](const QState& s) { return alt_parallel_cphso(s, 2); }},
  };
  std::string detail;
  bool pass = true;
  for (const auto& [name, op] : variants) {
    double dev = 0;
    for (int i = 0; i < 1000; ++i) dev = std::max(dev, std::abs(op(random_state(rng, sh)).norm_squared() - 1.0));
    pass = pass && dev <= 1e-12;
    detail += fmt("%s %.2g, ", name, dev);
  }
  double inv = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_state(rng, sh);
    for (unsigned slot = 1; slot <= 2; ++slot) inv = std::max(inv, max_distance(std_decomp(std_decomp(s, slot), slot), s));
  }
  pass = pass && inv <= 1e-12;
  detail += fmt("StdDecomp involution %.2g (tol 1e-12)", inv);
  report(8, "Simulator unitarity/involution", pass, "max |norm^2 - 1|: " + detail, t0);
}

void c9_collision() {
  const auto t0 = Clock::now();
  using namespace posw::qsim;
  bool pass = true;
  std::string detail;
  // Domain m = 2 throughout (the bound does not depend on m); the all-ones preparation also at m = 3.
  struct Point {
    unsigned m, lambda;
    YInit y;
  };
  std::vector<Point> points;
  for (unsigned lambda : {2U, 3U}) {
    points.push_back({2, lambda, YInit::kHadamard});
    points.push_back({2, lambda, YInit::kOnes});
    points.push_back({3, lambda, YInit::kOnes});
  }
  for (const auto& [m, lambda, y] : points) {
    for (unsigned q = 1; q <= 3; ++q) {
      const auto s = run_adversary(uniform_query_program(m, lambda, q, y), OracleVariant::kSequential,
                                   std::size_t{1} << 24);
      const double p = measure_probability(s, collide_predicate());
      const double bound = std::pow(q, 3) / std::ldexp(1.0, static_cast<int>(lambda));
      pass = pass && p <= bound;
      detail += fmt("m=%u lambda=%u %s q=%u %.4f<=%.3g; ", m, lambda, to_string(y).c_str(), q, p, bound);
    }
  }
  report(9, "Collision bound at toy scale", pass, detail, t0);
}

void c10_bounds() {
  const auto t0 = Clock::now();
  using namespace posw::bounds;
  double worst = 0;
  int points = 0;
  for (const auto& pt : bounds_test::grid()) {
    const Real lib = evaluate(pt.bound, pt.params).raw;
    worst = std::max(worst, mp::rel_err(mp::F(format_real(lib, 80)), pt.reference()));
    ++points;
  }
  int trips = 0, broken = 0;
  for (const std::string name : {"hseq", "posw", "path_measure", "collision", "lucky_total", "step_query",
                                 "step_round", "iterhash", "grover"}) {
    for (unsigned target : {0U, 20U, 40U, 64U}) {
      BoundParams p;
      p.lambda = 256;
      p.n = 16;
      p.alpha = Real("0.5");
      p.T = 1;
      const auto q = max_secure_q(name, p, target);
      if (!q) continue;
      ++trips;
      const Real t = boost::multiprecision::ldexp(Real(1), -static_cast<int>(target));
      BoundParams at = p, next = p;
      at.q = *q;
      next.q = *q + 1;
      broken += !(evaluate(name, at).raw <= t && evaluate(name, next).raw > t);
    }
  }
  report(10, "Bounds cross-check", worst <= 1e-30 && broken == 0 && trips > 0 &&
                                       points == static_cast<int>(5 * bound_names().size()),
         fmt("%d points max rel err %.3g (tol 1e-30); max_secure_q round trips %d/%d", points, worst, trips - broken,
             trips),
         t0);
}

void c11_lucky() {
  const auto t0 = Clock::now();
  const unsigned n = 3, lambda = 8;
  const unsigned k = lambda / n, kp = lambda - k * n;
  std::mt19937_64 rng(11);
  const Sha256Oracle H(lambda);
  std::vector<std::pair<Database, std::pair<Bits, Bits>>> cases;
  const auto m = posw::testing::colmt_scenario();
  cases.push_back({m.D, {m.chi, m.root}});
  for (int t = 0; t < 60; ++t) {
    const Bits chi = random_bits(rng, lambda);
    const Database honest = transcript_database(H, n, chi);
    cases.push_back({posw::testing::corrupt_transcript(rng, honest), {chi, compute_labels(H, n, chi).at(Node::root())}});
  }
  int checked = 0, count_bad = 0, bound_checks = 0, bound_bad = 0;
  for (const auto& [D, cr] : cases) {
    const auto& [chi, root] = cr;
    const auto tree = colored_mt(D, chi, root, n);
    if (!tree) continue;
    const auto pred = lucky_strings(D, chi, root, n, lambda);
    std::uint64_t count = 0;
    for (std::uint64_t w = 0; w < (1U << lambda); ++w) count += pred(Bits::from_uint(w, lambda));
    const std::uint64_t g = green_path_leaves(*tree);
    std::uint64_t expect = std::uint64_t{1} << kp;
    for (unsigned i = 0; i < k; ++i) expect *= g;
    ++checked;
    count_bad += count != expect;
    for (int a = 1; a <= 9; ++a) {
      const double alpha = a / 10.0;
      if (static_cast<double>(g) > (1 - alpha) * (1 << n)) continue;
      ++bound_checks;
      bound_bad += static_cast<double>(count) > std::ldexp(1.0, n * k + kp) * std::pow(1 - alpha, k);
    }
  }
  report(11, "Lucky-tuple count identity", checked > 0 && count_bad == 0 && bound_bad == 0 && bound_checks > 0,
         fmt("n=3 lambda=8: %d trees count == g^k 2^k' mismatches %d; bound checks %d violations %d", checked,
             count_bad, bound_checks, bound_bad),
         t0);
}

}  // namespace

int main() {
  c1_completeness();
  c2_tamper();
  c3_parents();
  c4_hseq();
  c5_round_sets();
  c6_coloring();
  c7_equivalence();
  c8_unitarity();
  c9_collision();
  c10_bounds();
  c11_lucky();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
