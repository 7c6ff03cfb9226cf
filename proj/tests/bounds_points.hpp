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

// Five evaluation points per bound, shared by the unit and acceptance suites,
// each paired with its MPFR reference value.

#include <functional>
#include <string>
#include <vector>

#include "mpfr_oracle.hpp"
#include "posw/bounds.hpp"

namespace bounds_test {

using posw::bounds::BoundParams;
using posw::bounds::parse_real;

struct Point {
  std::string bound;
  std::string label;
  BoundParams params;
  std::function<mp::F()> reference;
};

/// "2^e" or a decimal, as both a library Real and an MPFR value.
inline mp::F mpv(const std::string& s) {
  const auto caret = s.find('^');
  if (caret == std::string::npos) return mp::F(s);
  return mp::scale2(mp::F(1), std::stol(s.substr(caret + 1)));
}

inline std::vector<Point> grid() {
  std::vector<Point> out;
  struct HS { long lambda; std::string q, delta, N; };
  for (const auto& h : std::vector<HS>{{128, "2^30", "4", "2^20"}, {256, "2^40", "22", "2^21"}, {64, "1000", "3", "7"},
                                       {192, "2^50", "10", "2^30"}, {80, "0", "5", "63"}}) {
    BoundParams p;
    p.lambda = h.lambda;
    p.q = parse_real(h.q), p.delta = parse_real(h.delta), p.N = parse_real(h.N);
    out.push_back({"hseq", h.q + "@" + std::to_string(h.lambda), p,
                   [h] { return mp::hseq(mpv(h.q), mpv(h.delta), h.lambda, mpv(h.N)); }});
  }
  struct PS { long lambda, n; std::string q, alpha; };
  const std::vector<PS> ps = {{256, 20, "2^40", "0.1"}, {128, 8, "2^20", "0.25"}, {512, 32, "2^60", "0.05"},
                              {64, 4, "1", "0.5"},      {200, 10, "0", "0.3"}};
  for (const auto& x : ps) {
    BoundParams p;
    p.lambda = x.lambda;
    p.n = x.n;
    p.q = parse_real(x.q), p.alpha = parse_real(x.alpha);
    out.push_back({"posw", x.q, p, [x] { return mp::posw(mpv(x.q), mpv(x.alpha), x.lambda, x.n); }});
    out.push_back({"lucky_query", x.alpha, p, [x] { return mp::lucky_query(mpv(x.alpha), x.lambda, x.n); }});
    out.push_back({"lucky_total", x.q, p, [x] { return mp::lucky_total(mpv(x.q), mpv(x.alpha), x.lambda, x.n); }});
  }
  struct SK { long lambda; std::string q, k, delta; };
  for (const auto& x : std::vector<SK>{{128, "2^30", "1", "4"}, {256, "2^40", "2^10", "22"}, {64, "0", "0", "3"},
                                       {96, "12345", "17", "8"}, {160, "2^55", "3", "2"}}) {
    BoundParams p;
    p.lambda = x.lambda;
    p.q = parse_real(x.q), p.k = parse_real(x.k), p.delta = parse_real(x.delta);
    out.push_back({"step_query", x.q, p, [x] { return mp::step_query(mpv(x.q), mpv(x.k), mpv(x.delta), x.lambda); }});
    out.push_back({"step_round", x.q, p,
                   [x] { return mp::step_query(mpv(x.q), mpv(x.k), mpv(x.delta), x.lambda) * mpv(x.k); }});
    out.push_back({"path_measure", x.q, p, [x] { return mp::path_measure(mpv(x.q), mpv(x.delta), x.lambda); }});
  }
  struct CO { long lambda; std::string q, p_prime, k, c; };
  for (const auto& x : std::vector<CO>{{8, "1", "0", "1", "1"}, {128, "2^40", "0.001", "3", "2"},
                                       {256, "2^80", "2^-100", "2^20", "0.5"}, {32, "77", "0.5", "7", "10"},
                                       {64, "2^21", "1", "1", "1"}}) {
    BoundParams p;
    p.lambda = x.lambda;
    p.q = parse_real(x.q), p.p_prime = parse_real(x.p_prime), p.k = parse_real(x.k), p.c = parse_real(x.c);
    out.push_back({"collision", x.q, p, [x] { return mp::collision(mpv(x.q), x.lambda); }});
    out.push_back({"zhandry", x.p_prime, p, [x] { return mp::zhandry(mpv(x.p_prime), mpv(x.k), x.lambda); }});
    out.push_back({"grover", x.q, p, [x] { return mp::grover(mpv(x.q), x.lambda, mpv(x.c)); }});
  }
  struct IH { long lambda; std::string N, q, T; };
  for (const auto& x : std::vector<IH>{{128, "2^20", "2^10", "100"}, {256, "2^40", "2^30", "2^20"}, {64, "1", "1", "1"},
                                       {32, "1000", "5", "3"}, {200, "2^60", "2^5", "7"}}) {
    BoundParams p;
    p.lambda = x.lambda;
    p.N = parse_real(x.N), p.q = parse_real(x.q), p.T = parse_real(x.T);
    out.push_back({"iterhash", x.N, p, [x] { return mp::iterhash(mpv(x.N), mpv(x.q), mpv(x.T), x.lambda); }});
  }
  return out;
}

}  // namespace bounds_test
