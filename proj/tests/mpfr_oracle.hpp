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

// Second arithmetic path for the bound formulas: MPFR at 512 bits, with each
// expression regrouped (common 2^-λ factors pulled out, square roots merged) so
// that it does not mirror the library's evaluation order.

#include <mpfr.h>

#include <string>

namespace mp {

constexpr mpfr_prec_t kPrec = 512;

class F {
 public:
  F() { mpfr_init2(v_, kPrec); mpfr_set_ui(v_, 0, MPFR_RNDN); }
  F(const char* s) { mpfr_init2(v_, kPrec); mpfr_set_str(v_, s, 10, MPFR_RNDN); }
  F(const std::string& s) : F(s.c_str()) {}
  F(long v) { mpfr_init2(v_, kPrec); mpfr_set_si(v_, v, MPFR_RNDN); }
  F(const F& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  F& operator=(const F& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
  ~F() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  friend F operator+(const F& a, const F& b) { F r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend F operator-(const F& a, const F& b) { F r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend F operator*(const F& a, const F& b) { F r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend F operator/(const F& a, const F& b) { F r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

 private:
  mpfr_t v_;
};

inline F scale2(const F& a, long e) { F r; mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN); return r; }
inline F sqrt(const F& a) { F r; mpfr_sqrt(r.get(), a.get(), MPFR_RNDN); return r; }
inline F root4(const F& a) { F r; mpfr_rootn_ui(r.get(), a.get(), 4, MPFR_RNDN); return r; }
inline F powu(const F& a, unsigned long k) { F r; mpfr_pow_ui(r.get(), a.get(), k, MPFR_RNDN); return r; }
inline F cube(const F& a) { return powu(a, 3); }

/// |a - b| / |b| (or |a| when b = 0).
inline double rel_err(const F& a, const F& b) {
  F d = a - b;
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  if (mpfr_zero_p(b.get())) return mpfr_get_d(d.get(), MPFR_RNDN);
  F m = b;
  mpfr_abs(m.get(), m.get(), MPFR_RNDN);
  return mpfr_get_d((d / m).get(), MPFR_RNDN);
}

// Regrouped forms of every bound.

inline F hseq(const F& q, const F& delta, long lambda, const F& N) {
  return scale2(cube(q) * delta * F(64 * lambda) + N * F(2), -lambda);
}

inline F posw(const F& q, const F& alpha, long lambda, long n) {
  const unsigned long k = static_cast<unsigned long>(lambda / n);
  const F tail = scale2(cube(q) * (F(2) + F(64 * (n + 2) * lambda)) + F(2 * static_cast<long>(k) * (n + 2)), -lambda);
  return powu(F(1) - alpha, k) * q * q * F(32) + tail;
}

inline F step_query(const F& q, const F& k, const F& delta, long lambda) {
  return sqrt(scale2((q + k) * delta * F(lambda) * F(16), -lambda));
}

inline F path_measure(const F& q, const F& delta, long lambda) { return scale2(cube(q) * delta * F(32 * lambda), -lambda); }

inline F lucky_query(const F& alpha, long lambda, long n) {
  return sqrt(powu(F(1) - alpha, static_cast<unsigned long>(lambda / n)) * F(16));
}

inline F lucky_total(const F& q, const F& alpha, long lambda, long n) {
  return powu(F(1) - alpha, static_cast<unsigned long>(lambda / n)) * q * q * F(16);
}

inline F collision(const F& q, long lambda) { return scale2(cube(q), -lambda); }

inline F zhandry(const F& p, const F& k, long lambda) {
  const F kk = scale2(k, -lambda);
  return p + kk + sqrt(p * kk) * F(2);
}

inline F iterhash(const F& N, const F& q, const F& T, long lambda) {
  const F d = scale2(F(1), lambda);
  const F tail = sqrt(F(48 * lambda) * q * q * T) * N * N / root4(d);
  return scale2(N * N, -lambda) + F(1) / (d - N) + tail;
}

inline F grover(const F& q, long lambda, const F& c) { return scale2(c * q * q, -lambda); }

}  // namespace mp
