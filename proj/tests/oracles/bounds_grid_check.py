# Copyright 2026 The posw-toolkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Recomputes every row of the frozen bounds grid golden file with mpmath."""

import json
import sys

from mpmath import mp, mpf, sqrt, root

mp.prec = 600


def num(s):
    s = str(s)
    if s.startswith("2^"):
        return mpf(2) ** int(s[2:])
    return mpf(s)


def formula(name, p, q):
    lam, n = int(p["lambda"]), int(p["n"])
    a, T = num(p["alpha"]), num(p["T"])
    N, delta, k = mpf(2) ** (n + 1) - 1, n + 2, lam // n
    d = mpf(2) ** lam
    if name == "hseq":
        return (64 * lam * q**3 * delta + 2 * N) / d
    if name == "posw":
        return 32 * q**2 * (1 - a) ** k + (2 * q**3 + 64 * q**3 * (n + 2) * lam + 2 * k * (n + 2)) / d
    if name == "collision":
        return q**3 / d
    if name == "grover":
        return q**2 / d
    if name == "iterhash":
        return N**2 / d + 1 / (d - N) + sqrt(48 * lam * q**2 * T) * N**2 / root(d, 4)
    raise ValueError(name)


def main(path):
    rows = json.load(open(path))["rows"]
    bad = 0
    for r in rows:
        p = r["params"]
        ref = formula(r["bound"], p, num(p["q"]))
        if abs(num(r["raw"]) - ref) > abs(ref) * mpf("1e-30"):
            print("raw mismatch", r["bound"], p)
            bad += 1
        if "max_secure_q" in r:
            t = mpf(2) ** -int(r["target_bits"])
            m = num(r["max_secure_q"])
            if not (formula(r["bound"], p, m) <= t < formula(r["bound"], p, m + 1)):
                print("max_secure_q mismatch", r["bound"], p, r["max_secure_q"])
                bad += 1
    print(f"{len(rows)} rows, {bad} mismatches")
    return 1 if bad or not rows else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
