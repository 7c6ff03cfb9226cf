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

"""Python access to the posw C++ core: proofs, database audits, simulator presets, bounds."""

import json

from ._core import (
    MalformedProofError,
    ResourceError,
    longest_walk,
    parents,
    proof_json,
    prove,
    run_cli,
    transcript_json,
    verify,
)
from . import _core

__all__ = [
    "MalformedProofError",
    "ResourceError",
    "audit",
    "bounds",
    "longest_walk",
    "parents",
    "proof_json",
    "prove",
    "run_cli",
    "simulate",
    "transcript_json",
    "verify",
]


def audit(db, chi, root, n, s, edge_rule=None):
    """Audit report for a database given as a dict or JSON text.

    The rule defaults to the document's "edge_rule" field, else substring.
    """
    doc = json.loads(db) if isinstance(db, str) else db
    rule = edge_rule or doc.get("edge_rule", "substring")
    return json.loads(_core.audit_json(json.dumps(doc), chi, root, n, s, rule))


def simulate(spec, budget=1 << 22):
    return json.loads(_core.simulate_json(json.dumps(spec), budget))


def bounds(grid):
    return json.loads(_core.bounds_json(json.dumps(grid)))
