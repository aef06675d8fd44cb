"""Reading and writing algebras as JSON documents.

A document looks like::

    {"name": "m2q", "field": "QQ", "dimension": 4,
     "basis": ["e11", "e12", "e21", "e22"],
     "mu": [{"i": 0, "j": 0, "k": 0, "c": "1"}, ...],
     "bracket": "commutator"}

Coefficients are scalar strings (``"-1/2"``); integers are accepted too.
``bracket`` is optional; omitting it or giving ``"commutator"`` selects the
commutator of ``mu``.
"""
from __future__ import annotations

import hashlib
import json
import os

from .cochain import AlgebraSpec
from .errors import ParseError, ValidationError
from .field import field_from_string
from .library import builtin, is_builtin

_KEYS = {"name", "field", "dimension", "basis", "mu", "bracket"}


def _triples(F, dim, entries, label):
    if not isinstance(entries, list):
        raise ValidationError(f"{label}.format", "expected a list of {i, j, k, c} objects")
    table = {}
    for pos, entry in enumerate(entries):
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "k", "c"}:
            raise ValidationError(f"{label}.format", f"entry {pos} must have exactly the keys i, j, k, c")
        key = tuple(entry[x] for x in "ijk")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in key):
            raise ValidationError(f"{label}.index", f"entry {pos} has non-integer indices")
        if key in table:
            raise ValidationError(f"{label}.duplicate", f"triple {key} appears more than once")
        c = entry["c"]
        if isinstance(c, bool) or not isinstance(c, (int, str)):
            raise ValidationError(f"{label}.coefficient", f"entry {pos}: coefficient must be a string or integer")
        table[key] = F.parse_raw(str(c))
    return table


def parse_algebra(text: str, source: str = "<string>") -> AlgebraSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", (exc.lineno, exc.colno)) from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    unknown = set(doc) - _KEYS
    if unknown:
        raise ValidationError("file.keys", f"unknown keys {sorted(unknown)}")
    for key in ("field", "dimension", "mu"):
        if key not in doc:
            raise ValidationError("file.keys", f"missing required key {key!r}")
    F = field_from_string(str(doc["field"]))
    dim = doc["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ValidationError("dimension", f"must be a positive integer, got {dim!r}")
    mu = _triples(F, dim, doc["mu"], "mu")
    bracket = doc.get("bracket", "commutator")
    if bracket == "commutator":
        bracket = None
    else:
        bracket = _triples(F, dim, bracket, "bracket")
    return AlgebraSpec(doc.get("name", os.path.basename(source)), F, dim, mu, bracket, doc.get("basis"))


def load_algebra(path_or_name: str) -> AlgebraSpec:
    """A builtin name (``m2q``, ``random:7:2:0``, ...) or a path to a JSON document."""
    if is_builtin(path_or_name) and not os.path.exists(path_or_name):
        return builtin(path_or_name)
    with open(path_or_name, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), path_or_name)


def algebra_document(A: AlgebraSpec) -> dict:
    F = A.field

    def triples(table):
        return [{"i": i, "j": j, "k": k, "c": F.format_raw(c)} for (i, j, k), c in sorted(table.items())]

    return {
        "name": A.name,
        "field": str(F),
        "dimension": A.dim,
        "basis": list(A.basis_names),
        "mu": triples(A.mu),
        "bracket": "commutator" if A.bracket is None else triples(A.bracket),
    }


def dump_algebra(A: AlgebraSpec) -> str:
    return json.dumps(algebra_document(A), indent=2, sort_keys=True) + "\n"


def algebra_digest(A: AlgebraSpec) -> str:
    """sha256 of the canonical document, independent of the name."""
    doc = algebra_document(A)
    doc.pop("name")
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()
