"""JSON ingestion of logics and emission of reports."""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import __version__
from .core import DomainError, FiniteStructure
from .formula import CLASSICAL, CLASSICAL_NO_BOT, NEG_IMP, Connective, ParseError, Signature, parse
from .gallery import ValidationError, load_builtin
from .matrix import Matrix

SIGNATURES = {"classical": CLASSICAL, "classical_no_bot": CLASSICAL_NO_BOT, "neg_imp": NEG_IMP}


def schema(name: str) -> dict:
    text = resources.files("explosion").joinpath("schemas", f"{name}.json").read_text("utf-8")
    return json.loads(text)


def validate(doc: Any, name: str) -> None:
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        where = "/".join(str(x) for x in e.absolute_path) or "<root>"
        raise ValidationError(f"{name} schema: {e.message} (at {where})") from None


def canonical_dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def digest(doc: Any) -> str:
    return hashlib.sha256(canonical_dumps(doc).encode("utf-8")).hexdigest()


# finite structures

def _indices(m: int) -> list[int]:
    return [i for i in range(m.bit_length()) if m >> i & 1]


def finite_to_json(s: FiniteStructure) -> dict:
    doc = {
        "kind": "finite",
        "carrier": list(s.names),
        "table": [[_indices(m), _indices(c)] for m, c in enumerate(s.table)],
        "unary_ops": {k: list(v) for k, v in sorted(s.unary_ops.items())},
        "constants": dict(sorted(s.constants.items())),
    }
    return doc


def finite_from_json(doc: dict) -> FiniteStructure:
    carrier = doc["carrier"]
    if isinstance(carrier, int):
        n, names = carrier, None
    else:
        n, names = len(carrier), tuple(carrier)
    entries = doc["table"]
    if len(entries) != 1 << n:
        raise ValidationError(f"finite table must list all {1 << n} subsets, got {len(entries)}")
    table = [0] * (1 << n)
    prev = -1
    for subset, cons in entries:
        if subset != sorted(set(subset)) or cons != sorted(set(cons)):
            raise ValidationError("subsets are written as strictly ascending index arrays")
        if any(i >= n for i in subset + cons):
            raise ValidationError(f"index outside the carrier of size {n}")
        m = sum(1 << i for i in subset)
        if m <= prev:
            raise ValidationError("table rows must be in ascending bitmask order")
        prev = m
        table[m] = sum(1 << i for i in cons)
    try:
        return FiniteStructure(n, tuple(table), doc.get("unary_ops", {}), doc.get("constants", {}), names)
    except DomainError as e:
        raise ValidationError(str(e)) from None


# matrices

def _signature_from(spec) -> Signature:
    if isinstance(spec, str):
        return SIGNATURES[spec]
    try:
        return Signature(tuple(
            Connective(c["name"], c["arity"], c.get("fixity", "infix" if c["arity"] == 2 else "prefix"),
                       tuple(c.get("aliases", ())))
            for c in spec
        ))
    except ValueError as e:
        raise ValidationError(f"signature: {e}") from None


def _table_from(values, name, arity, raw):
    idx = {v: i for i, v in enumerate(values)}

    def conv(x, depth):
        if depth == 0:
            if x not in idx:
                raise ValidationError(f"table {name!r}: unknown value {x!r}")
            return idx[x]
        if not isinstance(x, list) or len(x) != len(values):
            raise ValidationError(f"table {name!r} must be total: {len(values)} rows per level")
        return [conv(y, depth - 1) for y in x]

    return conv(raw, arity)


def matrix_from_json(doc: dict) -> Matrix:
    values = tuple(doc["values"])
    sig = _signature_from(doc["signature"])
    des = set(doc["designated"])
    if not des < set(values):
        raise ValidationError("designated values must be a proper subset of the values")
    raw = doc["tables"]
    missing = [c.name for c in sig.connectives if c.name not in raw]
    if missing:
        raise ValidationError(f"no table for {missing}")
    extra = set(raw) - {c.name for c in sig.connectives}
    if extra:
        raise ValidationError(f"tables for undeclared connectives {sorted(extra)}")
    tables = {c.name: _table_from(values, c.name, c.arity, raw[c.name]) for c in sig.connectives}
    conj = None
    if "conjunction" in doc:
        try:
            conj = parse(doc["conjunction"], sig)
        except ParseError as e:
            raise ValidationError(f"conjunction: {e}") from None
    try:
        return Matrix(doc.get("name", "matrix"), sig, values, frozenset(des), tables, conj)
    except DomainError as e:
        raise ValidationError(str(e)) from None


def _signature_to_json(sig: Signature):
    for k, v in SIGNATURES.items():
        if v == sig:
            return k
    return [{"name": c.name, "arity": c.arity, "fixity": c.fixity, "aliases": list(c.aliases)}
            for c in sig.connectives]


def matrix_to_json(m: Matrix) -> dict:
    def table(t):
        if t.ndim == 0:
            return m.values[int(t)]
        return [table(t[i]) for i in range(t.shape[0])]

    doc = {
        "kind": "matrix",
        "name": m.name,
        "values": list(m.values),
        "designated": [v for v in m.values if v in m.designated],
        "signature": _signature_to_json(m.sig),
        "tables": {c.name: table(m.tables[c.name]) for c in m.sig.connectives},
    }
    if m.conjunction is not None:
        from .formula import to_text

        doc["conjunction"] = to_text(m.conjunction)
    return doc


# entry points

def load_logic_doc(doc: dict):
    validate(doc, "logic_spec")
    kind = doc["kind"]
    if kind == "finite":
        return finite_from_json(doc)
    if kind == "matrix":
        return matrix_from_json(doc)
    return load_builtin(doc["name"], **doc.get("params", {}))


def read_logic(ref: str):
    """``builtin:NAME[:param]`` or a path to a logic spec file.

    Returns ``(logic, input document)``; the document is what the report embeds.
    """
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        doc = {"kind": "builtin", "name": name}
        return load_builtin(name), doc
    path = Path(ref)
    try:
        doc = json.loads(path.read_text("utf-8"))
    except OSError as e:
        raise ValidationError(f"cannot read {ref}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ValidationError(f"{ref}: invalid JSON ({e.msg} at line {e.lineno})") from None
    return load_logic_doc(doc), doc


def make_report(command: str, inputs: dict, budget: dict, checks: list[dict]) -> dict:
    return {
        "tool": "explosion",
        "version": __version__,
        "command": command,
        "input": inputs,
        "input_digest": digest(inputs),
        "budget": budget,
        "checks": checks,
    }


def check_entry(verdict, seconds: float) -> dict:
    d = verdict.to_json()
    d["timing"] = round(seconds, 6)
    return d
