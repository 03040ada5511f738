"""Canonical JSON instance files.

Closure space::

    {"version": 1, "kind": "closure-space", "points": [...], "closed_sets": [[...], ...]}

State property system::

    {"version": 1, "kind": "sps", "states": [...], "properties": [...],
     "leq": [[a, b], ...], "xi": {state: [properties...]}}

``leq`` is the complete order relation, reflexive pairs included.
Serialization is canonical: sorted point labels, canonical family order,
fixed key order, one set per line, trailing newline.
"""

from __future__ import annotations

import hashlib
import json
from typing import Iterable

from jsonschema import Draft202012Validator

from .closure import FiniteClosureSpace, validate_closure_space
from .order import PointUniverse, SetFamily, validate_lattice
from .report import InputError, SpsLabError
from .sps import StatePropertySystem, validate_sps

FORMAT_VERSION = 1

_LABELS = {"type": "array", "items": {"type": "string"}}
_UNIQUE = {"type": "array", "items": {"type": "string"}, "uniqueItems": True}

CLOSURE_SCHEMA = {
    "type": "object",
    "required": ["version", "kind", "points", "closed_sets"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "kind": {"const": "closure-space"},
        "points": _UNIQUE,
        "closed_sets": {"type": "array", "items": _LABELS},
    },
}

SPS_SCHEMA = {
    "type": "object",
    "required": ["version", "kind", "states", "properties", "leq", "xi"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "kind": {"const": "sps"},
        "states": _UNIQUE,
        "properties": _UNIQUE,
        "leq": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "xi": {"type": "object", "additionalProperties": _LABELS},
    },
}


class ParseError(SpsLabError):
    """``code`` is one of ``syntax``, ``schema`` or ``axiom``."""

    def __init__(self, code: str, message: str, where: str = ""):
        self.code = code
        self.where = where
        super().__init__(f"{code} error{' at ' + where if where else ''}: {message}")


def _schema_check(doc: dict, schema: dict) -> None:
    errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ParseError("schema", err.message, where)


def parse_instance(text: str) -> FiniteClosureSpace | StatePropertySystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("syntax", exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("schema", "document must be an object", "<root>")
    kind = doc.get("kind")
    if kind == "closure-space":
        _schema_check(doc, CLOSURE_SCHEMA)
        return _parse_space(doc)
    if kind == "sps":
        _schema_check(doc, SPS_SCHEMA)
        return _parse_sps(doc)
    raise ParseError("schema", f"unknown kind {kind!r}", "kind")


def _parse_space(doc: dict) -> FiniteClosureSpace:
    universe = PointUniverse(tuple(doc["points"]))
    try:
        family = SetFamily.from_labels(universe, doc["closed_sets"])
    except InputError as exc:
        raise ParseError("schema", str(exc), "closed_sets") from None
    report = validate_closure_space(universe, family)
    if not report.ok:
        raise ParseError("axiom", "; ".join(v.message for v in report.violations), "closed_sets")
    return report.value


def _parse_sps(doc: dict) -> StatePropertySystem:
    report = validate_lattice(doc["properties"], [tuple(p) for p in doc["leq"]])
    if not report.ok:
        raise ParseError("axiom", "; ".join(v.message for v in report.violations), "leq")
    report = validate_sps(PointUniverse(tuple(doc["states"])), report.value, doc["xi"])
    if not report.ok:
        raise ParseError("axiom", "; ".join(v.message for v in report.violations), "xi")
    return report.value


def instance_document(obj: FiniteClosureSpace | StatePropertySystem) -> dict:
    if isinstance(obj, FiniteClosureSpace):
        return {
            "version": FORMAT_VERSION,
            "kind": "closure-space",
            "points": list(obj.universe.labels),
            "closed_sets": obj.closed.as_labels(),
        }
    return {
        "version": FORMAT_VERSION,
        "kind": "sps",
        "states": list(obj.states.labels),
        "properties": list(obj.lattice.elements),
        "leq": [list(p) for p in obj.lattice.pairs()],
        "xi": obj.xi_names(),
    }


def dumps(doc: object) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _inline(value: object) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def canonical_text(doc: dict) -> str:
    """One top-level key per line; each set, order pair or actuality row on its own line."""
    lines = ["{"]
    items = list(doc.items())
    for pos, (key, value) in enumerate(items):
        comma = "," if pos < len(items) - 1 else ""
        if isinstance(value, list) and value and all(isinstance(v, list) for v in value):
            body = ",\n".join(f"    {_inline(v)}" for v in value)
            lines.append(f"  {_inline(key)}: [\n{body}\n  ]{comma}")
        elif isinstance(value, dict) and value:
            body = ",\n".join(f"    {_inline(k)}: {_inline(v)}" for k, v in value.items())
            lines.append(f"  {_inline(key)}: {{\n{body}\n  }}{comma}")
        else:
            lines.append(f"  {_inline(key)}: {_inline(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_instance(obj: FiniteClosureSpace | StatePropertySystem) -> str:
    return canonical_text(instance_document(obj))


def corpus_digest(objs: Iterable[FiniteClosureSpace | StatePropertySystem]) -> str:
    h = hashlib.sha256()
    for obj in objs:
        h.update(serialize_instance(obj).encode("utf-8"))
    return h.hexdigest()
