"""Shared JSON conventions for the command-line surface.

Rationals travel as "p/q" strings in both directions so no output ever
passes through binary floating point. Objects expose `to_json`; this
module flattens the results into plain JSON trees and renders them with
a fixed, deterministic layout.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .matrix import Mat
from .scalars import frac, frac_str


def jsonable(x):
    """Recursively convert exact values into a JSON-ready tree."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        raise PreconditionError("refusing to serialize a finite float")
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    to_json = getattr(x, "to_json", None)
    if callable(to_json):
        return jsonable(to_json())
    raise PreconditionError("no JSON form for %r" % type(x).__name__)


def dumps(x) -> str:
    return json.dumps(jsonable(x), separators=(", ", ": "))


def parse_matrix(text: str) -> Mat:
    """Matrix from a JSON array of rows with "p/q" or numeric entries."""
    rows = json.loads(text)
    if not isinstance(rows, list) or not rows or not isinstance(rows[0], list):
        raise PreconditionError("expected a JSON array of rows")
    return Mat.rationalize(rows)


def parse_vectors(text: str) -> list:
    """List of rational vectors from JSON rows."""
    rows = json.loads(text)
    if not isinstance(rows, list) or not rows or not isinstance(rows[0], list):
        raise PreconditionError("expected a JSON array of vectors")
    return [[Fraction(frac(x)) for x in r] for r in rows]


def parse_csv_fracs(text: str) -> tuple:
    """Comma-separated rationals, e.g. "-3,-1,1,3" or "1/2,0"."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise PreconditionError("expected comma-separated rationals")
    return tuple(Fraction(frac(p)) for p in parts)


@dataclass(frozen=True)
class RunManifest:
    command_line: tuple
    parameter_hash: str
    version: str
    precision_digits: int

    @staticmethod
    def for_argv(argv, version: str, digits: int) -> "RunManifest":
        canon = json.dumps(list(argv), separators=(",", ":"))
        h = hashlib.sha256(canon.encode("utf-8")).hexdigest()
        return RunManifest(
            command_line=tuple(argv),
            parameter_hash=h,
            version=version,
            precision_digits=digits,
        )

    def to_json(self) -> dict:
        return {
            "command_line": list(self.command_line),
            "parameter_hash": self.parameter_hash,
            "version": self.version,
            "precision_digits": self.precision_digits,
        }
