"""Check records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact import LaurentPoly, RatFunc, format_rational
from .skew import SkewOperator


@dataclass
class CheckRecord:
    name: str
    inputs: dict = field(default_factory=dict)
    passed: bool = True
    witness: Any = None
    detail: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {"name": self.name, "inputs": serialize(self.inputs), "status": self.status}
        if self.witness is not None:
            out["witness"] = serialize(self.witness)
        if self.detail:
            out["detail"] = serialize(self.detail)
        return out


@dataclass
class CheckReport:
    """Outcome of a multi-case check; ``first_failure`` is the first failing record."""

    name: str
    records: list = field(default_factory=list)
    table: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def first_failure(self):
        return next((r for r in self.records if not r.passed), None)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def __bool__(self):
        return self.passed


def serialize(value):
    """Exact JSON-ready rendering: every number becomes a ``"p/q"`` string."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, LaurentPoly):
        return {str(k): format_rational(c) for k, c in value.items()}
    if isinstance(value, RatFunc):
        return {"num": serialize(value.numer_poly()), "den": serialize(value.denom_poly())}
    if isinstance(value, SkewOperator):
        return {"q": format_rational(value.q), "terms": value.records()}
    if isinstance(value, CheckRecord):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)
