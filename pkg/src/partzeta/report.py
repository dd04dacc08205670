"""Check results and deterministic JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mpf

from .numeric import DEFAULT_DIGITS, Approximation, ClosedFormValue, decimal_string
from .series import TruncatedSeries

AGREE = "agree"
DISAGREE = "disagree"
HEURISTIC = "heuristic"


@dataclass
class CheckResult:
    name: str
    verdict: str
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict != DISAGREE

    def to_json_obj(self, digits: int = DEFAULT_DIGITS) -> dict:
        return {"name": self.name, "verdict": self.verdict, **jsonify(self.data, digits)}


def jsonify(x, digits: int = DEFAULT_DIGITS):
    if isinstance(x, (Approximation, ClosedFormValue, CheckResult)):
        return x.to_json_obj(digits)
    if isinstance(x, TruncatedSeries):
        return x.to_json_obj()
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, mpf):
        return decimal_string(x, digits)
    if isinstance(x, dict):
        return {str(k): jsonify(v, digits) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonify(v, digits) for v in x]
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def within(a: Approximation, b: Approximation, extra=0) -> tuple[str, mpf]:
    """Compare two approximations against their combined bounds."""
    delta = abs(a.value - b.value)
    if a.divergent or b.divergent:
        return DISAGREE, delta
    if a.tail_bound is None or b.tail_bound is None:
        return HEURISTIC, delta
    return (AGREE if delta <= a.tail_bound + b.tail_bound + extra else DISAGREE), delta


def within_tol(delta, tol) -> str:
    return AGREE if delta <= tol else DISAGREE


def exact_verdict(equal: bool) -> str:
    return AGREE if equal else DISAGREE
