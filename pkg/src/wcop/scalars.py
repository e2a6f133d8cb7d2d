"""Scalar fields and extended-nonnegative arithmetic.

Two fields are supported: exact rationals (:class:`fractions.Fraction`) and
floats.  ``INF`` is a single shared sentinel for +inf in both fields.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import InfiniteValue, MixedField

Scalar = Union[Fraction, float, int]

INF = math.inf
RATIONAL = "rational"
FLOAT = "float"
DEFAULT_TOL = 1e-9

_FIELD_ALIASES = {
    "rational": RATIONAL,
    "exact-rational": RATIONAL,
    "exact": RATIONAL,
    "float": FLOAT,
}

_SQRT_RE = re.compile(r"^\s*sqrt\((.+)\)\s*$")


def canonical_field(name: str) -> str:
    try:
        return _FIELD_ALIASES[name]
    except KeyError:
        raise MixedField(f"unknown field mode {name!r}") from None


def is_inf(x) -> bool:
    return isinstance(x, float) and x == INF


def to_field(value, field: str) -> Scalar:
    """Convert a literal (int, str, Fraction, float) into ``field``.

    Under the rational field, decimal literals are read exactly ("0.1" is
    1/10) and anything irrational or non-finite raises :class:`MixedField`.
    """
    if isinstance(value, bool):
        raise MixedField(f"boolean is not a scalar: {value!r}")
    if field == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise MixedField(f"non-finite literal {value!r} in rational mode")
            return Fraction(repr(value))
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise MixedField(
                    f"literal {value!r} is not an exact rational") from None
        raise MixedField(f"unsupported literal {value!r}")
    if field == FLOAT:
        if isinstance(value, str):
            m = _SQRT_RE.match(value)
            if m:
                return math.sqrt(float(Fraction(m.group(1).strip())))
            try:
                return float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError):
                try:
                    return float(value)
                except ValueError:
                    raise MixedField(f"cannot read literal {value!r}") from None
        return float(value)
    raise MixedField(f"unknown field mode {field!r}")


def ext_add(a, b):
    if is_inf(a) or is_inf(b):
        return INF
    return a + b


def ext_mul(a, b):
    """Product on [0, inf] with the convention 0 * inf = 0."""
    if a == 0 or b == 0:
        return 0
    if is_inf(a) or is_inf(b):
        return INF
    return a * b


def ext_div(a, b):
    """``a / b`` for finite positive ``b``; inf / b = inf."""
    if is_inf(a):
        return INF
    return a / b


def ext_sub(a, b, atom=None):
    if is_inf(a) or is_inf(b):
        raise InfiniteValue("subtraction involving +inf", atom=atom)
    return a - b


def sign(x, tol: float = 0.0) -> int:
    if is_inf(x):
        return 1
    if tol and abs(x) <= tol:
        return 0
    return (x > 0) - (x < 0)


def fmt(x) -> str:
    """Serialize a scalar: rationals as "p/q", floats by repr, inf as "inf"."""
    if is_inf(x):
        return "inf"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)
