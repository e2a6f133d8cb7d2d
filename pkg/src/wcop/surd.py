"""Exact real numbers of the form sum_s c_s * sqrt(s).

Coefficients c_s are rationals and each radicand s is a squarefree positive
integer.  Distinct sqrt(s) are linearly independent over Q, so the canonical
dict form is zero exactly when the number is zero.  This is enough to write
the orthonormal-basis matrix of u C_phi (entries sqrt(|u_j|^2 m_j / m_k)) and
multiply such matrices without rounding.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, sqrt


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple:
    """n = t**2 * s with s squarefree; returns (t, s)."""
    if n <= 0:
        raise ValueError("need a positive integer")
    t, s = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        t *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    return t, s * n


class Surd:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {s: c for s, c in (terms or {}).items() if c != 0}

    @classmethod
    def rational(cls, q) -> "Surd":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q) -> "Surd":
        """sqrt(q) for a nonnegative rational q."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        # sqrt(p/d) = sqrt(p d) / d
        t, s = squarefree_split(q.numerator * q.denominator)
        return cls({s: Fraction(t, q.denominator)})

    @staticmethod
    def _coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        if isinstance(x, (int, Fraction)):
            return Surd.rational(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return Surd(out)

    __radd__ = __add__

    def __neg__(self):
        return Surd({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                g = gcd(s1, s2)
                s = (s1 // g) * (s2 // g)
                out[s] = out.get(s, 0) + c1 * c2 * g
        return Surd(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_rational(self) -> bool:
        return set(self.terms) <= {1}

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return Fraction(self.terms.get(1, 0))

    def __float__(self):
        return float(sum(float(c) * sqrt(s) for s, c in self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for s in sorted(self.terms):
            c = self.terms[s]
            parts.append(str(c) if s == 1 else f"{c}*sqrt({s})")
        return " + ".join(parts)
