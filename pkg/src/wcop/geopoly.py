"""Exponential polynomials k -> sum a_i r_i**k and per-atom functions on N.

A :class:`GeoPoly` represents the values of J_n, Delta and friends on the
geometric tail of a :class:`~wcop.space.GeometricTailSpace`.  The index k is
the absolute atom index, so a tail mass alpha * rho**(k - K) is stored as the
single term (alpha * rho**-K, rho).

:func:`geopoly_sign` decides the sign of such a sum over every integer
k >= start exactly: past an explicit crossover index the dominant ratio wins,
and everything before it is checked one value at a time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import InfiniteValue
from .scalars import INF, is_inf, sign


@dataclass(frozen=True)
class GeoPoly:
    """``k -> sum(a * r**k for a, r in terms)``; ratios distinct and > 0."""

    terms: tuple = ()

    @classmethod
    def make(cls, terms) -> "GeoPoly":
        acc: dict = {}
        for a, r in terms:
            if r <= 0:
                raise ValueError(f"ratio must be positive, got {r!r}")
            acc[r] = acc.get(r, 0) + a
        kept = [(a, r) for r, a in acc.items() if a != 0]
        kept.sort(key=lambda t: t[1], reverse=True)
        return cls(tuple(kept))

    @classmethod
    def constant(cls, c) -> "GeoPoly":
        return cls.make([(c, 1)])

    def __call__(self, k: int):
        return sum((a * r**k for a, r in self.terms), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "GeoPoly") -> "GeoPoly":
        return GeoPoly.make(self.terms + other.terms)

    def __sub__(self, other: "GeoPoly") -> "GeoPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "GeoPoly":
        return GeoPoly.make((c * a, r) for a, r in self.terms)

    def times_geometric(self, c, q) -> "GeoPoly":
        """Pointwise product with k -> c * q**k."""
        return GeoPoly.make((c * a, r * q) for a, r in self.terms)

    def reindexed(self, d: int) -> "GeoPoly":
        """The polynomial k -> self(k + d)."""
        return GeoPoly.make((a * r**d, r) for a, r in self.terms)

    @property
    def lead(self):
        return self.terms[0] if self.terms else None

    def sum_from(self, start: int):
        """Sum over k >= start of a nonnegative polynomial; INF on divergence."""
        if not self.terms:
            return 0
        a1, r1 = self.terms[0]
        if r1 >= 1:
            if a1 < 0:
                raise ValueError("series diverges to -inf")
            return INF
        return sum((a * r**start / (1 - r) for a, r in self.terms), 0)


def crossover(p: GeoPoly, start: int) -> int:
    """Smallest k0 >= start past which the dominant term outweighs the rest.

    For k >= k0, |a1| r1**k > sum_{i>1} |a_i| r_i**k, so sign(p(k)) = sign(a1).
    The bound uses S * q**k < |a1| with S = sum |a_i| (i > 1) and
    q = r2 / r1, which dominates the true remainder because r_i / r1 <= q.
    """
    if len(p.terms) <= 1:
        return start
    a1, r1 = p.terms[0]
    lead = abs(a1)
    rest = sum(abs(a) for a, _ in p.terms[1:])
    q = p.terms[1][1] / r1
    if rest * q**start < lead:
        return start
    k = max(start, math.ceil(math.log(float(lead) / float(rest)) / math.log(float(q))))
    while rest * q**k >= lead:
        k += 1
    while k > start and rest * q ** (k - 1) < lead:
        k -= 1
    return k


class GeoSign(NamedTuple):
    kind: str  # "nonpositive" | "nonnegative" | "zero" | "mixed"
    witness: Optional[int]
    scanned_until: int


def geopoly_sign(p: GeoPoly, start: int = 0, tol: float = 0.0) -> GeoSign:
    """Decide the sign of ``p(k)`` over all integers ``k >= start``.

    ``witness`` (for "mixed") is the first k whose sign is opposite to the
    first nonzero value.  ``scanned_until`` is the crossover index: values
    below it were evaluated individually.
    """
    if not p.terms:
        return GeoSign("zero", None, start)
    k0 = crossover(p, start)
    signs = [(k, sign(p(k), tol)) for k in range(start, k0)]
    signs.append((k0, sign(p.terms[0][0])))
    first = next((s for _, s in signs if s != 0), 0)
    if first == 0:
        return GeoSign("zero", None, k0)
    witness = next((k for k, s in signs if s == -first), None)
    if witness is not None:
        return GeoSign("mixed", witness, k0)
    return GeoSign("nonpositive" if first < 0 else "nonnegative", None, k0)


@dataclass(frozen=True)
class AtomFunction:
    """A function on the atoms of a measure model.

    ``values`` lists atoms 0..len-1 explicitly.  On a finite space ``tail`` is
    None and those are all the atoms; on a tail space ``tail`` gives the value
    at every atom k >= len(values).  +inf may appear among explicit values.
    """

    values: tuple
    tail: Optional[GeoPoly] = None

    @property
    def bounded(self) -> bool:
        return self.tail is None

    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError(k)
        if k < len(self.values):
            return self.values[k]
        if self.tail is None:
            raise IndexError(k)
        return self.tail(k)

    def __iter__(self) -> Iterator:
        if self.tail is not None:
            raise TypeError("cannot iterate over an infinite atom set; use window()")
        return iter(self.values)

    def __len__(self) -> int:
        if self.tail is not None:
            raise TypeError("infinite atom set")
        return len(self.values)

    def window(self, n: int) -> tuple:
        return tuple(self[k] for k in range(n if self.tail is not None else min(n, len(self.values))))

    def extended(self, n: int) -> "AtomFunction":
        """Same function with at least ``n`` explicit values."""
        if self.tail is None or n <= len(self.values):
            return self
        return AtomFunction(self.values + tuple(self.tail(k) for k in range(len(self.values), n)), self.tail)

    def first_infinite(self) -> Optional[int]:
        return next((k for k, v in enumerate(self.values) if is_inf(v)), None)

    def map_values(self, fn) -> "AtomFunction":
        """Apply ``fn`` to explicit values only (caller keeps tail consistent)."""
        return AtomFunction(tuple(fn(v) for v in self.values), self.tail)


def linear_combination(pairs: Sequence[tuple], *, kind: str = "delta") -> AtomFunction:
    """``sum(c * f for c, f in pairs)``; raises InfiniteValue on any +inf."""
    funcs = [f for _, f in pairs]
    bounded = funcs[0].bounded
    if any(f.bounded != bounded for f in funcs):
        raise ValueError("cannot combine finite and tail atom functions")
    n = max(len(f.values) for f in funcs)
    if bounded and any(len(f.values) != n for f in funcs):
        raise ValueError("atom functions of different lengths")
    funcs = [f.extended(n) for f in funcs]
    for f in funcs:
        k = f.first_infinite()
        if k is not None:
            raise InfiniteValue(f"{kind}: value +inf at atom {k}", atom=k)
    vals = tuple(sum((c * f.values[k] for (c, _), f in zip(pairs, funcs)), 0) for k in range(n))
    tail = None
    if not bounded:
        tail = GeoPoly()
        for (c, _), f in zip(pairs, funcs):
            tail = tail + f.tail.scale(c)
    return AtomFunction(vals, tail)


@dataclass(frozen=True)
class SignSummary:
    """Exact sign facts about an AtomFunction over every atom."""

    first_positive: Optional[int]
    first_negative: Optional[int]
    max_value: object
    max_atom: int
    window: int  # atoms < window were evaluated explicitly

    @property
    def nonpositive(self) -> bool:
        return self.first_positive is None

    @property
    def zero(self) -> bool:
        return self.first_positive is None and self.first_negative is None


def summarize_signs(f: AtomFunction, tol: float = 0.0) -> SignSummary:
    """Sign facts of ``f`` on all atoms; tails go through the crossover bound."""
    vals = list(f.values)
    eventual = 0
    if f.tail is not None:
        k0 = crossover(f.tail, len(vals))
        vals.extend(f.tail(k) for k in range(len(vals), k0 + 1))
        if f.tail.terms:
            eventual = sign(f.tail.terms[0][0])
    signs = [sign(v, tol) for v in vals]
    first_pos = next((k for k, s in enumerate(signs) if s > 0), None)
    first_neg = next((k for k, s in enumerate(signs) if s < 0), None)
    # past the crossover every value carries the leading sign, and the
    # crossover index itself is included in vals
    if eventual > 0 and first_pos is None:
        first_pos = len(vals) - 1
    if eventual < 0 and first_neg is None:
        first_neg = len(vals) - 1
    max_atom = max(range(len(vals)), key=lambda k: (vals[k], -k))
    return SignSummary(first_pos, first_neg, vals[max_atom], max_atom, len(vals))
