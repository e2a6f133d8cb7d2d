"""Radon-Nikodym derivatives, conditional expectation and the J_n hierarchy.

On a discrete space every quantity is a finite (or geometric) sum over fibers
of phi.  J_n is the weight with ||T^n f||^2 = sum_k J_n(k) |f_k|^2 m_k for
T = u C_phi, and is computed two ways on finite spaces: by the recursion
J_n = h * E(J_{n-1} |u|^2) o phi^{-1} and directly from the cocycle
|u_{phi,n}|^2 summed over the fiber of phi^n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .errors import DepthExceedsData, RecursionDirectMismatch, UnsupportedTailAnalysis
from .geopoly import AtomFunction, GeoPoly, linear_combination
from .scalars import FLOAT, INF, ext_add, ext_div, ext_mul, is_inf, sign, to_field
from .space import Constant, ShiftDown, ShiftUp, WeightedSystem, fiber, iterate

RECURSION = "recursion"
DIRECT = "direct"
BOTH = "both"


def binomial(n: int, i: int) -> int:
    return math.comb(n, i)


def _one(system: WeightedSystem):
    return to_field(1, system.field)


def _fiber_sum(system: WeightedSystem, k: int, n: int, fn):
    total = 0
    for j in fiber(system, k, n):
        total = ext_add(total, fn(j))
    return total


def radon_nikodym(system: WeightedSystem, i: int = 1) -> AtomFunction:
    """h_i = d(mu o phi^{-i}) / d mu."""
    if i < 1:
        raise ValueError("order must be >= 1")
    if not system.finite:
        return j_table(system.composition_part(), i, method=RECURSION).J(i)
    m = system.model.masses
    return AtomFunction(tuple(_fiber_sum(system, k, i, lambda j: m[j]) / m[k]
                              for k in range(system.size)))


def conditional_expectation(system: WeightedSystem, f) -> AtomFunction:
    """E(f)(k): the m-weighted mean of f over the fiber of phi(k).

    ``f`` is a sequence (finite spaces) or an :class:`AtomFunction`.  On tail
    spaces only geometric ``f`` with shift maps is supported.
    """
    if system.finite:
        vals = tuple(f)
        if len(vals) != system.size:
            raise ValueError("f must have one value per atom")
        m = system.model.masses
        out = []
        for k in range(system.size):
            fib = list(fiber(system, system.phi[k], 1))
            num = 0
            for j in fib:
                num = ext_add(num, ext_mul(vals[j], m[j]))
            out.append(ext_div(num, sum((m[j] for j in fib), 0)))
        return AtomFunction(tuple(out))
    if not isinstance(f, AtomFunction) or f.tail is None:
        raise UnsupportedTailAnalysis("tail spaces need a geometric f (AtomFunction with tail)")
    tm = system.tail_map
    if isinstance(tm, Constant):
        raise UnsupportedTailAnalysis(
            "the fiber of a constant tail map has infinite measure in general")
    # beyond the head images, phi is injective on the tail so E(f) = f there
    K = system.head_size
    reach = max([K] + [v + 1 for v in system.phi] + [len(f.values)])
    reach += tm.d
    g = f.extended(reach)
    out = []
    for k in range(reach):
        fib = fiber(system, system.map(k), 1)
        if fib.start is not None:
            raise UnsupportedTailAnalysis("fiber contains an infinite segment")
        fib = list(fib)
        num = 0
        for j in fib:
            num = ext_add(num, ext_mul(g[j], system.mass(j)))
        out.append(ext_div(num, sum((system.mass(j) for j in fib), 0)))
    return AtomFunction(tuple(out), f.tail)


def cocycle(system: WeightedSystem, n: int, atoms: Optional[Sequence[int]] = None) -> tuple:
    """|u_{phi,n}|^2(j) = prod_{t<n} |u|^2(phi^t(j)) for j in ``atoms``.

    ``atoms`` defaults to every atom of a finite space and is required on a
    tail space.
    """
    if n < 1:
        raise ValueError("cocycle order must be >= 1")
    if atoms is None:
        if not system.finite:
            raise UnsupportedTailAnalysis("cocycle on a tail space needs an atom window")
        atoms = range(system.size)
    out = []
    for j in atoms:
        p = _one(system)
        for _ in range(n):
            p = p * system.weight(j)
            j = system.map(j)
        out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class JTable:
    """J_0..J_N as per-atom functions."""

    values: tuple
    method: str

    @property
    def orders(self) -> int:
        return len(self.values) - 1

    def J(self, n: int) -> AtomFunction:
        if not 0 <= n <= self.orders:
            raise IndexError(f"order {n} not in table (max {self.orders})")
        return self.values[n]

    def sequence(self, k: int) -> tuple:
        """J_0(k), ..., J_N(k)."""
        return tuple(f[k] for f in self.values)


def _close(a, b, field: str) -> bool:
    if a == b:
        return True
    if field == FLOAT and not (is_inf(a) or is_inf(b)):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-12)
    return False


def _recursion_step_finite(system: WeightedSystem, prev: tuple, h: tuple) -> tuple:
    g = tuple(ext_mul(prev[j], system.usq[j]) for j in range(system.size))
    eg = conditional_expectation(system, g).values
    out = []
    for k in range(system.size):
        fib = fiber(system, k, 1)
        if not fib:
            out.append(0 * _one(system))
            continue
        j = min(fib.finite)
        out.append(ext_mul(h[k], eg[j]))
    return tuple(out)


def _direct_finite(system: WeightedSystem, n: int) -> tuple:
    m = system.model.masses
    cyc = cocycle(system, n)
    return tuple(_fiber_sum(system, k, n, lambda j: cyc[j] * m[j]) / m[k]
                 for k in range(system.size))


def _pushforward(system: WeightedSystem, g: AtomFunction) -> AtomFunction:
    """k -> sum of g over phi^{-1}(k) on a tail space."""
    K = system.head_size
    g = g.extended(K)
    P = len(g.values)
    tm = system.tail_map
    acc: dict = {}
    for j, v in enumerate(g.values):
        t = system.map(j)
        acc[t] = ext_add(acc.get(t, 0), v)
    G = g.tail
    if isinstance(tm, Constant):
        if G:
            acc[tm.c] = ext_add(acc.get(tm.c, 0), G.sum_from(P))
        tail, tail_from = GeoPoly(), P
    elif isinstance(tm, ShiftDown):
        tail, tail_from = G.reindexed(tm.d), P - tm.d
    elif isinstance(tm, ShiftUp):
        tail, tail_from = G.reindexed(-tm.d), P + tm.d
    else:
        raise UnsupportedTailAnalysis(f"unknown tail map {tm!r}")
    R = max([P, tail_from] + [t + 1 for t in acc])
    vals = []
    for k in range(R):
        v = acc.get(k, 0)
        if k >= tail_from:
            v = ext_add(v, tail(k))
        vals.append(v)
    return AtomFunction(tuple(vals), tail)


def _recursion_step_tail(system: WeightedSystem, prev: AtomFunction) -> AtomFunction:
    K = system.head_size
    prev = prev.extended(K)
    um = [ext_mul(system.weight(k), system.mass(k)) for k in range(len(prev.values))]
    g_vals = tuple(ext_mul(v, w) for v, w in zip(prev.values, um))
    ga, gr = system.model.tail_mass.a, system.model.tail_mass.r
    ua, ur = system.tail_usq.a, system.tail_usq.r
    coef = ga * ua * (gr * ur) ** (-K)
    g = AtomFunction(g_vals, prev.tail.times_geometric(coef, gr * ur))
    p = _pushforward(system, g)
    vals = tuple(ext_div(v, system.mass(k)) for k, v in enumerate(p.values))
    return AtomFunction(vals, p.tail.times_geometric(1 / (ga * gr ** (-K)), 1 / gr))


def j_table(system: WeightedSystem, N: int, method: str = BOTH) -> JTable:
    """J_0..J_N.

    On finite spaces ``method`` selects the recursion, the direct fiber
    formula, or both (the default, which raises RecursionDirectMismatch if
    they ever differ).  Tail spaces always use the recursion on geometric
    closed forms.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    one = _one(system)
    if not system.finite:
        cur = AtomFunction((), GeoPoly.constant(one))
        table = [cur]
        for _ in range(N):
            cur = _recursion_step_tail(system, cur)
            table.append(cur)
        return JTable(tuple(table), RECURSION)

    if method not in (RECURSION, DIRECT, BOTH):
        raise ValueError(f"unknown method {method!r}")
    ones = (one,) * system.size
    rec = [ones]
    if method in (RECURSION, BOTH):
        h = radon_nikodym(system, 1).values if N else ones
        for _ in range(N):
            rec.append(_recursion_step_finite(system, rec[-1], h))
    if method == RECURSION:
        return JTable(tuple(AtomFunction(v) for v in rec), RECURSION)
    direct = [ones] + [_direct_finite(system, n) for n in range(1, N + 1)]
    if method == BOTH:
        for n in range(1, N + 1):
            for k in range(system.size):
                if not _close(rec[n][k], direct[n][k], system.field):
                    raise RecursionDirectMismatch(
                        f"J_{n}({k}): recursion {rec[n][k]} != direct {direct[n][k]}")
    return JTable(tuple(AtomFunction(v) for v in direct), method)


def delta(jt: JTable, n: int, m: int = 0) -> AtomFunction:
    """sum_{i<=n} (-1)^i C(n, i) J_{m+i}, atomwise."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    if m + n > jt.orders:
        raise DepthExceedsData(f"need J up to order {m + n}, table has {jt.orders}")
    return linear_combination(
        [((-1) ** i * binomial(n, i), jt.J(m + i)) for i in range(n + 1)])


class AlternatingResult(NamedTuple):
    passed: bool
    witness: Optional[tuple]  # (m, n) of the first violation
    value: object
    depth: tuple  # (m_max, n_max) actually tested


def alternating_sum(seq: Sequence, n: int, m: int = 0):
    return sum(((-1) ** i * binomial(n, i) * seq[m + i] for i in range(n + 1)), 0)


def completely_alternating(seq: Sequence, n_max: int, m_max: int,
                           tol: float = 0.0) -> AlternatingResult:
    """Bounded-depth test of sum_i (-1)^i C(n,i) a_{m+i} <= 0.

    Checks 1 <= n <= n_max and 0 <= m <= m_max; this can refute but never
    certify the unbounded property.
    """
    seq = tuple(seq)
    if n_max < 1 or m_max < 0:
        raise ValueError("need n_max >= 1 and m_max >= 0")
    if m_max + n_max > len(seq) - 1:
        raise DepthExceedsData(
            f"depth (m={m_max}, n={n_max}) needs {m_max + n_max + 1} terms, got {len(seq)}")
    if any(is_inf(v) for v in seq[:m_max + n_max + 1]):
        raise DepthExceedsData("sequence contains +inf")
    for n in range(1, n_max + 1):
        for m in range(m_max + 1):
            s = alternating_sum(seq, n, m)
            if sign(s, tol) > 0:
                return AlternatingResult(False, (m, n), s, (m_max, n_max))
    return AlternatingResult(True, None, None, (m_max, n_max))
