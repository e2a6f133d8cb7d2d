"""Brute-force ground truth on finite spaces.

Nothing here uses fibers, conditional expectations or J tables.  The operator
is written as an explicit matrix in the orthonormal basis e_k = 1_k / sqrt(m_k)
with exact :class:`~wcop.surd.Surd` entries (floats in float mode), Gram
operators are formed by plain matrix algebra, and Theta is evaluated by
applying T to vectors.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import OracleMismatch, RefusesTailSpace
from .scalars import DEFAULT_TOL, FLOAT, RATIONAL, sign
from .space import WeightedSystem, finite_system
from .surd import Surd


def _require_finite(system: WeightedSystem) -> None:
    if not system.finite:
        raise RefusesTailSpace("the matrix oracle works on finite spaces only")


def _exact(system: WeightedSystem) -> bool:
    return system.field == RATIONAL


def _sqrt(system: WeightedSystem, q):
    return Surd.sqrt(q) if _exact(system) else math.sqrt(q)


def _zero(system: WeightedSystem):
    return Surd() if _exact(system) else 0.0


# sparse matrices are lists of {column: value} rows


def _matmul(a: list, b: list) -> list:
    out = []
    for row in a:
        acc: dict = {}
        for j, v in row.items():
            for k, w in b[j].items():
                acc[k] = acc[k] + v * w if k in acc else v * w
        out.append({k: v for k, v in acc.items() if v})
    return out


def _transpose(a: list, n: int) -> list:
    out = [dict() for _ in range(n)]
    for i, row in enumerate(a):
        for j, v in row.items():
            out[j][i] = v
    return out


def _identity(n: int, one) -> list:
    return [{i: one} for i in range(n)]


def _dense(a: list, n: int, zero) -> list:
    return [[row.get(j, zero) for j in range(n)] for row in a]


@dataclass(frozen=True)
class OperatorMatrix:
    """u C_phi in the orthonormal atom basis; entries[j][k] = u_j sqrt(m_j / m_k)."""

    size: int
    rows: tuple  # sparse rows
    field: str

    def dense(self) -> list:
        zero = Surd() if self.field == RATIONAL else 0.0
        return _dense(list(self.rows), self.size, zero)

    def to_float(self) -> list:
        return [[float(v) for v in row] for row in self.dense()]


def matrix_of(system: WeightedSystem) -> OperatorMatrix:
    _require_finite(system)
    m = system.model.masses
    rows = []
    for j in range(system.size):
        k = system.phi[j]
        v = _sqrt(system, system.usq[j] * m[j] / m[k])
        rows.append({k: v} if v else {})
    return OperatorMatrix(system.size, tuple(rows), system.field)


def binomial_gram(system: WeightedSystem, n: int) -> list:
    """B_n = sum_i (-1)^i C(n, i) (T*)^i T^i as a dense matrix.

    Entries are in the orthonormal basis, so B_n[k][k] is also the diagonal
    in atom coordinates with the m-weighted inner product.
    """
    _require_finite(system)
    N = system.size
    M = list(matrix_of(system).rows)
    one = Surd.rational(1) if _exact(system) else 1.0
    power = _identity(N, one)
    B: dict = {}
    for i in range(n + 1):
        if i:
            power = _matmul(power, M)
        gram = _matmul(_transpose(power, N), power)
        c = (-1) ** i * math.comb(n, i)
        for r, row in enumerate(gram):
            for col, v in row.items():
                B[r, col] = B.get((r, col), _zero(system)) + c * v
    zero = _zero(system)
    return [[B.get((r, col), zero) for col in range(N)] for r in range(N)]


def apply(system: WeightedSystem, f) -> tuple:
    """(T f)_k = u_k f_{phi(k)} with u taken real and nonnegative."""
    return tuple(_sqrt(system, system.usq[k]) * f[system.phi[k]] for k in range(system.size))


def theta(system: WeightedSystem, n: int, f) -> object:
    """Theta_n(f) = sum_i (-1)^i C(n, i) ||T^i f||^2.

    Only squared moduli are propagated, |(T g)_k|^2 = |u_k|^2 |g_{phi(k)}|^2,
    so no square roots enter.
    """
    _require_finite(system)
    if n < 1:
        raise ValueError("n must be >= 1")
    m = system.model.masses
    sq = [abs(x) ** 2 for x in f]
    total = 0
    for i in range(n + 1):
        if i:
            sq = [system.usq[k] * sq[system.phi[k]] for k in range(system.size)]
        total += (-1) ** i * math.comb(n, i) * sum(s * mk for s, mk in zip(sq, m))
    return total


def quadratic_form(system: WeightedSystem, B: list, f) -> object:
    """<B f, f> for f in atom coordinates (orthonormal coordinates f_k sqrt(m_k))."""
    c = [_sqrt(system, mk) * fk for mk, fk in zip(system.model.masses, f)]
    total = _zero(system)
    for i, row in enumerate(B):
        for j, v in enumerate(row):
            if v:
                total = total + c[i] * v * c[j]
    return total


def is_diagonal(B: list) -> bool:
    return all(not v for i, row in enumerate(B) for j, v in enumerate(row) if i != j)


def is_positive_semidefinite(A: list) -> bool:
    """Exact PSD test for a symmetric rational matrix by pivoted LDL^T."""
    A = [[Fraction(v) for v in row] for row in A]
    idx = list(range(len(A)))
    while idx:
        p = max(idx, key=lambda i: A[i][i])
        d = A[p][p]
        if d < 0:
            return False
        if d == 0:
            return all(A[i][j] == 0 for i in idx for j in idx)
        idx.remove(p)
        for i in idx:
            f = A[i][p] / d
            if f:
                for j in idx:
                    A[i][j] -= f * A[p][j]
    return True


def unitary_check(system: WeightedSystem) -> bool:
    """Whether M* M = M M* = I."""
    _require_finite(system)
    N = system.size
    M = list(matrix_of(system).rows)
    Mt = _transpose(M, N)
    for prod in (_matmul(Mt, M), _matmul(M, Mt)):
        for i in range(N):
            for j in range(N):
                v = prod[i].get(j, 0)
                target = 1 if i == j else 0
                if _exact(system):
                    if v != target:
                        return False
                elif not math.isclose(float(v), target, abs_tol=DEFAULT_TOL):
                    return False
    return True


def random_system(rng: random.Random, n_atoms: int, field: str = RATIONAL) -> WeightedSystem:
    """Masses and |u|^2 are p/q with p, q in 1..9; |u|^2 = 0 with prob. 1/8."""
    def frac():
        return Fraction(rng.randint(1, 9), rng.randint(1, 9))

    masses = [frac() for _ in range(n_atoms)]
    phi = [rng.randrange(n_atoms) for _ in range(n_atoms)]
    usq = [Fraction(0) if rng.random() < 1 / 8 else frac() for _ in range(n_atoms)]
    if field == FLOAT:
        masses, usq = [float(x) for x in masses], [float(x) for x in usq]
    return finite_system(masses, phi, usq, field=field)


def random_corpus(seed: int, count: int, max_atoms: int = 6, field: str = RATIONAL) -> list:
    rng = random.Random(seed)
    return [random_system(rng, rng.randint(1, max_atoms), field) for _ in range(count)]


def random_weighted_permutation(rng: random.Random, n_atoms: int, unitary_prob: float = 0.5) -> WeightedSystem:
    """phi a random permutation; with probability ``unitary_prob`` the weights
    are |u_j|^2 = m_phi(j) / m_j (a unitary), otherwise random p/q."""
    masses = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n_atoms)]
    phi = list(range(n_atoms))
    rng.shuffle(phi)
    if rng.random() < unitary_prob:
        usq = [masses[phi[j]] / masses[j] for j in range(n_atoms)]
    else:
        usq = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n_atoms)]
    return finite_system(masses, phi, usq)


def random_vector(rng: random.Random, n: int, field: str = RATIONAL) -> tuple:
    vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
    return tuple(vals) if field == RATIONAL else tuple(float(v) for v in vals)


@dataclass
class OracleOrder:
    n: int
    expansive: bool
    isometry: bool
    diagonal: bool
    diagonal_values: list
    samples: int = 0
    positive_found: bool = False
    max_theta: object = None


@dataclass
class OracleReport:
    orders: list
    mismatches: list = field(default_factory=list)
    trials: int = 0
    seed: Optional[int] = None

    @property
    def agreement(self) -> bool:
        return not self.mismatches


def oracle_verdicts(system: WeightedSystem, K: int = 4, trials: int = 0,
                    seed: Optional[int] = None, tol: Optional[float] = None,
                    strict: bool = True) -> OracleReport:
    """Expansivity verdicts from B_n, cross-checked against the pointwise criteria.

    Each trial vector is drawn from its own generator seeded by
    (seed, n, trial), so results do not depend on evaluation order.  With
    ``strict`` any disagreement raises :class:`OracleMismatch`.
    """
    from .calculus import delta, j_table
    from .classify import expansivity

    _require_finite(system)
    if trials and seed is None:
        raise ValueError("a seed is required for random trials")
    tol = 0.0 if _exact(system) else (DEFAULT_TOL if tol is None else tol)
    jt = j_table(system, max(K, 2))
    report_cls = expansivity(system, K, alt_depth=(0, 1), tol=tol, jt=jt)
    m = system.model.masses
    out = OracleReport([], trials=trials, seed=seed)
    for n in range(1, K + 1):
        B = binomial_gram(system, n)
        diag = is_diagonal(B)
        if not diag:
            out.mismatches.append(f"order {n}: B_n is not diagonal")
        dvals = [B[k][k] for k in range(system.size)]
        if _exact(system):
            dvals = [v.to_rational() if v.is_rational else v for v in dvals]
        if diag and all(not isinstance(v, Surd) for v in dvals):
            signs = [sign(v, tol) for v in dvals]
            expansive, isometry = all(s <= 0 for s in signs), all(s == 0 for s in signs)
        elif _exact(system) and all(v.is_rational for row in B for v in row):
            neg = [[-v.to_rational() for v in row] for row in B]
            expansive = is_positive_semidefinite(neg)
            isometry = all(not v for row in B for v in row)
        else:
            expansive = isometry = False
            out.mismatches.append(f"order {n}: cannot decide the sign of B_n")
        od = OracleOrder(n, expansive, isometry, diag, dvals)

        d = delta(jt, n)
        for k in range(system.size):
            same = (dvals[k] == d[k]) if _exact(system) else math.isclose(
                float(dvals[k]), float(d[k]), rel_tol=1e-9, abs_tol=1e-12)
            if not same:
                out.mismatches.append(f"order {n}: B_n[{k}][{k}] = {dvals[k]} but Delta = {d[k]}")
                break

        cv = report_cls.order(n)
        if cv.expansive != expansive or cv.isometry != isometry:
            out.mismatches.append(
                f"order {n}: oracle (expansive={expansive}, isometry={isometry}) vs "
                f"criterion (expansive={cv.expansive}, isometry={cv.isometry})")

        vectors = []
        if not expansive:
            k = next(k for k in range(system.size) if sign(dvals[k], tol) > 0)
            vectors.append(tuple(1 if i == k else 0 for i in range(system.size)))
        for t in range(trials):
            rng = random.Random(f"{seed}:{n}:{t}")
            vectors.append(random_vector(rng, system.size, system.field))
        for f in vectors:
            th = theta(system, n, f)
            if diag:
                q = sum((dvals[k] * abs(f[k]) ** 2 * m[k] for k in range(system.size)), 0)
            else:
                q = quadratic_form(system, B, f)
            agrees = (th == q) if _exact(system) else math.isclose(th, float(q), rel_tol=1e-9, abs_tol=1e-9)
            if not agrees:
                out.mismatches.append(f"order {n}: Theta(f) = {th} but <B f, f> = {q}")
            s = sign(th, tol)
            od.positive_found |= s > 0
            od.max_theta = th if od.max_theta is None else max(od.max_theta, th)
            if (expansive and s > 0) or (isometry and s != 0):
                out.mismatches.append(f"order {n}: sampled Theta = {th} contradicts the verdict")
        od.samples = len(vectors)
        out.orders.append(od)
    if strict and out.mismatches:
        raise OracleMismatch("; ".join(out.mismatches), report=out)
    return out
