"""Named example systems."""
from __future__ import annotations

from fractions import Fraction

from .errors import UnknownExample
from .space import Constant, WeightedSystem, finite_system, tail_system


def identity(n: int = 3) -> WeightedSystem:
    return finite_system([1] * n, range(n), [1] * n)


def constant_mult(c=2, n: int = 3) -> WeightedSystem:
    """M_u with u = c everywhere (|u|^2 = c^2) on n unit atoms."""
    c = Fraction(c)
    return finite_system([1] * n, range(n), [c * c] * n)


def dirichlet(n: int = 8) -> WeightedSystem:
    """Truncated Dirichlet-type shift: phi(k) = k - 1, |u_k|^2 = (k + 1) / k."""
    if n < 2:
        raise ValueError("dirichlet needs at least 2 atoms")
    usq = [Fraction(0)] + [Fraction(k + 1, k) for k in range(1, n)]
    return finite_system([1] * n, [0] + list(range(n - 1)), usq)


def star_tail(rho=1, beta=1) -> WeightedSystem:
    """Every tail atom maps to atom 0; masses rho^(k-1), |u|^2 = beta on the tail."""
    return tail_system([1], [0], [0], (1, Fraction(rho)), (Fraction(beta), 1), Constant(0))


def two_cycle() -> WeightedSystem:
    return finite_system([1, 1], [1, 0], [1, 1])


CATALOG = {
    "identity": (identity, [int]),
    "constant-mult": (constant_mult, [Fraction, int]),
    "dirichlet": (dirichlet, [int]),
    "star-tail": (star_tail, [Fraction, Fraction]),
    "two-cycle": (two_cycle, []),
}


def build(name: str, params=()) -> WeightedSystem:
    try:
        fn, types = CATALOG[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(CATALOG)}") from None
    if len(params) > len(types):
        raise ValueError(f"{name} takes at most {len(types)} parameters")
    return fn(*(t(p) for t, p in zip(types, params)))
