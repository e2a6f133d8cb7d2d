"""Measure models, weighted systems, fibers of iterated maps.

A weighted composition operator f -> u * (f o phi) on a discrete L^2 space is
described by a :class:`WeightedSystem`: atom masses, the self-map phi and the
squared weight |u|^2 (only |u|^2 ever matters, so u itself is never stored).

Two measure models exist.  :class:`FiniteSpace` lists N atoms.
:class:`GeometricTailSpace` has K explicit head atoms and a tail k >= K with
masses alpha * rho**(k - K); phi on the tail is one of the :class:`TailMap`
rules and |u|^2 on the tail is beta * sigma**(k - K).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Union

from .errors import InvalidMap, InvalidMass, InvalidTail, MixedField, UnsupportedTailFiber
from .geopoly import AtomFunction, GeoPoly
from .scalars import INF, RATIONAL, canonical_field, ext_add, to_field


@dataclass(frozen=True)
class FiniteSpace:
    masses: tuple

    @property
    def size(self) -> int:
        return len(self.masses)


@dataclass(frozen=True)
class Geometric:
    """The sequence k -> a * r**(k - K) on the tail k >= K."""

    a: object
    r: object


@dataclass(frozen=True)
class GeometricTailSpace:
    head_masses: tuple
    tail_mass: Geometric

    @property
    def head_size(self) -> int:
        return len(self.head_masses)


@dataclass(frozen=True)
class Constant:
    """phi(k) = c on the tail."""

    c: int

    def __call__(self, k: int) -> int:
        return self.c


@dataclass(frozen=True)
class ShiftDown:
    """phi(k) = k - d on the tail."""

    d: int

    def __call__(self, k: int) -> int:
        return k - self.d


@dataclass(frozen=True)
class ShiftUp:
    """phi(k) = k + d on the tail."""

    d: int

    def __call__(self, k: int) -> int:
        return k + self.d


TailMap = Union[Constant, ShiftDown, ShiftUp]
MeasureModel = Union[FiniteSpace, GeometricTailSpace]


@dataclass(frozen=True)
class WeightedSystem:
    """u C_phi on a discrete space.

    For a finite model ``phi`` and ``usq`` cover every atom; for a tail model
    they cover the head and ``tail_map`` / ``tail_usq`` cover k >= K.
    """

    model: MeasureModel
    phi: tuple
    usq: tuple
    tail_map: Optional[TailMap] = None
    tail_usq: Optional[Geometric] = None
    field: str = RATIONAL

    @property
    def finite(self) -> bool:
        return isinstance(self.model, FiniteSpace)

    @property
    def size(self) -> Optional[int]:
        """Number of atoms, or None for a tail space."""
        return self.model.size if self.finite else None

    @property
    def head_size(self) -> int:
        return self.model.size if self.finite else self.model.head_size

    def mass(self, k: int):
        if self.finite:
            return self.model.masses[k]
        K = self.model.head_size
        if k < K:
            return self.model.head_masses[k]
        g = self.model.tail_mass
        return g.a * g.r ** (k - K)

    def weight(self, k: int):
        """|u_k|^2."""
        if k < len(self.usq):
            return self.usq[k]
        if self.finite:
            raise IndexError(k)
        g = self.tail_usq
        return g.a * g.r ** (k - self.head_size)

    def map(self, k: int) -> int:
        if k < len(self.phi):
            return self.phi[k]
        if self.finite:
            raise IndexError(k)
        return self.tail_map(k)

    def atoms(self, window: Optional[int] = None) -> range:
        if self.finite:
            return range(self.size)
        if window is None:
            raise ValueError("a window is required on a tail space")
        return range(window)

    def masses_function(self) -> AtomFunction:
        if self.finite:
            return AtomFunction(self.model.masses)
        K = self.head_size
        g = self.model.tail_mass
        return AtomFunction(self.model.head_masses, GeoPoly.make([(g.a * g.r ** (-K), g.r)]))

    def weights_function(self) -> AtomFunction:
        if self.finite:
            return AtomFunction(self.usq)
        K = self.head_size
        g = self.tail_usq
        return AtomFunction(self.usq, GeoPoly.make([(g.a * g.r ** (-K), g.r)]))

    def with_weights(self, usq, tail_usq: Optional[Geometric] = None) -> "WeightedSystem":
        if not self.finite and tail_usq is None:
            tail_usq = self.tail_usq
        return replace(self, usq=tuple(usq), tail_usq=tail_usq)

    def composition_part(self) -> "WeightedSystem":
        """C_phi: the same map with |u|^2 = 1 everywhere."""
        one = to_field(1, self.field)
        tail = None if self.finite else Geometric(one, one)
        return replace(self, usq=(one,) * len(self.usq), tail_usq=tail)

    def multiplication_part(self) -> "WeightedSystem":
        """M_u: the same weight with phi = identity."""
        if not self.finite:
            raise UnsupportedTailFiber("identity tail map is not a TailMap variant")
        return replace(self, phi=tuple(range(self.size)))


def finite_system(masses, phi, usq, field: str = RATIONAL) -> WeightedSystem:
    """Build and validate a system on a finite space."""
    return validate(WeightedSystem(FiniteSpace(tuple(masses)), tuple(phi), tuple(usq), field=field))


def tail_system(head_masses, head_phi, head_usq, tail_mass, tail_usq, tail_map,
                field: str = RATIONAL) -> WeightedSystem:
    """Build and validate a system on a geometric tail space.

    ``tail_mass`` and ``tail_usq`` are (a, r) pairs or :class:`Geometric`.
    """
    if not isinstance(tail_mass, Geometric):
        tail_mass = Geometric(*tail_mass)
    if not isinstance(tail_usq, Geometric):
        tail_usq = Geometric(*tail_usq)
    model = GeometricTailSpace(tuple(head_masses), tail_mass)
    return validate(WeightedSystem(model, tuple(head_phi), tuple(head_usq), tail_map, tail_usq, field))


def _conv(values: Iterable, field: str, what: str) -> tuple:
    out = []
    for i, v in enumerate(values):
        try:
            out.append(to_field(v, field))
        except MixedField as exc:
            raise MixedField(f"{what}[{i}]: {exc}") from None
    return tuple(out)


def _check_index(v, what: str, bound: Optional[int]) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidMap(f"{what} = {v!r} is not an atom index")
    if v < 0 or (bound is not None and v >= bound):
        raise InvalidMap(f"{what} = {v} is out of range")
    return v


def validate(system: WeightedSystem) -> WeightedSystem:
    """Check every invariant and normalize scalars to the system's field."""
    fld = canonical_field(system.field)
    if system.finite:
        masses = _conv(system.model.masses, fld, "masses")
        n = len(masses)
        if n < 1:
            raise InvalidMass("a finite space needs at least one atom")
        model = FiniteSpace(masses)
        bound = n
    else:
        masses = _conv(system.model.head_masses, fld, "head.masses")
        n = len(masses)
        if n < 1:
            raise InvalidMass("a tail space needs at least one head atom")
        tm = system.model.tail_mass
        a, r = to_field(tm.a, fld), to_field(tm.r, fld)
        if a <= 0:
            raise InvalidMass(f"tail mass coefficient must be positive, got {a}")
        if r <= 0:
            raise InvalidTail(f"tail mass ratio must be positive, got {r}")
        model = GeometricTailSpace(masses, Geometric(a, r))
        bound = None
    for i, m in enumerate(masses):
        if m <= 0:
            raise InvalidMass(f"mass of atom {i} must be positive, got {m}")

    if len(system.phi) != n:
        raise InvalidMap(f"phi has {len(system.phi)} entries, expected {n}")
    phi = tuple(_check_index(v, f"phi[{i}]", bound) for i, v in enumerate(system.phi))
    if len(system.usq) != n:
        raise InvalidMass(f"usq has {len(system.usq)} entries, expected {n}")
    usq = _conv(system.usq, fld, "usq")
    for i, w in enumerate(usq):
        if w < 0:
            raise InvalidMass(f"usq[{i}] must be nonnegative, got {w}")

    tail_map = tail_usq = None
    if not system.finite:
        tail_map = system.tail_map
        if isinstance(tail_map, Constant):
            _check_index(tail_map.c, "tail map constant", n)
        elif isinstance(tail_map, ShiftDown):
            if not isinstance(tail_map.d, int) or tail_map.d < 1 or n - tail_map.d < 0:
                raise InvalidMap(f"ShiftDown needs 1 <= d <= K, got d={tail_map.d}")
        elif isinstance(tail_map, ShiftUp):
            if not isinstance(tail_map.d, int) or tail_map.d < 1:
                raise InvalidMap(f"ShiftUp needs d >= 1, got d={tail_map.d}")
        else:
            raise InvalidMap(f"unknown tail map {tail_map!r}")
        tu = system.tail_usq
        if tu is None:
            raise InvalidTail("tail space needs a tail weight")
        b, s = to_field(tu.a, fld), to_field(tu.r, fld)
        if b < 0:
            raise InvalidTail(f"tail weight coefficient must be nonnegative, got {b}")
        if s <= 0:
            raise InvalidTail(f"tail weight ratio must be positive, got {s}")
        tail_usq = Geometric(b, s)
    return WeightedSystem(model, phi, usq, tail_map, tail_usq, fld)


# ---------------------------------------------------------------------------
# atom sets and fibers


@dataclass(frozen=True)
class AtomSet:
    """A finite set of atoms plus at most one full segment {k >= start}."""

    finite: frozenset = field(default_factory=frozenset)
    start: Optional[int] = None

    @classmethod
    def make(cls, finite: Iterable[int] = (), start: Optional[int] = None) -> "AtomSet":
        fin = set(finite)
        if start is not None:
            fin = {k for k in fin if k < start}
            while start - 1 in fin:
                start -= 1
                fin.discard(start)
        return cls(frozenset(fin), start)

    def __contains__(self, k: int) -> bool:
        return k in self.finite or (self.start is not None and k >= self.start)

    def __bool__(self) -> bool:
        return bool(self.finite) or self.start is not None

    def __iter__(self):
        if self.start is not None:
            raise TypeError("atom set contains an infinite segment")
        return iter(sorted(self.finite))

    def __len__(self) -> int:
        if self.start is not None:
            raise TypeError("atom set contains an infinite segment")
        return len(self.finite)

    def union(self, other: "AtomSet") -> "AtomSet":
        starts = [s for s in (self.start, other.start) if s is not None]
        return AtomSet.make(self.finite | other.finite, min(starts) if starts else None)

    def __repr__(self) -> str:
        parts = [str(k) for k in sorted(self.finite)]
        if self.start is not None:
            parts.append(f"{self.start}..")
        return "{" + ", ".join(parts) + "}"


def preimage(system: WeightedSystem, target: AtomSet) -> AtomSet:
    """phi^{-1}(target)."""
    head = [j for j in range(len(system.phi)) if system.phi[j] in target]
    if system.finite:
        return AtomSet.make(head)
    K = system.head_size
    tm = system.tail_map
    fin = set(head)
    start = None
    if isinstance(tm, Constant):
        if tm.c in target:
            start = K
    elif isinstance(tm, ShiftDown):
        fin.update(s + tm.d for s in target.finite if s + tm.d >= K)
        if target.start is not None:
            start = max(K, target.start + tm.d)
    elif isinstance(tm, ShiftUp):
        fin.update(s - tm.d for s in target.finite if s - tm.d >= K)
        if target.start is not None:
            start = max(K, target.start - tm.d)
    else:
        raise UnsupportedTailFiber(f"unknown tail map {tm!r}")
    return AtomSet.make(fin, start)


def fiber(system: WeightedSystem, k: int, n: int = 1) -> AtomSet:
    """{j : phi^n(j) = k}."""
    if n < 1:
        raise ValueError("fiber order must be >= 1")
    if system.finite and not 0 <= k < system.size:
        raise InvalidMap(f"atom {k} is out of range")
    s = AtomSet.make([k])
    for _ in range(n):
        s = preimage(system, s)
    return s


def iterate(system: WeightedSystem, j: int, n: int) -> int:
    """phi^n(j)."""
    for _ in range(n):
        j = system.map(j)
    return j


# ---------------------------------------------------------------------------
# measure totals and graph-norm weights


def mu_total(system: WeightedSystem):
    """mu(X) = sum of all masses; INF when the tail series diverges."""
    if system.finite:
        return sum(system.model.masses, 0)
    return ext_add(sum(system.model.head_masses, 0),
                   system.masses_function().tail.sum_from(system.head_size))


def mu_u_total(system: WeightedSystem):
    """mu_u(X) = sum_k |u_k|^2 m_k; INF on divergence."""
    if system.finite:
        return sum((w * m for w, m in zip(system.usq, system.model.masses)), 0)
    head = sum((w * m for w, m in zip(system.usq, system.model.head_masses)), 0)
    tail = system.masses_function().tail
    tu = system.weights_function().tail
    prod = GeoPoly.make((a * b, r * s) for a, r in tail.terms for b, s in tu.terms)
    return ext_add(head, prod.sum_from(system.head_size))


def nu_weights(system: WeightedSystem) -> AtomFunction:
    """Density w = 1 + J_1 of the measure whose L^2 norm is the graph norm."""
    from .calculus import j_table

    j1 = j_table(system, 1).J(1)
    one = to_field(1, system.field)
    vals = tuple(ext_add(one, v) for v in j1.values)
    tail = None if j1.tail is None else j1.tail + GeoPoly.constant(one)
    return AtomFunction(vals, tail)


def is_injective(system: WeightedSystem) -> bool:
    """Whether phi is one-to-one on every atom."""
    if system.finite:
        return len(set(system.phi)) == len(system.phi)
    tm = system.tail_map
    if isinstance(tm, Constant):
        return False
    K = system.head_size
    head = list(system.phi)
    if len(set(head)) != len(head):
        return False
    # tail images are k -/+ d for k >= K; a head atom collides with one of them
    lo = K - tm.d if isinstance(tm, ShiftDown) else K + tm.d
    return all(v < lo for v in head)


def is_surjective(system: WeightedSystem) -> bool:
    if system.finite:
        return len(set(system.phi)) == system.size
    tm = system.tail_map
    if isinstance(tm, Constant):
        return False
    K = system.head_size
    lo = K - tm.d if isinstance(tm, ShiftDown) else K + tm.d
    return set(range(lo)) <= set(system.phi)
