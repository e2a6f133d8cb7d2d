from fractions import Fraction

import pytest
from hypothesis import strategies as st

from wcop import finite_system


def brute_iterate(phi, j, n):
    for _ in range(n):
        j = phi[j]
    return j


def brute_J(masses, phi, usq, n):
    """J_n(k) m_k = ||T^n e_k||^2 summed by scanning every atom's orbit."""
    N = len(masses)
    out = [Fraction(0)] * N
    for j in range(N):
        p, t = Fraction(1), j
        for _ in range(n):
            p *= usq[t]
            t = phi[t]
        out[t] += p * masses[j]
    return [out[k] / masses[k] for k in range(N)]


@pytest.fixture
def S1():
    return finite_system([1, 2, 1], [0, 0, 1], [1, 1, 4])


@pytest.fixture
def ident():
    return finite_system([1, 1, 1], [0, 1, 2], [1, 1, 1])


def fractions(zero=False):
    pq = st.builds(Fraction, st.integers(1, 9), st.integers(1, 9))
    return st.one_of(st.just(Fraction(0)), pq) if zero else pq


@st.composite
def systems(draw, max_atoms=6):
    n = draw(st.integers(1, max_atoms))
    masses = draw(st.lists(fractions(), min_size=n, max_size=n))
    phi = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    usq = draw(st.lists(fractions(zero=True), min_size=n, max_size=n))
    return finite_system(masses, phi, usq)
