import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from wcop import (
    Constant,
    ShiftDown,
    ShiftUp,
    cocycle,
    completely_alternating,
    conditional_expectation,
    delta,
    finite_system,
    j_table,
    radon_nikodym,
    tail_system,
)
from wcop.calculus import DIRECT, RECURSION
from wcop.catalog import dirichlet
from wcop.errors import DepthExceedsData, InfiniteValue, UnsupportedTailAnalysis
from wcop.geopoly import AtomFunction, GeoPoly
from wcop.oracle import apply, random_vector

from conftest import brute_J, systems


def test_radon_nikodym_examples(S1, ident):
    assert tuple(radon_nikodym(S1, 1)) == (3, F(1, 2), 0)
    assert radon_nikodym(S1, 2)[0] == 4
    for i in range(1, 5):
        assert tuple(radon_nikodym(ident, i)) == (1, 1, 1)


@settings(max_examples=40, deadline=None)
@given(systems())
def test_radon_nikodym_is_unit_weight_J(system):
    jt = j_table(system.composition_part(), 4)
    for i in range(1, 5):
        assert radon_nikodym(system, i) == jt.J(i)


def test_conditional_expectation_examples(S1, ident):
    f = (F(2), F(5), F(7))
    assert tuple(conditional_expectation(S1, f)) == ((2 + 2 * 5) / F(3), (2 + 2 * 5) / F(3), 7)
    assert tuple(conditional_expectation(ident, f)) == f
    assert tuple(conditional_expectation(S1, (3, 3, 3))) == (3, 3, 3)


@settings(max_examples=60, deadline=None)
@given(systems(), st.lists(st.integers(-9, 9), min_size=6, max_size=6))
def test_conditional_expectation_properties(system, raw):
    f = [F(v) for v in raw[:system.size]]
    e = conditional_expectation(system, f)
    assert conditional_expectation(system, e.values) == e
    assert all(min(f) <= v <= max(f) for v in e)
    assert all(v == 1 for v in conditional_expectation(system, [1] * system.size))


def test_conditional_expectation_tail():
    down = tail_system([1, 2], [0, 0], [1, 1], (1, F(1, 2)), (1, 1), ShiftDown(1))
    f = AtomFunction((F(3), F(6)), GeoPoly.make([(1, F(1, 3))]))
    e = conditional_expectation(down, f)
    # fiber of phi(0) = phi(1) = phi(2) = 0 is {0, 1}; beyond that phi is injective
    assert e[0] == e[1] == (3 * 1 + 6 * 2) / F(3)
    assert e[2] == F(1, 9) and e[9] == F(1, 3) ** 9
    star = tail_system([1], [0], [0], (1, F(1, 2)), (1, 1), Constant(0))
    with pytest.raises(UnsupportedTailAnalysis):
        conditional_expectation(star, f)
    with pytest.raises(UnsupportedTailAnalysis):
        conditional_expectation(down, [1, 2])


def test_cocycle_examples(S1):
    assert cocycle(S1, 2) == (1, 1, 4)
    assert cocycle(S1, 1) == S1.usq
    ones = S1.composition_part()
    for n in range(1, 5):
        assert cocycle(ones, n) == (1, 1, 1)


def test_j_table_examples(S1, ident):
    jt = j_table(S1, 2)
    assert jt.method == "both"
    assert tuple(jt.J(1)) == (3, 2, 0)
    assert tuple(jt.J(2)) == (7, 0, 0)
    # recursion by hand at atom 0: h(0) * weighted mean of J_1 usq over {0, 1}
    assert 3 * (3 * 1 * 1 + 2 * 1 * 2) / F(3) == 7
    assert all(tuple(j_table(ident, 5).J(n)) == (1, 1, 1) for n in range(6))
    mult = finite_system([1, 3], [0, 1], [4, 4])
    jm = j_table(mult, 4)
    assert all(tuple(jm.J(n)) == (4 ** n, 4 ** n) for n in range(5))


def test_j_table_dirichlet_truncation():
    s = dirichlet(8)
    jt = j_table(s, 7)
    for i in range(1, 8):
        for k in range(1, 8 - i):
            assert jt.J(i)[k] == F(k + i + 1, k + 1)
        assert jt.J(i)[0] == i + 1
        assert list(jt.J(i)) == brute_J(s.model.masses, s.phi, s.usq, i)


@settings(max_examples=150, deadline=None)
@given(systems())
def test_recursion_matches_direct(system):
    rec = j_table(system, 5, method=RECURSION)
    direct = j_table(system, 5, method=DIRECT)
    for n in range(6):
        assert rec.J(n) == direct.J(n)
        assert list(direct.J(n)) == brute_J(system.model.masses, system.phi, system.usq, n)


def test_norm_identity_on_corpus():
    rng = random.Random(11)
    from wcop.oracle import random_corpus

    for system in random_corpus(5, 30):
        jt = j_table(system, 4)
        m = system.model.masses
        for _ in range(50):
            f = random_vector(rng, system.size)
            g = f
            for n in range(1, 5):
                g = apply(system, g)
                norm = sum(x * x * mk for x, mk in zip(g, m))
                assert norm == sum(jt.J(n)[k] * f[k] ** 2 * m[k] for k in range(system.size))


def test_delta_examples(S1):
    jt = j_table(S1, 3)
    assert tuple(delta(jt, 1)) == (-2, -1, 1)
    ones = j_table(finite_system([1, 2], [0, 1], [1, 1]), 8)
    for n in range(5):
        for m in range(4):
            assert set(delta(ones, n, m)) == ({1} if n == 0 else {0})
    mult = j_table(finite_system([1], [0], [4]), 2)
    assert tuple(delta(mult, 2)) == (9,) == (1 - 2 * 4 + 16,)
    with pytest.raises(DepthExceedsData):
        delta(jt, 3, 1)


@settings(max_examples=60, deadline=None)
@given(systems())
def test_delta_first_difference(system):
    jt = j_table(system, 6)
    for m in range(6):
        d = delta(jt, 1, m)
        assert list(d) == [jt.J(m)[k] - jt.J(m + 1)[k] for k in range(system.size)]


@settings(max_examples=60, deadline=None)
@given(systems())
def test_multiplication_closed_form(system):
    mult = system.multiplication_part()
    jt = j_table(mult, 6)
    for n in range(7):
        assert tuple(delta(jt, n)) == tuple((1 - w) ** n for w in mult.usq)


def test_completely_alternating_examples():
    assert completely_alternating((1, 2, 3, 4, 5), 4, 0).passed
    assert completely_alternating((1, 2, 3, 4, 5), 2, 2).passed
    res = completely_alternating((1, 2, 4), 2, 0)
    assert not res.passed and res.witness == (0, 2) and res.value == 1
    assert completely_alternating((7,) * 9, 4, 4).passed
    with pytest.raises(DepthExceedsData):
        completely_alternating((1, 2, 3), 2, 1)


# ---------------------------------------------------------------------------
# tail spaces


def test_star_tail_J1():
    half = tail_system([1], [0], [0], (1, F(1, 2)), (1, 1), Constant(0))
    assert j_table(half, 1).J(1)[0] == 2
    one = tail_system([1], [0], [0], (1, 1), (1, 1), Constant(0))
    assert j_table(one, 1).J(1)[0] == float("inf")
    assert j_table(one, 1).J(1)[7] == 0


def test_constant_tail_matches_series():
    k = sympy.Symbol("k", integer=True, nonnegative=True)
    s = tail_system([2, 1], [1, 0], [3, F(1, 2)], (F(1, 2), F(2, 3)), (F(3, 2), F(1, 2)), Constant(1))
    jt = j_table(s, 3)
    tail_sum = sympy.summation(sympy.Rational(1, 2) * sympy.Rational(2, 3) ** k * sympy.Rational(3, 2)
                               * sympy.Rational(1, 2) ** k, (k, 0, sympy.oo))
    # fiber of 1 is {0} plus the whole tail
    expect_j1_1 = (3 * 2 + F(str(tail_sum))) / 1
    assert jt.J(1)[1] == expect_j1_1
    assert jt.J(1)[0] == F(1, 2) * 1 / 2
    # J_2(0) = J_1(1) |u_1|^2 m_1 / m_0 (atom 1 is the only preimage of 0)
    assert jt.J(2)[0] == expect_j1_1 * F(1, 2) * 1 / 2
    assert all(jt.J(n)[k] == 0 for n in (1, 2, 3) for k in range(2, 12))


def _truncate(system, N, fill):
    masses = [system.mass(k) for k in range(N)]
    usq = [system.weight(k) for k in range(N)]
    phi = [system.map(k) if system.map(k) < N else fill for k in range(N)]
    return finite_system(masses, phi, usq)


@pytest.mark.parametrize("tail_map", [ShiftDown(1), ShiftDown(2), ShiftUp(1), ShiftUp(3)])
def test_shift_tails_match_truncation(tail_map):
    s = tail_system([1, 2, F(1, 2)], [0, 0, 1], [2, 1, F(1, 3)],
                    (F(3, 2), F(2, 3)), (F(5, 4), F(3, 2)), tail_map)
    N = 40
    fin = _truncate(s, N, N - 1)
    jt, jf = j_table(s, 5), j_table(fin, 5)
    for n in range(1, 6):
        if isinstance(tail_map, ShiftDown):
            window = range(N - n * tail_map.d - 1)
        else:
            window = range(N - tail_map.d - 1)
        for k in window:
            assert jt.J(n)[k] == jf.J(n)[k], (n, k)


def test_float_mode_tracks_rational():
    rng = random.Random(2)
    from wcop.oracle import random_system

    for _ in range(20):
        s = random_system(rng, rng.randint(1, 6))
        sf = finite_system([float(m) for m in s.model.masses], s.phi, [float(w) for w in s.usq], field="float")
        a, b = j_table(s, 4), j_table(sf, 4)
        for n in range(5):
            assert list(b.J(n)) == pytest.approx([float(v) for v in a.J(n)], rel=1e-12)
