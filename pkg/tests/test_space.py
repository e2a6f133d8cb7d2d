from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings

from wcop import AtomSet, Constant, ShiftDown, ShiftUp, fiber, finite_system, mu_total, mu_u_total, nu_weights, tail_system
from wcop.errors import InvalidMap, InvalidMass, InvalidTail, MixedField
from wcop.oracle import theta
from wcop.space import is_injective, is_surjective, preimage

from conftest import brute_iterate, systems


def test_validate_accepts_s1(S1):
    assert S1.model.masses == (1, 2, 1)
    assert all(isinstance(m, F) for m in S1.model.masses)


@pytest.mark.parametrize("masses, phi, usq, err", [
    ([1, 0, 1], [0, 0, 1], [1, 1, 4], InvalidMass),
    ([1, -2, 1], [0, 0, 1], [1, 1, 4], InvalidMass),
    ([1, 2, 1], [0, 5, 1], [1, 1, 4], InvalidMap),
    ([1, 2, 1], [0, -1, 1], [1, 1, 4], InvalidMap),
    ([1, 2, 1], [0, 0], [1, 1, 4], InvalidMap),
    ([1, 2, 1], [0, 0, 1], [1, -1, 4], InvalidMass),
    ([1, "sqrt(2)", 1], [0, 0, 1], [1, 1, 4], MixedField),
    ([1, 2, 1], [0, 0, 1], [1, "pi", 4], MixedField),
    ([], [], [], InvalidMass),
])
def test_validate_rejects(masses, phi, usq, err):
    with pytest.raises(err):
        finite_system(masses, phi, usq)


def test_exact_decimal_and_fraction_literals():
    s = finite_system(["7/4", "0.5", 2], [0, 0, 1], [1, 1, 1])
    assert s.model.masses == (F(7, 4), F(1, 2), F(2))


def test_float_mode_reads_roots():
    s = finite_system([1, 1], [0, 1], ["sqrt(2)", 1], field="float")
    assert s.usq[0] == pytest.approx(2 ** 0.5)


def test_invalid_tails():
    with pytest.raises(InvalidTail):
        tail_system([1], [0], [0], (1, 0), (1, 1), Constant(0))
    with pytest.raises(InvalidTail):
        tail_system([1], [0], [0], (1, 1), (1, -1), Constant(0))
    with pytest.raises(InvalidMass):
        tail_system([1], [0], [0], (0, 1), (1, 1), Constant(0))
    with pytest.raises(InvalidMap):
        tail_system([1], [0], [0], (1, 1), (1, 1), Constant(1))
    with pytest.raises(InvalidMap):
        tail_system([1], [0], [0], (1, 1), (1, 1), ShiftDown(2))


def test_fiber_examples(S1, ident):
    assert list(fiber(S1, 0, 1)) == [0, 1]
    assert list(fiber(S1, 0, 2)) == [0, 1, 2]
    assert not fiber(S1, 2, 1)
    for k in range(3):
        for n in range(1, 5):
            assert list(fiber(ident, k, n)) == [k]


@settings(max_examples=60, deadline=None)
@given(systems())
def test_fibers_partition_and_compose(system):
    N = system.size
    for n in range(1, 6):
        seen = []
        for k in range(N):
            fib = list(fiber(system, k, n))
            assert fib == [j for j in range(N) if brute_iterate(system.phi, j, n) == k]
            seen.extend(fib)
            composed = set()
            for j in fiber(system, k, 1):
                composed |= set(fiber(system, j, n))
            assert set(fiber(system, k, n + 1)) == composed
        assert sorted(seen) == list(range(N))


def test_tail_fibers():
    star = tail_system([1], [0], [0], (1, 1), (1, 1), Constant(0))
    f = fiber(star, 0, 1)
    assert f.start == 0 and 0 in f and 10 ** 6 in f
    assert not fiber(star, 3, 1)

    down = tail_system([1, 1], [0, 0], [1, 1], (1, F(1, 2)), (1, 1), ShiftDown(1))
    assert fiber(down, 5, 1) == AtomSet.make([6])
    assert fiber(down, 1, 1) == AtomSet.make([2])
    assert fiber(down, 0, 1) == AtomSet.make([0, 1])
    assert fiber(down, 0, 2) == AtomSet.make([0, 1, 2])

    up = tail_system([1, 1], [0, 1], [1, 1], (1, 1), (1, 1), ShiftUp(2))
    assert not fiber(up, 2, 1) and not fiber(up, 3, 1)
    assert fiber(up, 4, 1) == AtomSet.make([2])
    assert fiber(up, 7, 2) == AtomSet.make([3])


def test_atomset_normalizes():
    s = AtomSet.make([1, 4, 5, 9], start=6)
    assert s == AtomSet(frozenset({1}), 4)
    assert repr(s) == "{1, 4..}"


def test_nu_weights_examples(S1, ident):
    assert tuple(nu_weights(S1)) == (4, 3, 1)
    assert tuple(nu_weights(ident)) == (2, 2, 2)
    star = tail_system([1], [0], [0], (1, 1), (1, 1), Constant(0))
    w = nu_weights(star)
    assert w[0] == float("inf") and w[5] == 1


@settings(max_examples=40, deadline=None)
@given(systems())
def test_nu_weights_is_graph_norm(system):
    w = nu_weights(system)
    m = system.model.masses
    for k in range(system.size):
        f = [F(0)] * system.size
        f[k] = F(k + 2, 3)
        lhs = sum(w[i] * f[i] ** 2 * m[i] for i in range(system.size))
        norm = sum(f[i] ** 2 * m[i] for i in range(system.size))
        # Theta_1 = ||f||^2 - ||Tf||^2
        assert lhs == norm + (norm - theta(system, 1, f))


def test_mu_u_total_examples(S1):
    assert mu_u_total(S1) == 7
    assert mu_total(S1) == 4
    zero = finite_system([1, 2], [0, 1], [0, 0])
    assert mu_u_total(zero) == 0
    t = tail_system([1], [0], [1], (1, 1), (1, F(1, 2)), Constant(0))
    assert mu_u_total(t) == 3
    assert mu_total(t) == float("inf")


def test_mu_u_total_matches_series():
    k = sympy.Symbol("k", integer=True, nonnegative=True)
    t = tail_system([2, 3], [0, 0], [1, 2], (F(1, 3), F(2, 3)), (5, F(3, 4)), ShiftDown(1))
    series = sympy.summation(sympy.Rational(1, 3) * sympy.Rational(2, 3) ** k * 5 * sympy.Rational(3, 4) ** k,
                             (k, 0, sympy.oo))
    assert mu_u_total(t) == F(str(2 * 1 + 3 * 2 + series))


def test_injective_surjective():
    assert is_injective(finite_system([1, 1], [1, 0], [1, 1]))
    assert not is_injective(finite_system([1, 2, 1], [0, 0, 1], [1, 1, 1]))
    down = tail_system([1], [0], [1], (1, 1), (1, 1), ShiftDown(1))
    assert not is_injective(down)  # phi(0) = phi(1) = 0
    shifted = tail_system([1, 1], [1, 0], [1, 1], (1, 1), (1, 1), ShiftUp(1))
    assert is_injective(shifted) and not is_surjective(shifted)
    onto = tail_system([1, 1], [1, 0], [1, 1], (1, 1), (1, 1), ShiftDown(1))
    assert not is_injective(onto)


def test_preimage_of_segment():
    down = tail_system([1, 1], [0, 0], [1, 1], (1, 1), (1, 1), ShiftDown(1))
    assert preimage(down, AtomSet.make([], 5)) == AtomSet.make([], 6)
    up = tail_system([1, 1], [0, 0], [1, 1], (1, 1), (1, 1), ShiftUp(3))
    assert preimage(up, AtomSet.make([], 4)) == AtomSet.make([], 2)
