import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from wcop import finite_system, j_table, delta, tail_system, Constant
from wcop.catalog import two_cycle
from wcop.errors import OracleMismatch, RefusesTailSpace
from wcop.oracle import (
    apply,
    binomial_gram,
    is_diagonal,
    is_positive_semidefinite,
    matrix_of,
    oracle_verdicts,
    quadratic_form,
    random_corpus,
    random_vector,
    theta,
    unitary_check,
    _matmul,
    _transpose,
)
from wcop.surd import Surd

from conftest import systems


def test_matrix_of_s1(S1):
    M = matrix_of(S1).dense()
    # row j has u_j sqrt(m_j / m_phi(j)) in column phi(j)
    assert M[0] == [1, 0, 0]
    assert M[1] == [Surd.sqrt(2), 0, 0]
    assert M[2] == [0, Surd.sqrt(F(4, 2)), 0]


def _gram_diag(system, i):
    N = system.size
    M = list(matrix_of(system).rows)
    P = [{k: Surd.rational(1)} for k in range(N)]
    for _ in range(i):
        P = _matmul(P, M)
    G = _matmul(_transpose(P, N), P)
    return [G[k].get(k, Surd()) for k in range(N)], G


@settings(max_examples=60, deadline=None)
@given(systems())
def test_gram_of_powers_is_J(system):
    jt = j_table(system, 4)
    for i in range(1, 5):
        diag, G = _gram_diag(system, i)
        assert diag == list(jt.J(i))
        assert all(not v for r, row in enumerate(G) for c, v in row.items() if r != c)


def test_theta_examples(S1):
    f = (F(1), F(0), F(0))
    # ||f||^2 = 1, ||T f||^2 = 1 + 2 = 3
    assert theta(S1, 1, f) == -2
    assert theta(S1, 1, (0, 0, 1)) == 1
    assert theta(S1, 2, (1, 0, 0)) == 1 - 2 * 3 + 7
    with pytest.raises(ValueError):
        theta(S1, 0, f)


def test_theta_matches_apply():
    rng = random.Random(3)
    for system in random_corpus(1, 20):
        for _ in range(10):
            f = random_vector(rng, system.size)
            g, norms = f, []
            for i in range(4):
                norms.append(sum(float(x) ** 2 * mk for x, mk in zip(g, system.model.masses)))
                g = apply(system, g)
            assert float(theta(system, 3, f)) == pytest.approx(norms[0] - 3 * norms[1] + 3 * norms[2] - norms[3])


def test_binomial_gram_examples(S1, ident):
    assert [row for row in binomial_gram(ident, 2)] == [[0, 0, 0]] * 3
    B = binomial_gram(S1, 1)
    assert is_diagonal(B)
    assert [B[k][k] for k in range(3)] == [-2, -1, 1]
    mult = finite_system([1], [0], [4])
    assert binomial_gram(mult, 2) == [[Surd.rational(9)]]


def test_binomial_gram_diagonal_on_corpus():
    for system in random_corpus(7, 200):
        jt = j_table(system, 4)
        for n in range(1, 5):
            B = binomial_gram(system, n)
            assert is_diagonal(B)
            assert [B[k][k] for k in range(system.size)] == list(delta(jt, n))


@settings(max_examples=40, deadline=None)
@given(systems())
def test_theta_is_quadratic_form(system):
    rng = random.Random(system.size)
    for n in range(1, 4):
        B = binomial_gram(system, n)
        for _ in range(5):
            f = random_vector(rng, system.size)
            assert quadratic_form(system, B, f) == theta(system, n, f)


def test_psd():
    assert is_positive_semidefinite([[2, 1], [1, 2]])
    assert not is_positive_semidefinite([[1, 2], [2, 1]])
    assert is_positive_semidefinite([[0, 0], [0, 0]])
    assert not is_positive_semidefinite([[0, 1], [1, 0]])


def test_unitary_check(ident):
    assert unitary_check(ident)
    assert unitary_check(two_cycle())
    assert not unitary_check(finite_system([1, 2], [1, 0], [1, 1]))
    assert unitary_check(finite_system([1, 2], [1, 0], [2, F(1, 2)]))
    assert not unitary_check(finite_system([1, 1], [0, 0], [1, 1]))


def test_oracle_verdicts_examples(S1, ident):
    rep = oracle_verdicts(S1, K=3, trials=20, seed=0)
    assert rep.agreement
    o1 = rep.orders[0]
    assert not o1.expansive and o1.positive_found and o1.diagonal_values == [-2, -1, 1]
    rep = oracle_verdicts(ident, K=4, trials=10, seed=1)
    assert all(o.isometry for o in rep.orders)
    with pytest.raises(ValueError):
        oracle_verdicts(ident, trials=5)


def test_oracle_refuses_tails():
    s = tail_system([1], [0], [0], (1, F(1, 2)), (1, 1), Constant(0))
    with pytest.raises(RefusesTailSpace):
        oracle_verdicts(s)
    with pytest.raises(RefusesTailSpace):
        matrix_of(s)


def test_oracle_detects_a_wrong_criterion(S1, monkeypatch):
    from wcop import calculus

    real = calculus.delta

    def skewed(jt, n, m=0):
        d = real(jt, n, m)
        return type(d)(tuple(v + 1 for v in d)) if n == 1 else d

    monkeypatch.setattr(calculus, "delta", skewed)
    with pytest.raises(OracleMismatch) as exc:
        oracle_verdicts(S1, K=2)
    assert exc.value.report.mismatches
    rep = oracle_verdicts(S1, K=2, strict=False)
    assert not rep.agreement


def test_float_oracle():
    s = finite_system([1.0, 2.0, 1.0], [0, 0, 1], [1.0, 1.0, 4.0], field="float")
    rep = oracle_verdicts(s, K=3, trials=10, seed=2)
    assert rep.agreement and rep.orders[0].diagonal_values == pytest.approx([-2, -1, 1])
