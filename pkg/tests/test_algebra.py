import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdalg.algebra import (
    Algebra,
    SquareMatrix,
    base_change,
    mul_operators,
    product,
    substitute_algebra_params,
)
from cdalg.catalog import builtin
from cdalg.errors import CDAlgError, DimensionMismatchError
from cdalg.scalars import ONE, ZERO, scalar, var

import oracles

alpha = var("alpha")


def vec(*xs):
    return tuple(scalar(x) if not hasattr(x, "num") else x for x in xs)


def e(i, n=4):
    return tuple(ONE if k == i - 1 else ZERO for k in range(n))


def test_n2_products():
    N2 = builtin("N2")
    assert product(N2, e(1), e(1)) == e(3)
    assert product(N2, e(2), e(1)) == tuple(-alpha * x for x in e(3))
    assert product(N2, vec(0, 0, 0, 0), e(2)) == vec(0, 0, 0, 0)


def test_n3_left_operator():
    L, R = mul_operators(builtin("N3"), e(3))
    assert L.column(2) == e(4)
    nonzero = [j for j in range(4) if any(L.column(j))]
    assert nonzero == [2]


def test_zero_and_commutative_operators():
    Z = Algebra.zero(3)
    L, R = mul_operators(Z, vec(1, 2, 3))
    assert L.is_zero() and R.is_zero()
    C = Algebra.from_products("C", 2, {(1, 1): {2: 1}, (1, 2): {1: 1}, (2, 1): {1: 1}})
    for a in [vec(1, 0), vec(2, -3), vec(Fraction(1, 2), 5)]:
        L, R = mul_operators(C, a)
        assert L == R


def test_base_change_examples():
    A = Algebra.from_products("A", 2, {(1, 1): {2: 1}})
    assert base_change(A, SquareMatrix.identity(2)).structurally_equal(A)
    B = base_change(A, SquareMatrix.diag([2, 1]))
    assert B.c(0, 0, 1) == scalar(Fraction(1, 4))


def test_base_change_matches_oracle():
    rng = random.Random(3)
    for n in (2, 3):
        c = oracles.random_constants(rng, n)
        g = oracles.random_invertible(rng, n)
        got = base_change(Algebra("R", n, (), c), SquareMatrix(g))
        want = oracles.base_change(c, g)
        assert got.constants == tuple(tuple(tuple(scalar(x) for x in v) for v in row) for row in want)


def test_substitute_params():
    N2 = substitute_algebra_params(builtin("N2"), {"alpha": 0})
    assert [(i, j) for i, j, _ in N2.products()] == [(0, 0), (0, 1), (1, 1)]
    D = substitute_algebra_params(builtin("D401"), {"lambda": 0, "alpha": 0, "beta": 0})
    table = {(i + 1, j + 1): v for i, j, v in D.products()}
    assert table == {(1, 1): e(4), (2, 1): e(3), (2, 2): e(3), (3, 1): e(4)}
    assert not D.is_family()


def test_validation():
    with pytest.raises(CDAlgError):
        Algebra.from_products("bad", 2, {(1, 1): {2: var("t")}})
    with pytest.raises(CDAlgError):
        Algebra.from_products("bad", 2, {(1, 1): {2: var("beta")}}, params=("alpha",))
    with pytest.raises(DimensionMismatchError):
        product(Algebra.zero(2), vec(1, 2, 3), vec(1, 2))


# -- properties -------------------------------------------------------------

_q = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def algebra_and_vectors(draw):
    n = draw(st.integers(2, 4))
    c = [[[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    A = Algebra("H", n, (), c)
    vs = [tuple(scalar(draw(_q)) for _ in range(n)) for _ in range(3)]
    return A, vs


@given(algebra_and_vectors())
def test_bilinear(data):
    A, (x, x2, y) = data
    s = tuple(p + q for p, q in zip(x, x2))
    assert product(A, s, y) == tuple(p + q for p, q in zip(product(A, x, y), product(A, x2, y)))
    assert product(A, y, s) == tuple(p + q for p, q in zip(product(A, y, x), product(A, y, x2)))


@given(algebra_and_vectors())
def test_operators_consistent(data):
    A, (a, y, _) = data
    L, R = mul_operators(A, a)
    assert L.apply(y) == product(A, a, y)
    assert R.apply(y) == product(A, y, a)


def test_action_law_symbolic():
    # parameters ride along through base change
    A = builtin("N2")
    g = SquareMatrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 1, 1]])
    h = SquareMatrix([[1, 0, 0, 0], [alpha, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]])
    assert base_change(A, g @ h).structurally_equal(base_change(base_change(A, h), g))
