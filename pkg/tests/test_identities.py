import random
from fractions import Fraction

import pytest

from cdalg import linalg
from cdalg.algebra import Algebra, SquareMatrix, base_change, mul_operators, substitute_algebra_params
from cdalg.catalog import builtin
from cdalg.identities import check_cd, check_symmetry, is_derivation
from cdalg.invariants import derivation_algebra
from cdalg.scalars import scalar

import oracles

E11_E2 = Algebra.from_products("A", 2, {(1, 1): {2: 1}})
# e1e1 = e2, e1e2 = e1: [L_e1, R_e1] is not a derivation
NOT_CD = Algebra.from_products("X", 2, {(1, 1): {2: 1}, (1, 2): {1: 1}})


def test_is_derivation_examples():
    assert is_derivation(E11_E2, SquareMatrix.zero(2))
    assert is_derivation(E11_E2, SquareMatrix.diag([1, 2]))
    # D e2 = e1, D e1 = 0: D(e1e1) = e1 but D(e1)e1 + e1D(e1) = 0
    assert not is_derivation(E11_E2, SquareMatrix([[0, 1], [0, 0]]))


@pytest.mark.parametrize("name", ["N2", "N3", "D401", "zero4"])
def test_builtins_are_cd(name):
    report = check_cd(builtin(name))
    assert (report.LL, report.LR, report.RR) == (True, True, True)


def test_sampled_members_are_cd():
    rng = random.Random(11)
    for _ in range(3):
        vals = {p: Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for p in ("lambda", "alpha", "beta")}
        assert check_cd(substitute_algebra_params(builtin("D401"), vals)).is_cd
        assert check_cd(substitute_algebra_params(builtin("N2"), {"alpha": vals["alpha"]})).is_cd


def test_not_cd_detected():
    report = check_cd(NOT_CD)
    assert not report.is_cd
    assert report.LL and not report.LR


def test_symmetry():
    z = check_symmetry(Algebra.zero(3))
    assert z.kind == "commutative" and z.also_anticommutative
    N3 = builtin("N3")
    assert check_symmetry(substitute_algebra_params(N3, {"alpha": 1})).kind == "neither"
    assert check_symmetry(substitute_algebra_params(N3, {"alpha": 0})).kind == "commutative"
    lie = Algebra.from_products("h", 3, {(1, 2): {3: 1}, (2, 1): {3: -1}})
    assert check_symmetry(lie).kind == "anticommutative"


def _in_span(basis, M):
    flat = lambda X: [X[i, j] for i in range(X.dim) for j in range(X.dim)]
    rows = [flat(B) for B in basis]
    return linalg.rank(rows + [flat(M)]) == linalg.rank(rows)


@pytest.mark.parametrize("name", ["N3", "D401"])
def test_derivations_form_lie_algebra(name):
    A = builtin(name)
    basis = derivation_algebra(A).basis
    for D in basis:
        assert is_derivation(A, D)
    for i, D1 in enumerate(basis):
        for D2 in basis[i + 1 :]:
            C = D1.commutator(D2)
            assert is_derivation(A, C)
            assert _in_span(basis, C)


def _random_vector(rng, n):
    return tuple(scalar(Fraction(rng.randint(-20, 20), rng.randint(1, 5))) for _ in range(n))


@pytest.mark.parametrize("A", [NOT_CD, builtin("N3"), Algebra.from_products("W", 3, {(1, 1): {2: 1}, (1, 2): {3: 1}})])
def test_basis_sweep_matches_random_vectors(A):
    rng = random.Random(5)
    report = check_cd(A)
    found = {"LL": True, "LR": True, "RR": True}
    for _ in range(100):
        a, b = _random_vector(rng, A.dim), _random_vector(rng, A.dim)
        La, Ra = mul_operators(A, a)
        Lb, Rb = mul_operators(A, b)
        found["LL"] &= is_derivation(A, La.commutator(Lb))
        found["LR"] &= is_derivation(A, La.commutator(Rb))
        found["RR"] &= is_derivation(A, Ra.commutator(Rb))
        if not any(found.values()):
            break
    assert found == {"LL": report.LL, "LR": report.LR, "RR": report.RR}


def test_two_step_algebras_are_cd():
    rng = random.Random(2)
    for n in (2, 3, 4):
        for _ in range(5):
            A = Algebra("T", n, (), oracles.random_two_step(rng, n))
            assert check_cd(A).is_cd


def test_cd_isomorphism_invariant():
    rng = random.Random(9)
    for A in [NOT_CD, builtin("N3"), Algebra("R", 3, (), oracles.random_constants(rng, 3))]:
        before = check_cd(A)
        for _ in range(3):
            g = SquareMatrix(oracles.random_invertible(rng, A.dim))
            assert check_cd(base_change(A, g)) == before
