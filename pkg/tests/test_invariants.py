import random
from fractions import Fraction

import pytest

from cdalg.algebra import Algebra, SquareMatrix, base_change, substitute_algebra_params
from cdalg.catalog import builtin
from cdalg.invariants import (
    annihilator_dimension,
    derivation_algebra,
    derivation_dimension,
    invariant_profile,
    orbit_dimension,
    power_series_dims,
    square_dimension,
)

import oracles

E11_E2 = Algebra.from_products("A", 2, {(1, 1): {2: 1}})
E11_E1 = Algebra.from_products("I", 1, {(1, 1): {1: 1}})


def fractions_of(A):
    return [[[v.to_fraction() for v in vec] for vec in row] for row in A.constants]


def test_square_dimension():
    assert square_dimension(builtin("N3")) == 1
    assert square_dimension(builtin("N2")) == 2
    assert square_dimension(builtin("D401")) == 2


def test_power_series():
    N2 = power_series_dims(builtin("N2"))
    assert N2.dims == (4, 2, 0) and N2.nilpotent and N2.two_step
    D = power_series_dims(builtin("D401"))
    assert D.dims == (4, 2, 1, 0) and D.nilpotent and not D.two_step
    assert D.nilpotency_index == 4
    for n in range(1, 5):
        assert power_series_dims(Algebra.zero(n)).dims == (n, 0)
    idem = power_series_dims(E11_E1)
    assert not idem.nilpotent and idem.dims[-1] == 1


def test_annihilator():
    for n in range(1, 5):
        assert annihilator_dimension(Algebra.zero(n)) == n
    assert annihilator_dimension(substitute_algebra_params(builtin("N3"), {"alpha": 1})) == 1
    assert annihilator_dimension(E11_E2) == 1


def test_derivations_small():
    for n in range(1, 5):
        assert derivation_algebra(Algebra.zero(n)).dimension == n * n
    assert derivation_algebra(E11_E2).dimension == 2
    assert derivation_algebra(E11_E1).dimension == 0


def test_orbit_dimension():
    assert orbit_dimension(Algebra.zero(4)) == 0
    assert orbit_dimension(E11_E2) == 2


def test_n3_profile_against_oracle():
    A = substitute_algebra_params(builtin("N3"), {"alpha": 1})
    d3 = oracles.derivation_dim(fractions_of(A))
    p = invariant_profile(A)
    assert (p.square, p.derivations, p.orbit) == (1, d3, 16 - d3)
    z = invariant_profile(Algebra.zero(4))
    assert (z.square, z.derivations, z.orbit) == (0, 16, 0)


def test_generic_rank_matches_random_members():
    # generic Der dim is the minimum over members; random points attain it
    rng = random.Random(4)
    for name in ("D401", "N2", "N3"):
        F = builtin(name)
        generic = derivation_dimension(F)
        seen = []
        for _ in range(3):
            vals = {p: Fraction(rng.randint(-999, 999), rng.randint(1, 999)) for p in F.params}
            seen.append(oracles.derivation_dim(fractions_of(substitute_algebra_params(F, vals))))
        assert min(seen) == generic
        assert all(s >= generic for s in seen)


def test_extended_profile():
    p = invariant_profile(builtin("D401"), "extended")
    d = p.to_dict()
    assert d["power_series_dims"] == [4, 2, 1, 0]
    assert d["annihilator_dimension"] == 1
    assert d["square_dimension"] == power_series_dims(builtin("D401")).dims[1]
    with pytest.raises(ValueError):
        invariant_profile(E11_E2, "bogus")


def test_invariants_are_isomorphism_invariant():
    rng = random.Random(21)
    algebras = [
        substitute_algebra_params(builtin("N3"), {"alpha": 1}),
        substitute_algebra_params(builtin("D401"), {"lambda": 2, "alpha": -1, "beta": 3}),
        Algebra("R", 3, (), oracles.random_constants(rng, 3)),
    ]
    for A in algebras:
        want = invariant_profile(A, "extended")
        for _ in range(20):
            g = SquareMatrix(oracles.random_invertible(rng, A.dim, bound=2))
            assert invariant_profile(base_change(A, g), "extended") == want
