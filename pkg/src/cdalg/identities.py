"""Membership tests for the identity-defined classes of algebras.

An algebra is a CD-algebra when the commutator of any two multiplication
operators is a derivation: ``[L_a, L_b]``, ``[L_a, R_b]`` and ``[R_a, R_b]``
must all satisfy ``D(xy) = D(x)y + xD(y)``.  Both sides are linear in each
of ``a``, ``b``, ``x``, ``y``, so it is enough to sweep basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, SquareMatrix, product_constants
from .errors import DimensionMismatchError
from .scalars import ONE, ZERO

__all__ = [
    "CDReport",
    "Symmetry",
    "is_derivation",
    "derivation_defect",
    "check_cd",
    "check_symmetry",
    "is_cd_algebra",
]


def _basis_operators(A: Algebra):
    n = A.dim
    c = A.constants
    # L_a[k][j] = c[a][j][k],  R_a[k][j] = c[j][a][k]
    left = [SquareMatrix([[c[a][j][k] for j in range(n)] for k in range(n)]) for a in range(n)]
    right = [SquareMatrix([[c[j][a][k] for j in range(n)] for k in range(n)]) for a in range(n)]
    return left, right


def derivation_defect(A: Algebra, D: SquareMatrix):
    """First basis pair (i, j), 0-based, where ``D`` fails the Leibniz rule, or None."""
    if D.dim != A.dim:
        raise DimensionMismatchError("derivation and algebra dimensions differ")
    n = A.dim
    c = A.constants
    images = [list(D.column(i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = D.apply(c[i][j])
            e_i = [ZERO] * n
            e_j = [ZERO] * n
            e_i[i] = ONE
            e_j[j] = ONE
            rhs1 = product_constants(c, images[i], e_j)
            rhs2 = product_constants(c, e_i, images[j])
            if any(l != a + b for l, a, b in zip(lhs, rhs1, rhs2)):
                return i, j
    return None


def is_derivation(A: Algebra, D: SquareMatrix) -> bool:
    """``D(e_i e_j) = D(e_i) e_j + e_i D(e_j)`` for every basis pair."""
    return derivation_defect(A, D) is None


@dataclass(frozen=True)
class CDReport:
    LL: bool
    LR: bool
    RR: bool

    @property
    def is_cd(self) -> bool:
        return self.LL and self.LR and self.RR


def check_cd(A: Algebra) -> CDReport:
    left, right = _basis_operators(A)
    n = A.dim

    def all_derivations(X, Y, symmetric):
        for a in range(n):
            for b in range(a + 1 if symmetric else 0, n):
                D = X[a].commutator(Y[b])
                if not D.is_zero() and not is_derivation(A, D):
                    return False
        return True

    # [L_a, L_a] = 0 and [L_b, L_a] = -[L_a, L_b], so a < b covers LL and RR
    return CDReport(
        LL=all_derivations(left, left, True),
        LR=all_derivations(left, right, False),
        RR=all_derivations(right, right, True),
    )


def is_cd_algebra(A: Algebra) -> bool:
    return check_cd(A).is_cd


@dataclass(frozen=True)
class Symmetry:
    kind: str  # commutative | anticommutative | neither
    also_anticommutative: bool = False

    def __str__(self):
        if self.also_anticommutative:
            return f"{self.kind} (also anticommutative)"
        return self.kind


def check_symmetry(A: Algebra) -> Symmetry:
    n = A.dim
    c = A.constants
    comm = all(c[i][j][k] == c[j][i][k] for i in range(n) for j in range(i, n) for k in range(n))
    anti = all(c[i][j][k] == -c[j][i][k] for i in range(n) for j in range(i, n) for k in range(n))
    if comm:
        return Symmetry("commutative", anti)
    if anti:
        return Symmetry("anticommutative")
    return Symmetry("neither")
