"""Semicontinuous invariants: powers, annihilator, derivations, orbit dimension.

For a family every rank is taken over Q(parameters), which is the rank at a
generic member.  Substitute parameter values first to get a specific member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .algebra import Algebra, SquareMatrix, product_constants
from .scalars import ZERO, Scalar

__all__ = [
    "PowerSeries",
    "DerivationSpace",
    "InvariantProfile",
    "square_dimension",
    "power_series_dims",
    "annihilator_dimension",
    "derivation_system",
    "derivation_algebra",
    "derivation_dimension",
    "orbit_dimension",
    "invariant_profile",
    "DER_DIRECTION_NOTE",
]

DER_DIRECTION_NOTE = (
    "dim Der is reported as non-decreasing along degenerations, as forced by "
    "orbit dim = n^2 - dim Der; the source text states the opposite inequality"
)


def square_dimension(A: Algebra) -> int:
    """``dim A^2``: rank of the n^2 x n matrix of all basis products."""
    rows = [list(A.constants[i][j]) for i in range(A.dim) for j in range(A.dim)]
    return linalg.rank(rows)


@dataclass(frozen=True)
class PowerSeries:
    dims: tuple
    nilpotent: bool
    two_step: bool

    @property
    def nilpotency_index(self) -> Optional[int]:
        """Smallest k with A^k = 0, if nilpotent."""
        return len(self.dims) if self.nilpotent else None


def _span_products(c, U, V):
    return [product_constants(c, u, v) for u in U for v in V]


def _stable(dims) -> bool:
    # A^k = ... = A^(2k-1) for some k >= 2 forces A^j = A^k for all j >= k
    m = len(dims)
    return any(dims[k - 1] == dims[2 * k - 2] for k in range(2, (m + 1) // 2 + 1))


def power_series_dims(A: Algebra) -> PowerSeries:
    """Dimensions of ``A^1 ⊇ A^2 ⊇ ...`` with ``A^k = sum_{i+j=k} A^i A^j``."""
    n = A.dim
    c = A.constants
    powers = {1: [list(A.basis_vector(i)) for i in range(n)]}
    dims = [n]
    k = 1
    while dims[-1] > 0 and not _stable(dims):
        k += 1
        gens = []
        for i in range(1, k):
            gens += _span_products(c, powers[i], powers[k - i])
        basis = linalg.row_basis(gens) if gens else []
        powers[k] = basis
        dims.append(len(basis))
    nilpotent = dims[-1] == 0
    # A A^2 + A^2 A = A^3
    two_step = nilpotent and (len(dims) < 3 or dims[2] == 0)
    return PowerSeries(tuple(dims), nilpotent, two_step)


def annihilator_dimension(A: Algebra) -> int:
    """``dim {x : xA = Ax = 0}``."""
    n = A.dim
    c = A.constants
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([c[i][j][k] for i in range(n)])
            rows.append([c[j][i][k] for i in range(n)])
    return n - linalg.rank(rows)


def derivation_system(A: Algebra) -> list:
    """The n^3 x n^2 matrix of ``D(e_i e_j) = D(e_i) e_j + e_i D(e_j)``.

    Unknown ``a*n + b`` is the entry ``D[a][b]`` (``D e_b = sum_a D[a][b] e_a``).
    """
    n = A.dim
    c = A.constants
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [ZERO] * (n * n)
                for r in range(n):
                    if c[i][j][r]:
                        row[k * n + r] = row[k * n + r] + c[i][j][r]
                for s in range(n):
                    if c[s][j][k]:
                        row[s * n + i] = row[s * n + i] - c[s][j][k]
                    if c[i][s][k]:
                        row[s * n + j] = row[s * n + j] - c[i][s][k]
                rows.append(row)
    return rows


@dataclass(frozen=True)
class DerivationSpace:
    dimension: int
    basis: tuple = field(repr=False)


def derivation_algebra(A: Algebra) -> DerivationSpace:
    n = A.dim
    null = linalg.nullspace(derivation_system(A), n * n)
    basis = tuple(
        SquareMatrix([[vec[a * n + b] for b in range(n)] for a in range(n)]) for vec in null
    )
    return DerivationSpace(len(basis), basis)


def derivation_dimension(A: Algebra) -> int:
    n = A.dim
    return n * n - linalg.rank(derivation_system(A))


def orbit_dimension(A: Algebra) -> int:
    """``n^2 - dim Der(A)``."""
    return A.dim**2 - derivation_dimension(A)


@dataclass(frozen=True)
class InvariantProfile:
    """Invariants with their direction along a degeneration ``A -> B``."""

    mode: str
    square: int
    derivations: int
    orbit: int
    powers: Optional[tuple] = None
    annihilator: Optional[int] = None
    note: str = DER_DIRECTION_NOTE

    def entries(self):
        out = [
            ("square_dimension", self.square, "non-increasing"),
            ("derivation_dimension", self.derivations, "non-decreasing"),
            ("orbit_dimension", self.orbit, "strictly decreasing if proper"),
        ]
        if self.mode == "extended":
            out.append(("power_series_dims", list(self.powers), "non-increasing"))
            out.append(("annihilator_dimension", self.annihilator, "non-decreasing"))
        return out

    def to_dict(self):
        d = {name: value for name, value, _ in self.entries()}
        d["mode"] = self.mode
        return d


def invariant_profile(A: Algebra, mode: str = "paper") -> InvariantProfile:
    if mode not in ("paper", "extended"):
        raise ValueError(f"unknown mode {mode!r}")
    der = derivation_dimension(A)
    kwargs = {}
    if mode == "extended":
        kwargs["powers"] = power_series_dims(A).dims
        kwargs["annihilator"] = annihilator_dimension(A)
    return InvariantProfile(mode, square_dimension(A), der, A.dim**2 - der, **kwargs)
