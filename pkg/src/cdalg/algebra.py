"""Algebras given by structure constants and the base-change action of GL(V).

Indices are 0-based in code: ``A.constants[i][j][k]`` is the coefficient of
``e_k`` in ``e_i e_j``.  File formats and printed output are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import (
    DimensionMismatchError,
    InputError,
    ReservedVariableError,
    SingularMatrixError,
)
from .scalars import ONE, ZERO, T, Scalar, scalar, substitute

Constants = tuple  # tuple[tuple[tuple[Scalar, ...], ...], ...]


class SquareMatrix:
    """Immutable square matrix of Scalars; ``M[i, j]`` is row i, column j."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[object]]):
        rows = tuple(tuple(scalar(x) for x in row) for row in rows)
        if any(len(r) != len(rows) for r in rows) or not rows:
            raise DimensionMismatchError("matrix must be square and nonempty")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls(linalg.identity(n))

    @classmethod
    def zero(cls, n: int) -> "SquareMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence[object]) -> "SquareMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(linalg.transpose(self.rows))

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix(linalg.matmul(self.rows, other.rows))

    def __add__(self, other):
        return SquareMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return SquareMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, c):
        c = scalar(c)
        return SquareMatrix([[c * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def apply(self, vec: Sequence[Scalar]) -> tuple:
        if len(vec) != self.dim:
            raise DimensionMismatchError("vector length does not match matrix")
        return tuple(linalg.matvec(self.rows, [scalar(x) for x in vec]))

    def commutator(self, other: "SquareMatrix") -> "SquareMatrix":
        return self @ other - other @ self

    def det(self) -> Scalar:
        return linalg.det(self.rows)

    def inverse(self) -> "SquareMatrix":
        return SquareMatrix(linalg.inverse(self.rows))

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"SquareMatrix([{body}])"


def _freeze(constants, n: int) -> Constants:
    try:
        out = tuple(
            tuple(tuple(scalar(constants[i][j][k]) for k in range(n)) for j in range(n))
            for i in range(n)
        )
    except (IndexError, TypeError) as exc:
        raise DimensionMismatchError(f"structure constants must be a {n}x{n}x{n} array") from exc
    for i in range(n):
        if len(constants[i]) != n or any(len(constants[i][j]) != n for j in range(n)):
            raise DimensionMismatchError(f"structure constants must be a {n}x{n}x{n} array")
    if len(constants) != n:
        raise DimensionMismatchError(f"structure constants must be a {n}x{n}x{n} array")
    return out


def constant_variables(constants) -> set:
    names = set()
    for plane in constants:
        for row in plane:
            for x in row:
                if x:
                    names |= x.variables
    return names


@dataclass(frozen=True, eq=False)
class Algebra:
    """An n-dimensional algebra (or parametric family) by structure constants."""

    name: str
    dim: int
    params: tuple = ()
    constants: Constants = field(default=(), repr=False)

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise InputError("dimension must be a positive integer")
        params = tuple(self.params)
        if T in params:
            raise ReservedVariableError("t is reserved")
        object.__setattr__(self, "params", params)
        n = self.dim
        consts = self.constants or [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        consts = _freeze(consts, n)
        used = constant_variables(consts)
        if T in used:
            raise ReservedVariableError("t is reserved: structure constants may not contain t")
        extra = used - set(params)
        if extra:
            raise InputError(f"undeclared parameters {sorted(extra)} in algebra {self.name}")
        object.__setattr__(self, "constants", consts)

    @classmethod
    def from_products(cls, name: str, dim: int, products: Mapping, params: Sequence[str] = ()) -> "Algebra":
        """Build from ``{(i, j): {k: value}}`` with 1-based indices."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in products.items():
            for k, v in vec.items():
                c[i - 1][j - 1][k - 1] = scalar(v)
        return cls(name, dim, tuple(params), c)

    @classmethod
    def zero(cls, dim: int, name: str | None = None) -> "Algebra":
        return cls(name or f"zero{dim}", dim, ())

    def c(self, i: int, j: int, k: int) -> Scalar:
        return self.constants[i][j][k]

    def basis_vector(self, i: int) -> tuple:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def products(self):
        """Yield ``(i, j, vector)`` for each nonzero basis product (0-based)."""
        for i in range(self.dim):
            for j in range(self.dim):
                vec = self.constants[i][j]
                if any(vec):
                    yield i, j, vec

    def is_family(self) -> bool:
        return bool(self.params)

    def structurally_equal(self, other: "Algebra") -> bool:
        return self.dim == other.dim and self.constants == other.constants

    def table(self) -> str:
        lines = []
        for i, j, vec in self.products():
            lines.append(f"e{i + 1}*e{j + 1} = {format_vector(vec)}")
        return "\n".join(lines) if lines else "(zero product)"

    def __str__(self):
        head = self.name + (f"({', '.join(self.params)})" if self.params else "")
        return f"{head} [dim {self.dim}]"


def format_vector(vec: Sequence[Scalar]) -> str:
    parts = []
    for k, x in enumerate(vec):
        if not x:
            continue
        s = str(x)
        if x == 1:
            term = f"e{k + 1}"
        elif x == -1:
            term = f"-e{k + 1}"
        elif len(x.num) > 1 or not x.den.is_one:
            term = f"({s})*e{k + 1}"
        else:
            term = f"{s}*e{k + 1}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# -- products and operators ---------------------------------------------------


def _check_len(A: Algebra, *vecs):
    for v in vecs:
        if len(v) != A.dim:
            raise DimensionMismatchError(f"vector of length {len(v)} for algebra of dim {A.dim}")


def product_constants(constants, x, y) -> list:
    n = len(constants)
    out = [ZERO] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            xy = x[i] * y[j]
            vec = constants[i][j]
            for k in range(n):
                if vec[k]:
                    out[k] = out[k] + xy * vec[k]
    return out


def product(A: Algebra, x: Sequence, y: Sequence) -> tuple:
    """``x * y`` for coefficient vectors in the basis e_1..e_n."""
    _check_len(A, x, y)
    return tuple(product_constants(A.constants, [scalar(v) for v in x], [scalar(v) for v in y]))


def left_operator(A: Algebra, a: Sequence) -> SquareMatrix:
    _check_len(A, a)
    n = A.dim
    cols = [product(A, a, A.basis_vector(j)) for j in range(n)]
    return SquareMatrix(linalg.transpose(cols))


def right_operator(A: Algebra, a: Sequence) -> SquareMatrix:
    _check_len(A, a)
    n = A.dim
    cols = [product(A, A.basis_vector(j), a) for j in range(n)]
    return SquareMatrix(linalg.transpose(cols))


def mul_operators(A: Algebra, a: Sequence) -> tuple[SquareMatrix, SquareMatrix]:
    """``(L_a, R_a)`` with ``L_a x = a x`` and ``R_a x = x a``."""
    return left_operator(A, a), right_operator(A, a)


# -- base change ----------------------------------------------------------------


def transform_constants(c, P, Q) -> list:
    """``c'[i][j][k] = sum P[p][i] P[q][j] c[p][q][r] Q[k][r]``, in n^4 steps."""
    n = len(c)
    X = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for i in range(n):
            a = P[p][i]
            if not a:
                continue
            for q in range(n):
                src = c[p][q]
                dst = X[i][q]
                for r in range(n):
                    if src[r]:
                        dst[r] = dst[r] + a * src[r]
    Y = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for q in range(n):
        for j in range(n):
            a = P[q][j]
            if not a:
                continue
            for i in range(n):
                src = X[i][q]
                dst = Y[i][j]
                for r in range(n):
                    if src[r]:
                        dst[r] = dst[r] + a * src[r]
    Z = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            src = Y[i][j]
            dst = Z[i][j]
            for k in range(n):
                row = Q[k]
                s = ZERO
                for r in range(n):
                    if src[r] and row[r]:
                        s = s + row[r] * src[r]
                dst[k] = s
    return Z


def constants_in_basis(c, rows) -> list:
    """Structure constants of ``c`` in the basis ``E_i = sum_j rows[i][j] e_j``."""
    P = linalg.transpose(rows)
    try:
        Q = linalg.inverse(P)
    except SingularMatrixError:
        raise SingularMatrixError("not invertible") from None
    return transform_constants(c, P, Q)


def base_change(A: Algebra, g: SquareMatrix) -> Algebra:
    """``(g * mu)(x, y) = g mu(g^-1 x, g^-1 y)``."""
    if g.dim != A.dim:
        raise DimensionMismatchError("matrix and algebra dimensions differ")
    if not g.det():
        raise SingularMatrixError("not invertible")
    h = g.inverse()
    c = transform_constants(A.constants, h.rows, g.rows)
    extra = constant_variables(c) - set(A.params)
    return Algebra(A.name, A.dim, A.params + tuple(sorted(extra - {T})), c)


def substitute_constants(c, assignment: Mapping[str, Scalar]) -> list:
    return [[[substitute(x, assignment) if x else x for x in row] for row in plane] for plane in c]


def substitute_algebra_params(A: Algebra, assignment: Mapping[str, object], name: str | None = None) -> Algebra:
    """Member of the family ``A`` at the given parameter values."""
    if T in assignment:
        raise ReservedVariableError("t is reserved")
    assignment = {k: scalar(v) for k, v in assignment.items()}
    for k, v in assignment.items():
        if T in v.variables:
            raise ReservedVariableError("t is reserved")
    c = substitute_constants(A.constants, assignment)
    new_vars = set()
    for v in assignment.values():
        new_vars |= v.variables
    params = tuple(p for p in A.params if p not in assignment)
    params += tuple(sorted(new_vars - set(params)))
    if name is None:
        shown = ", ".join(f"{k}={v}" for k, v in assignment.items() if k in A.params)
        name = f"{A.name}({shown})" if shown else A.name
    return Algebra(name, A.dim, params, c)
