"""Exact dense linear algebra over the rational-function field.

Matrices are lists of rows of :class:`~cdalg.scalars.Scalar`.  Constant
matrices are cleared to integers and sent to the compiled Bareiss kernel;
matrices with parameters go through the same fraction-free elimination on
sympy polynomials, choosing the smallest available pivot in each column.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from . import kernels
from .errors import SingularMatrixError
from .scalars import ONE, ZERO, Scalar, _ring, scalar, sort_variables

Matrix = list[list[Scalar]]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A, B) -> Matrix:
    if is_constant(A) and is_constant(B):
        # integer products over a common denominator skip polynomial overhead
        Ai, da = _cleared(A)
        Bi, db = _cleared(transpose(B))
        d = da * db
        return [[scalar(Fraction(sum(a * b for a, b in zip(row, col)), d)) for col in Bi] for row in Ai]
    Bt = transpose(B)
    return [[_dot(row, col) for col in Bt] for row in A]


def matvec(A, x) -> list[Scalar]:
    return [_dot(row, x) for row in A]


def _dot(u, v) -> Scalar:
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


def as_matrix(M) -> Matrix:
    return [[scalar(x) for x in row] for row in M]


def is_constant(M) -> bool:
    return all(x.is_constant() for row in M for x in row)


def _cleared(M) -> tuple[list[list[int]], int]:
    qs = [[x.to_fraction() for x in row] for row in M]
    d = lcm(*(q.denominator for row in qs for q in row)) if qs and qs[0] else 1
    return [[q.numerator * (d // q.denominator) for q in row] for row in qs], d


def _int_rows(M) -> list[list[int]]:
    out = []
    for row in M:
        qs = [x.to_fraction() for x in row]
        d = lcm(*(q.denominator for q in qs)) if qs else 1
        out.append([q.numerator * (d // q.denominator) for q in qs])
    return out


def _common_ring(M):
    names = set()
    for row in M:
        for x in row:
            names.update(str(s) for s in x.ring.symbols)
    return _ring(sort_variables(names))


def _poly_rows(M):
    R = _common_ring(M)
    out = []
    for row in M:
        pairs = [x.lift(R) for x in row]
        den = R.one
        for _, d in pairs:
            if not d.is_one:
                den = den.lcm(d)
        out.append([n * den.exquo(d) if not d.is_one else n * den for n, d in pairs])
    return R, out


def _poly_size(p):
    return (len(p), sum(map(sum, p.itermonoms())))


def poly_echelon(M):
    """Fraction-free echelon form over Q[params]; returns (ring, U, pivots)."""
    R, A = _poly_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    prev = R.one
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        cands = [i for i in range(r, m) if A[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _poly_size(A[i][c]))
        A[r], A[p] = A[p], A[r]
        piv = A[r]
        pc = piv[c]
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (pc * row[j] - a * piv[j]).exquo(prev)
            elif pc != prev:
                for j in range(c + 1, n):
                    row[j] = (pc * row[j]).exquo(prev)
            row[c] = R.zero
        prev = pc
        pivots.append(c)
        r += 1
    return R, A[:r], pivots


def echelon(M) -> tuple[Matrix, list[int]]:
    """Row echelon rows (as Scalars) spanning the row space, plus pivot columns."""
    M = as_matrix(M)
    if not M or not M[0]:
        return [], []
    if is_constant(M):
        U, piv = kernels.echelon(_int_rows(M))
        return [[scalar(v) for v in row] for row in U], piv
    R, U, piv = poly_echelon(M)
    return [[Scalar.from_polys(v) for v in row] for row in U], piv


def rank(M) -> int:
    """Rank over Q(parameters), i.e. the generic rank of a family."""
    M = as_matrix(M)
    if not M or not M[0]:
        return 0
    if is_constant(M):
        return kernels.rank(_int_rows(M))
    return len(poly_echelon(M)[2])


def row_basis(vectors) -> Matrix:
    return echelon([list(v) for v in vectors])[0]


def nullspace(M, ncols: int | None = None) -> Matrix:
    """Basis of ``{x : M x = 0}`` (one vector per free column)."""
    M = as_matrix(M)
    n = len(M[0]) if M else (ncols or 0)
    if not M:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    if is_constant(M):
        U, piv = kernels.echelon(_int_rows(M))
        U = [[Fraction(v) for v in row] for row in U]
        basis = _back_substitute(U, piv, n, Fraction(1), Fraction(0))
        return [[scalar(v) for v in vec] for vec in basis]
    _, U, piv = poly_echelon(M)
    U = [[Scalar.from_polys(v) for v in row] for row in U]
    return _back_substitute(U, piv, n, ONE, ZERO)


def _back_substitute(U, piv, n, one, zero):
    free = [j for j in range(n) if j not in set(piv)]
    basis = []
    for f in free:
        x = [zero] * n
        x[f] = one
        for r in range(len(piv) - 1, -1, -1):
            c = piv[r]
            s = zero
            row = U[r]
            for j in range(c + 1, n):
                if row[j] and x[j]:
                    s = s + row[j] * x[j]
            x[c] = -s / row[c]
        basis.append(x)
    return basis


def _gauss(M, augment=None):
    # Gaussian elimination over the field of Scalars; returns (det, solution)
    n = len(M)
    A = [list(row) + (list(augment[i]) if augment else []) for i, row in enumerate(M)]
    width = len(A[0]) if A else 0
    det = ONE
    for c in range(n):
        cands = [i for i in range(c, n) if A[i][c]]
        if not cands:
            return ZERO, None
        p = min(cands, key=lambda i: A[i][c].size)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        pc = A[c][c]
        det = det * pc
        inv = pc.inverse()
        A[c] = [x * inv if x else x for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b if b else a for a, b in zip(A[i], A[c])]
    return det, [row[n:width] for row in A]


def det(M) -> Scalar:
    M = as_matrix(M)
    if not M:
        return ONE
    return _gauss(M)[0]


def inverse(M) -> Matrix:
    M = as_matrix(M)
    n = len(M)
    d, sol = _gauss(M, identity(n))
    if sol is None:
        raise SingularMatrixError("not invertible")
    return sol
