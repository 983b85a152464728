"""Independent reference computations over Fraction.

Nothing here imports the package's linear algebra or limits, so agreement with it is
evidence rather than tautology.
"""

import random
from fractions import Fraction

import sympy


def frac_rank(rows):
    """Rank by plain Gauss-Jordan over Fraction."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    rank = 0
    ncols = len(M[0])
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][col]
        M[rank] = [x / p for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def frac_inverse(g):
    n = len(g)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(g)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[pivot] = M[pivot], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return [row[n:] for row in M]


def mul(c, x, y):
    n = len(c)
    return [sum(x[i] * y[j] * c[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]


def derivation_dim(c):
    """Enumerate D(e_i e_j) = D(e_i) e_j + e_i D(e_j) directly on the n^2
    unit matrices and take the rank of the resulting n^3 x n^2 system."""
    n = len(c)
    cols = []
    for a in range(n):
        for b in range(n):
            # D = E_ab: e_b -> e_a
            def D(v):
                out = [Fraction(0)] * n
                out[a] = v[b]
                return out

            col = []
            for i in range(n):
                for j in range(n):
                    ei = [Fraction(int(k == i)) for k in range(n)]
                    ej = [Fraction(int(k == j)) for k in range(n)]
                    lhs = D(mul(c, ei, ej))
                    r1 = mul(c, D(ei), ej)
                    r2 = mul(c, ei, D(ej))
                    col += [lhs[k] - r1[k] - r2[k] for k in range(n)]
            cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    return n * n - frac_rank(rows)


def base_change(c, g):
    """Constants of x*y = g mu(g^-1 x, g^-1 y) in the standard basis."""
    n = len(c)
    gi = frac_inverse(g)
    out = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            x = [gi[r][i] for r in range(n)]
            y = [gi[r][j] for r in range(n)]
            p = mul(c, x, y)
            for k in range(n):
                out[i][j][k] = sum(g[k][r] * p[r] for r in range(n))
    return out


def random_constants(rng: random.Random, n, density=0.4, bound=3):
    return [
        [[Fraction(rng.randint(-bound, bound)) if rng.random() < density else Fraction(0) for _ in range(n)] for _ in range(n)]
        for _ in range(n)
    ]


def random_invertible(rng: random.Random, n, bound=3):
    while True:
        g = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if frac_rank(g) == n:
            return g


def random_two_step(rng: random.Random, n):
    """Random 2-step nilpotent algebra: products land in a random complement
    of dimension m, and that complement multiplies to zero."""
    m = rng.randint(1, max(1, n - 1)) if n > 1 else 1
    q = random_invertible(rng, n)
    # work in a basis where the last m vectors span A^2, then move by q
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n - m):
        for j in range(n - m):
            for k in range(n - m, n):
                if rng.random() < 0.6:
                    c[i][j][k] = Fraction(rng.randint(-4, 4))
    return base_change(c, q)


def sympy_witness(source_c, target_c, rows):
    """Lexicographically first (i, j, k) whose limit misses the target,
    computed with sympy matrices and sympy.limit."""
    ts = sympy.Symbol("t")
    n = len(rows)
    E = sympy.Matrix(rows).subs(sympy.Symbol("t"), ts)
    Einv = E.T.inv()
    for i in range(n):
        for j in range(n):
            prod = [sum(E[i, p] * E[j, q] * source_c[p][q][r] for p in range(n) for q in range(n)) for r in range(n)]
            coords = Einv * sympy.Matrix(prod)
            for k in range(n):
                lim = sympy.limit(sympy.simplify(coords[k]), ts, 0)
                if lim != target_c[i][j][k]:
                    return (i + 1, j + 1, k + 1)
    return None
