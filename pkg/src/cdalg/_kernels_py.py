"""Pure-Python fraction-free (Bareiss) elimination over the integers.

Reference implementation of the compiled ``_kernels`` module; both expose
the same two functions and must agree exactly.
"""


def echelon(rows):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(U, pivots)`` where ``U`` holds the ``rank`` nonzero rows and
    ``pivots[r]`` is the pivot column of row ``r``.  Every entry of ``U`` is
    a minor of the (row-permuted) input, so all divisions are exact.
    """
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = -1
        best = 0
        for i in range(r, m):
            v = M[i][c]
            if v and (p < 0 or abs(v) < best):
                p, best = i, abs(v)
        if p < 0:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r]
        pc = piv[c]
        for i in range(r + 1, m):
            row = M[i]
            a = row[c]
            if a:
                for j in range(c + 1, n):
                    row[j] = (pc * row[j] - a * piv[j]) // prev
            elif pc != prev:
                for j in range(c + 1, n):
                    row[j] = (pc * row[j]) // prev
            row[c] = 0
        prev = pc
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows):
    return len(echelon(rows)[1])
