# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free (Bareiss) elimination over the integers.

Runs on a flat int64 buffer with checked multiplication and subtraction;
on the first overflow it restarts on Python integers, so results are
always exact.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int cdalg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int cdalg_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int cdalg_mul_ovf(long long a, long long b, long long *r) nogil
    int cdalg_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long _LIMIT = 1LL << 62


cdef int _echelon_i64(long long *M, Py_ssize_t m, Py_ssize_t n,
                      Py_ssize_t *pivots, Py_ssize_t *rank) noexcept nogil:
    cdef long long prev = 1, pc, a, x, y, v, av, best, tmp
    cdef Py_ssize_t r = 0, c, i, j, p
    for c in range(n):
        if r == m:
            break
        p = -1
        best = 0
        for i in range(r, m):
            v = M[i * n + c]
            if v != 0:
                if v <= -_LIMIT or v >= _LIMIT:
                    return 1
                av = v if v > 0 else -v
                if p < 0 or av < best:
                    p = i
                    best = av
        if p < 0:
            continue
        if p != r:
            for j in range(n):
                tmp = M[r * n + j]
                M[r * n + j] = M[p * n + j]
                M[p * n + j] = tmp
        pc = M[r * n + c]
        for i in range(r + 1, m):
            a = M[i * n + c]
            if a == 0 and pc == prev:
                M[i * n + c] = 0
                continue
            for j in range(c + 1, n):
                if cdalg_mul_ovf(pc, M[i * n + j], &x):
                    return 1
                if a != 0:
                    if cdalg_mul_ovf(a, M[r * n + j], &y):
                        return 1
                    if cdalg_sub_ovf(x, y, &x):
                        return 1
                M[i * n + j] = x / prev
            M[i * n + c] = 0
        prev = pc
        pivots[r] = c
        r += 1
    rank[0] = r
    return 0


cdef tuple _echelon_obj(list rows):
    cdef list M = [list(row) for row in rows]
    cdef Py_ssize_t m = len(M)
    cdef Py_ssize_t n = len(M[0]) if m else 0
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list pivots = []
    cdef list row, piv
    prev = 1
    for c in range(n):
        if r == m:
            break
        p = -1
        best = 0
        for i in range(r, m):
            v = (<list>M[i])[c]
            if v and (p < 0 or abs(v) < best):
                p = i
                best = abs(v)
        if p < 0:
            continue
        M[r], M[p] = M[p], M[r]
        piv = <list>M[r]
        pc = piv[c]
        for i in range(r + 1, m):
            row = <list>M[i]
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


def echelon(rows):
    """Fraction-free row echelon form; same contract as the Python fallback."""
    rows = list(rows)
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *M
    cdef Py_ssize_t *piv
    cdef int status
    if m == 0 or n == 0:
        return [], []
    M = <long long *> malloc(m * n * sizeof(long long))
    piv = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    if M == NULL or piv == NULL:
        free(M)
        free(piv)
        raise MemoryError()
    try:
        for i in range(m):
            row = rows[i]
            for j in range(n):
                v = row[j]
                if v >= _LIMIT or v <= -_LIMIT:
                    return _echelon_obj(rows)
                M[i * n + j] = v
        with nogil:
            status = _echelon_i64(M, m, n, piv, &rank)
        if status:
            return _echelon_obj(rows)
        return (
            [[M[i * n + j] for j in range(n)] for i in range(rank)],
            [piv[i] for i in range(rank)],
        )
    finally:
        free(M)
        free(piv)


def rank(rows):
    return len(echelon(rows)[1])
