# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot kernels (see _kernels_py.py)."""


def bareiss_echelon(rows, Py_ssize_t ncols):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list prow, row
    cdef object p, a, prev = 1
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>m[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        prow = <list>m[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = <list>m[i]
            a = row[c]
            if a == 0:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - a * prow[j]) // prev
                row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def koszul_mul(tuple e1, tuple e2, tuple odd):
    cdef Py_ssize_t n = len(e1), j
    cdef long a, b
    cdef int parity = 0
    cdef long later = 0
    cdef list out = [0] * n
    for j in range(n - 1, -1, -1):
        a = e1[j]
        b = e2[j]
        if odd[j]:
            if a and b:
                return 0, None
            if b:
                parity ^= later & 1
            if a:
                later += 1
        out[j] = a + b
    return (-1 if parity else 1), tuple(out)
