"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_ckernels.pyx`` mirrors them
line for line and the test-suite checks that both agree.
"""


def bareiss_echelon(rows, ncols):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_columns)``.  The input is not modified.
    Every division performed is exact, so all intermediate entries stay
    integral (they are minors of the input).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        p = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
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


def koszul_mul(e1, e2, odd):
    """Multiply two monomials of a graded-commutative algebra.

    Monomials are exponent tuples over an ordered generator list; ``odd``
    flags the generators of odd degree.  Returns ``(sign, exponents)``, or
    ``(0, None)`` when an odd generator would appear squared.
    """
    n = len(e1)
    out = [0] * n
    parity = 0
    # odd generators of e1 with index > j that e2's generator j must pass
    later = 0
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
