"""Exact linear algebra by fraction-free (Bareiss) elimination.

Rational matrices are scaled row by row to integer matrices and reduced with
the integer kernel from :mod:`spinhiggs.kernels`; matrices over other exact
fields use the same elimination with field division.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .. import kernels
from .poly import Poly


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def _div(a, b):
    if isinstance(a, Poly):
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact Bareiss division")
        return q
    return a / b


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for v in r:
            if isinstance(v, Fraction):
                den = lcm(den, v.denominator)
        out.append([int(v * den) for v in r])
    return out


def _generic_echelon(rows, ncols):
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = None
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), -1)
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            for j in range(c + 1, ncols):
                v = p * m[i][j] - a * m[r][j]
                m[i][j] = v if prev is None else _div(v, prev)
            m[i][c] = a * 0
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def echelon(rows, ncols=None):
    """Fraction-free echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if all(_is_rational(v) for r in rows for v in r):
        return kernels.bareiss_echelon(_integer_rows(rows), ncols)
    return _generic_echelon(rows, ncols)


def rank(rows) -> int:
    if not rows:
        return 0
    return len(echelon(rows)[1])


def det(rows):
    """Determinant by Bareiss elimination (exact division in the coefficient domain)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    m = [list(r) for r in rows]
    sign = 1
    prev = None
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), -1)
            if swap < 0:
                return m[0][0] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = p * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = v if prev is None else _div(v, prev)
        prev = p
    out = m[n - 1][n - 1]
    return out if sign == 1 else -out


def kernel_basis(rows, ncols=None) -> list[list]:
    """Exact basis of the right null space of the matrix ``rows``.

    Each basis vector has a 1 in one free column and 0 in the others.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols needed for an empty matrix")
        ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ech, pivots = echelon(rows, ncols)
    rational = all(_is_rational(v) for r in ech for v in r)
    one = Fraction(1)
    if not rational:
        sample = next((v for r in ech for v in r if not _is_rational(v)), None)
        one = sample * 0 + 1
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        x = [one * 0 for _ in range(ncols)]
        x[fc] = one
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = one * 0
            for j in range(pc + 1, ncols):
                if row[j] != 0 and x[j] != 0:
                    s = s + row[j] * x[j]
            x[pc] = -s / row[pc] if not rational else Fraction(-s) / row[pc]
        basis.append(x)
    return basis


def solve(rows, rhs):
    """One solution of rows * x = rhs, or None when inconsistent."""
    aug = [list(r) + [-b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) + 1 if rows else len(rhs) + 1
    for v in kernel_basis(aug, ncols):
        if v[-1] != 0:
            return [c / v[-1] for c in v[:-1]]
    return None


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]
