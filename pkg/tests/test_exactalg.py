from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from spinhiggs.exactalg import (
    MPoly,
    Poly,
    QuadContext,
    coprime_base,
    crt_pair,
    det,
    discriminant,
    exact_sqrt,
    kernel_basis,
    rank,
    rational_roots,
    resultant,
    solve,
    squarefree_decomposition,
)

small = st.integers(-6, 6)
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.lists(small, min_size=0, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())

x = sympy.Symbol("x")


def to_sympy(p: Poly):
    return sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p.coeffs))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a - a == Poly([])


@given(polys, nonzero_polys)
def test_divmod(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree() < b.degree()


@given(nonzero_polys, nonzero_polys)
def test_xgcd(a, b):
    g, s, t = a.xgcd(b)
    assert s * a + t * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


@given(polys, fracs)
def test_shift_evaluates(p, x0):
    assert p.shift(x0)(0) == p(x0)


@given(small.filter(bool), st.lists(small, min_size=1, max_size=3), polys.filter(lambda q: q.degree() >= 1))
def test_resultant_product_formula(lc, roots, q):
    # res(p, q) = lc(p)^deg(q) * prod q(alpha) over the roots of p
    p = Poly.from_roots(roots) * lc
    want = Fraction(lc) ** q.degree()
    for r in roots:
        want *= q(r)
    assert resultant(p, q) == want


@given(st.lists(small, min_size=3, max_size=6))
def test_discriminant_matches_sympy(a):
    p = Poly(a)
    if p.degree() < 2:
        return
    want = sympy.discriminant(to_sympy(p), x)
    assert discriminant(p) == Fraction(int(sympy.numer(want)), int(sympy.denom(want)))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_and_kernel(rows):
    r = rank(rows)
    assert r == sympy.Matrix(rows).rank()
    ker = kernel_basis(rows)
    assert len(ker) == 4 - r
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(rows):
    d = det(rows)
    assert isinstance(d, (int, Fraction))
    assert d == sympy.Matrix(rows).det()


def test_solve():
    sol = solve([[2, 1], [1, 3]], [3, 5])
    assert sol == [Fraction(4, 5), Fraction(7, 5)]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_rational_roots_recovers_roots(roots):
    p = Poly.from_roots(roots) * Poly([1, 0, 1])
    assert sorted(set(rational_roots(p))) == sorted({Fraction(r) for r in roots})


def test_squarefree_decomposition():
    p = Poly.from_roots([1, 1, 2, 3, 3, 3])
    parts = {k: q for q, k in squarefree_decomposition(p)}
    assert parts[1] == Poly.from_roots([2])
    assert parts[2] == Poly.from_roots([1])
    assert parts[3] == Poly.from_roots([3])


def test_coprime_base_and_crt():
    a = Poly.from_roots([1, 2])
    b = Poly.from_roots([2, 3])
    base = coprime_base([a, b])
    for i, p in enumerate(base):
        for q in base[i + 1 :]:
            assert p.gcd(q).degree() == 0
    q1, q2 = Poly.from_roots([0]), Poly.from_roots([1])
    r = crt_pair(Poly([5]), q1, Poly([7]), q2)
    assert r(0) == 5 and r(1) == 7


def test_exact_sqrt_and_quadratic_context():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(2)) is None
    s = QuadContext(2).sqrt_d
    assert s * s == 2


@given(st.lists(st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), small), max_size=4))
def test_mpoly_product_rule(terms):
    p = MPoly(2, dict(terms))
    q = MPoly.var(2, 0) + MPoly.var(2, 1) * 3
    assert (p * q).diff(0) == p.diff(0) * q + p * q.diff(0)


def test_mpoly_subs():
    z1, z2 = MPoly.var(2, 0), MPoly.var(2, 1)
    p = z1 * z1 * z2 - z2
    assert p.subs({0: 0}) == -z2
    assert p.subs({0: z2}) == z2 * z2 * z2 - z2


def test_exact_div_rejects_remainder():
    with pytest.raises(Exception):
        Poly.from_roots([1, 2]).exact_div(Poly.from_roots([3]))
