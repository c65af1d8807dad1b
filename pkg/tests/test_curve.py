import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinhiggs.curve import (
    Cluster,
    CurveError,
    Divisor,
    HyperellipticCurve,
    SingularModel,
    canonical_divisor,
    divisor_from_points,
    divisor_of,
    h0,
    hyperelliptic_genus,
    in_space,
    new_curve,
    point_pool,
    random_divisor,
    riemann_roch_space,
    valuation,
)
from spinhiggs.exactalg import Poly

G2 = HyperellipticCurve.from_roots([-6, -1, 1, 2, 5, 7])
G3 = HyperellipticCurve.from_roots([-3, -2, -1, 0, 1, 2, 3, 4])
ODD = HyperellipticCurve.from_roots([-2, -1, 0, 1, 3])  # genus 2, one point at infinity
CURVES = [G2, G3, ODD]
POOLS = {id(C): point_pool(C, 5) for C in CURVES}

small = st.integers(-4, 4)
polys = st.lists(small, max_size=4).map(Poly)
curves = st.sampled_from(CURVES)


@st.composite
def functions(draw, curve=None):
    C = curve or draw(curves)
    a, b = draw(polys), draw(polys)
    if a.is_zero() and b.is_zero():
        a = Poly([1])
    c = draw(st.lists(small, min_size=1, max_size=3).map(Poly).filter(lambda p: not p.is_zero()))
    return C.fn(a, b, c)


@st.composite
def divisors(draw):
    C = draw(curves)
    rng = random.Random(draw(st.integers(0, 10**6)))
    deg = draw(st.integers(-2, 2 * C.genus + 1))
    return C, random_divisor(C, deg, rng, POOLS[id(C)])


def test_genus_and_models():
    assert (G2.genus, G3.genus, ODD.genus) == (2, 3, 2)
    assert G2.infinity_model == "TwoPoints"
    assert ODD.infinity_model == "OnePoint"
    assert hyperelliptic_genus(Poly.from_roots([0, 1, 2])) == 1


def test_singular_and_small_models_rejected():
    with pytest.raises(SingularModel):
        hyperelliptic_genus(Poly.from_roots([0, 0, 1, 2, 3]))
    with pytest.raises(CurveError):
        new_curve(Poly.from_roots([0, 1, 2]))
    with pytest.raises(CurveError):
        G2.point(0, 1)


def test_canonical_degree_and_dimension():
    for C in CURVES:
        K = canonical_divisor(C)
        assert K.degree() == 2 * C.genus - 2
        assert h0(C, K) == C.genus


def test_basic_spaces():
    C = G2
    assert h0(C, Divisor.zero(C)) == 1
    P = C.search_points(6)[0]
    assert h0(C, divisor_from_points(C, [P])) == 1
    H = divisor_from_points(C, [C.inf_plus, C.inf_minus])
    # L(H) = <1, x>
    assert h0(C, H) == 2
    assert h0(C, -1 * divisor_from_points(C, [P])) == 0


@settings(max_examples=200)
@given(divisors())
def test_riemann_roch_identity(data):
    C, D = data
    K = canonical_divisor(C)
    assert h0(C, D) - h0(C, K - D) == D.degree() - C.genus + 1


@given(functions())
def test_principal_divisors_have_degree_zero(u):
    assert divisor_of(u).degree() == 0


@given(functions())
def test_sigma_equivariance(u):
    assert divisor_of(u.sigma()) == divisor_of(u).sigma()


@given(st.data())
def test_divisor_of_product(data):
    C = data.draw(curves)
    u = data.draw(functions(C))
    v = data.draw(functions(C))
    assert divisor_of(u * v) == divisor_of(u) + divisor_of(v)
    assert divisor_of(u / v) == divisor_of(u) - divisor_of(v)


@given(functions())
def test_valuations_match_divisor(u):
    C = u.curve
    D = divisor_of(u)
    for P in POOLS[id(C)][:8]:
        assert valuation(u, P) == D.coefficient(P)


@given(functions())
def test_function_lies_in_its_own_space(u):
    D = -1 * divisor_of(u)
    assert in_space(u, D)
    assert h0(u.curve, D) == 1


@settings(max_examples=40)
@given(divisors())
def test_basis_members_belong(data):
    C, D = data
    for u in riemann_roch_space(C, D):
        assert (divisor_of(u) + D).is_effective()


def test_norm_and_inverse():
    C = G2
    u = C.fn(Poly([1, 2]), Poly([3]))
    assert u * u.inverse() == C.const(1)
    assert u * u.sigma() == C.fn(u.norm_poly())


def test_galois_clusters():
    # x^2 - 3 has no rational roots; the fibre over it is one cluster of degree 4
    C = G2
    q = Poly([-3, 0, 1])
    D = Divisor(C, {Cluster("F", q): 1})
    assert D.degree() == 4
    assert divisor_of(C.fn(q)) == D - 2 * divisor_from_points(C, [C.inf_plus, C.inf_minus])
    K = canonical_divisor(C)
    assert h0(C, D) - h0(C, K - D) == D.degree() - C.genus + 1


def test_bad_clusters_rejected():
    with pytest.raises(CurveError):
        Divisor(G2, {Cluster("W", Poly([-3, 1])): 1})
    with pytest.raises(CurveError):
        Divisor(G2, {Cluster("B", Poly([-3, 1]), Poly([1])): 1})


def test_points_at_infinity_odd_model():
    C = ODD
    assert valuation(C.x, C.infinity) == -2
    assert valuation(C.y, C.infinity) == -5
    with pytest.raises(CurveError):
        valuation(C.x, C.inf_plus)


def test_evaluation_and_sigma_points():
    C = G2
    P = C.search_points(6)[0]
    u = C.fn(Poly([0, 1]), Poly([1]))
    assert u(P) == P.x + P.y
    assert u.sigma()(P) == u(C.sigma(P))


def test_curve_over_quadratic_field_infinity_guard():
    C = HyperellipticCurve.from_roots([0, 1, 2, 3, 4, 5], lc=2)
    with pytest.raises(CurveError):
        canonical_divisor(C)


def test_fraction_roots():
    C = HyperellipticCurve.from_roots([Fraction(1, 2), Fraction(-5, 3), 0, 1, 2, 3])
    assert h0(C, canonical_divisor(C)) == 2
