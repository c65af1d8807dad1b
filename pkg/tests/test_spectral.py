import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinhiggs import spectral
from spinhiggs.curve import CurveError, HyperellipticCurve, riemann_roch_space
from spinhiggs.higgs import SpectralData
from spinhiggs.spin import enumerate_thetas, theta

G2 = HyperellipticCurve.from_roots([-6, -1, 1, 2, 5, 7])
G3 = HyperellipticCurve.from_roots([-3, -2, -1, 0, 1, 2, 3, 4])
CURVES = {2: G2, 3: G3}


@settings(max_examples=50)
@given(st.sampled_from([2, 3]), st.sampled_from([2, 3]), st.integers(0, 10**6))
def test_discriminant_degree_and_genus(n, g, seed):
    rng = random.Random(seed)
    C = CURVES[g]
    th = rng.choice(enumerate_thetas(C))
    sd = spectral.random_spectral_data(th, n, rng)
    try:
        D = spectral.discriminant_divisor(sd)
    except spectral.NonReduced:
        return
    assert D.degree() == n * (n - 1) * (g - 1)
    assert D.is_effective()
    rec = spectral.genus_and_dims(sd)
    if rec["smooth"]:
        assert rec["riemann_hurwitz_genus"] == n * (n + 1) * (g - 1) // 2 + 1


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("g", range(2, 6))
def test_family_dimensions(n, g):
    rec = spectral.family_dimensions(n, g)
    assert rec["total"] == rec["expected_total"] == 1 + (n * n - 1) * (g - 1)
    # the spectral curve genus is g + prym dimension
    assert rec["spectral_genus"] == g + rec["prym_dim"]


def test_base_dimension_counts_sections():
    for g, C in CURVES.items():
        for th in enumerate_thetas(C)[:3]:
            for n in (2, 3, 4):
                assert spectral.base_dimension_from_sections(th, n) == spectral.family_dimensions(n, g)["base_dim"]


def test_genus_from_rank_and_genus():
    assert spectral.genus_and_dims(2, 2)["spectral_genus"] == 4
    with pytest.raises(ValueError):
        spectral.genus_and_dims(2)


def test_zero_data_is_non_reduced():
    th = theta(G2, [1])
    sd = SpectralData.from_functions(th, {2: G2.const(0)}, 2)
    with pytest.raises(spectral.NonReduced):
        spectral.discriminant_divisor(sd)
    with pytest.raises(spectral.NonReduced):
        spectral.is_smooth(sd)


def test_nonzero_c1_rejected():
    th = theta(G2, [1])
    with pytest.raises(CurveError):
        SpectralData.from_functions(th, {1: G2.x, 2: G2.const(0)}, 2)


def test_irreducibility_rank_two():
    th = theta(G2, [1])
    (b,) = riemann_roch_space(G2, th.divisor)
    square = SpectralData.from_functions(th, {2: -(b * b) * 4}, 2)
    assert spectral.irreducibility(square) is False
    other = [u for u in riemann_roch_space(G2, 2 * th.divisor) if not (u / (b * b)).is_constant()][0]
    generic = SpectralData.from_functions(th, {2: other}, 2)
    assert spectral.irreducibility(generic) is True
    even = theta(G2, [1, 2, 3])
    (u,) = riemann_roch_space(G2, 2 * even.divisor)[:1]
    assert spectral.irreducibility(SpectralData.from_functions(even, {2: u}, 2)) is True


def test_irreducibility_rank_three():
    th = theta(G2, [1])
    (b,) = riemann_roch_space(G2, th.divisor)
    # (z - b)(z^2 + b z + c) with c chosen so that c_1 = 0
    c = b * b * -2
    funcs = {2: c - b * b, 3: -(b * c)}
    assert spectral.irreducibility(SpectralData.from_functions(th, funcs, 3)) is False


def test_irreducibility_undecided_when_many_spinors():
    th = theta(G3, [])  # h0 = 2
    rng = random.Random(3)
    sd = spectral.random_spectral_data(th, 2, rng)
    assert spectral.irreducibility(sd) is None


def test_cayley_reduction():
    th = theta(G2, [1, 2, 3])
    rng = random.Random(5)
    sd = spectral.random_spectral_data(th, 4, rng)
    inv = SpectralData.from_functions(th, {2: sd.c(2), 4: sd.c(4)}, 4)
    cl = spectral.cayley_reduce(inv)
    assert cl.m == 2
    P = cl.polynomial()
    assert P.degree() == 2
    for i, h in cl.differentials.items():
        # a_{2i} (dx/y)^(-i) is an honest function: no poles on the affine part away from f
        assert h.c.degree() == 0
    if not sd.c(3).is_zero():
        with pytest.raises(CurveError, match="not involution-invariant"):
            spectral.cayley_reduce(sd)
    odd_rank = spectral.random_spectral_data(th, 3, rng)
    with pytest.raises(CurveError):
        spectral.cayley_reduce(SpectralData.from_functions(th, {2: odd_rank.c(2)}, 3))


@settings(max_examples=20)
@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6, unique=True), st.fractions(-20, 20, max_denominator=5), st.sets(st.integers(1, 6), min_size=3, max_size=3))
def test_prym_even_split(roots, a, triple):
    C = HyperellipticCurve.from_roots(roots)
    if a in C.weierstrass_roots:
        a += Fraction(1, 7)
    split = spectral.prym_split_even(C, sorted(triple), a)
    assert split.verified
    assert split.genera == (1, 1)
    assert sorted(split.subset + split.complement) == [1, 2, 3, 4, 5, 6]


@settings(max_examples=20)
@given(st.lists(st.integers(-9, 9), min_size=6, max_size=6, unique=True), st.integers(-30, 30), st.integers(1, 6))
def test_prym_odd_genus_two(roots, a, i):
    C = HyperellipticCurve.from_roots(roots)
    if a in roots:
        with pytest.raises(CurveError):
            spectral.prym_odd(C, i, a)
        return
    assert spectral.prym_odd(C, i, a).genus == 2


def test_prym_argument_checks():
    with pytest.raises(CurveError):
        spectral.prym_split_even(G3, [1, 2, 3], 0)
    with pytest.raises(CurveError):
        spectral.prym_split_even(G2, [1, 2], 0)
