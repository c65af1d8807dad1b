import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinhiggs.curve import CurveError, Divisor, HyperellipticCurve, divisor_from_points, point_pool, random_divisor
from spinhiggs.higgs import (
    DecomposableBundle,
    HiggsField,
    bracket,
    char_poly,
    higgs_space,
    predicted_parity,
    verify_parity_theorem,
)
from spinhiggs.spin import enumerate_thetas, theta

C = HyperellipticCurve.from_roots([-6, -1, 1, 2, 5, 7])
POOL = point_pool(C, 6)
THETAS = enumerate_thetas(C)
P = C.search_points(6)[0]


def test_predicted_parity():
    assert predicted_parity(3, 5, 1) == 0
    assert predicted_parity(2, 1, 1) == 0
    assert predicted_parity(2, 2, 1) == 1


@settings(max_examples=60)
@given(st.integers(2, 3), st.integers(0, 10**6))
def test_parity_formula(rank, seed):
    rng = random.Random(seed)
    th = rng.choice(THETAS)
    Ds = [random_divisor(C, rng.randint(-3, 3), rng, POOL) for _ in range(rank)]
    assert verify_parity_theorem(DecomposableBundle(C, Ds), th).passed


@pytest.mark.parametrize("subset,dim", [((1,), 3), ((1, 2, 3), 2)])
def test_jump_example(subset, dim):
    th = theta(C, subset)
    E = DecomposableBundle(C, [divisor_from_points(C, [P]), th.divisor])
    hs = higgs_space(E, th)
    assert hs.dimension == dim
    assert hs.summand_dims[(0, 1)] == 1 and hs.summand_dims[(1, 0)] == 1


def test_trivial_bundle_dimension():
    th = theta(C, [1])
    E = DecomposableBundle(C, [Divisor.zero(C)] * 3)
    # End_0 of the trivial rank-3 bundle is 8 copies of K^1/2
    assert higgs_space(E, th).dimension == 8


def _basis(E, th):
    return higgs_space(E, th).basis


def test_fields_validate():
    th = theta(C, [1])
    E = DecomposableBundle(C, [divisor_from_points(C, [P]), Divisor.zero(C)])
    for psi in _basis(E, th):
        psi.validate()
    zero = C.const(0)
    with pytest.raises(CurveError):
        HiggsField(E, th, [[C.x, zero], [zero, -C.x]])
    with pytest.raises(CurveError):
        HiggsField(E, th, [[C.const(1), zero], [zero, zero]])


def test_bracket_is_trace_free_section():
    th = theta(C, [2])
    E = DecomposableBundle(C, [divisor_from_points(C, [P]), Divisor.zero(C), divisor_from_points(C, [C.sigma(P)])])
    basis = _basis(E, th)
    assert basis
    for a in basis:
        for b in basis:
            br = bracket(a, b)
            assert br.m == 2
            assert (bracket(b, a) + br).is_zero()


def test_char_poly_rank_two():
    th = theta(C, [1])
    E = DecomposableBundle(C, [divisor_from_points(C, [P]), Divisor.zero(C)])
    basis = _basis(E, th)
    psi = basis[0]
    for b in basis[1:]:
        psi = psi + b
    sd = char_poly(psi)
    # det(z - Psi) = z^2 - (a^2 + bc) for a trace-free 2x2 matrix
    a, b, c = psi[0, 0], psi[0, 1], psi[1, 0]
    assert sd.c(2) == -(a * a + b * c)


def test_conjugation_preserves_char_poly():
    th = theta(C, [1])
    E = DecomposableBundle(C, [divisor_from_points(C, [P]), Divisor.zero(C)])
    basis = _basis(E, th)
    psi = basis[0]
    for b in basis[1:]:
        psi = psi + b.scale(2)
    conj = psi.conjugate_diagonal([3, 5])
    assert char_poly(conj).c(2) == char_poly(psi).c(2)


def test_bundle_validation():
    with pytest.raises(ValueError):
        DecomposableBundle(C, [Divisor.zero(C)])
    other = HyperellipticCurve.from_roots([0, 1, 2, 3, 4, 5])
    with pytest.raises(CurveError):
        DecomposableBundle(C, [Divisor.zero(C), Divisor.zero(other)])
