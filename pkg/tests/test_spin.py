import pytest

from spinhiggs.curve import CurveError, HyperellipticCurve, canonical_divisor, divisor_of, h0
from spinhiggs.spin import (
    HalfCanonicalSection,
    canonical_subset,
    enumerate_thetas,
    half_power_sections,
    parity_census,
    sigma_eigensections,
    theta,
)

G2 = HyperellipticCurve.from_roots([-6, -1, 1, 2, 5, 7])
G3 = HyperellipticCurve.from_roots([-3, -2, -1, 0, 1, 2, 3, 4])


def test_census_genus_two():
    c = parity_census(G2)
    assert (c.odd, c.even, c.total) == (6, 10, 16)
    assert c.jumps == []


def test_census_genus_three():
    c = parity_census(G3)
    assert (c.odd, c.even, c.total) == (28, 36, 64)
    assert [(th.label, d) for th, d in c.jumps] == [("{}", 2)]


def test_rows_match_closed_form():
    for C in (G2, G3):
        for row in parity_census(C).rows:
            assert row["h0"] == row["predicted_h0"]
            assert row["degree"] == C.genus - 1


def test_every_theta_squares_to_canonical():
    for th in enumerate_thetas(G2):
        assert th.is_square_root_of_canonical()
        assert divisor_of(th.phi) == 2 * th.divisor - canonical_divisor(G2)


def test_complement_gives_same_characteristic():
    assert theta(G2, [4, 5, 6]) == theta(G2, [1, 2, 3])
    assert canonical_subset((3, 4, 5), 6) == (0, 1, 2)
    assert theta(G3, [1, 2, 3, 4, 5, 6, 7, 8]).subset == ()


def test_translation_by_two_torsion():
    th = theta(G2, [1])
    moved = th.translate([0, 1])  # 0-based, like ThetaCharacteristic.subset
    assert moved == theta(G2, [2])
    # the difference is a 2-torsion class
    assert h0(G2, 2 * (moved.divisor - th.divisor)) == 1
    with pytest.raises(CurveError):
        th.translate([0])


def test_parity_constraint():
    with pytest.raises(CurveError):
        theta(G2, [1, 2])


def test_odd_model_refused():
    C = HyperellipticCurve.from_roots([-2, -1, 0, 1, 3])
    with pytest.raises(CurveError, match="even model required"):
        enumerate_thetas(C)


def test_section_dimensions():
    th = theta(G2, [1, 2, 3])
    dims = [len(half_power_sections(G2, th, m)) for m in range(2, 7)]
    assert dims == [2, 2, 3, 4, 5]
    for th3 in enumerate_thetas(G3):
        for m in range(3, 7):
            assert h0(G3, m * th3.divisor) == (m - 1) * 2


def test_explicit_sections_for_even_triple():
    th = theta(G2, [1, 2, 3])
    x = G2.x
    g1 = (x + 6) * (x + 1) * (x - 1)
    assert th.phi == g1 or th.phi == g1 * -1 or (th.phi / g1).is_constant()
    u2 = G2.y / (g1 * g1)
    assert HalfCanonicalSection(3, u2, th).m == 3


def test_section_products_and_ratios():
    th = theta(G2, [1])
    s = half_power_sections(G2, th, 1)
    assert len(s) == 1
    sq = s[0] * s[0]
    assert sq.m == 2
    h = sq.differential_ratio()
    # an honest holomorphic differential h dx/y has h a polynomial of degree <= g-1
    assert h.c.degree() == 0 and h.b.is_zero() and h.a.degree() <= 1
    with pytest.raises(CurveError):
        s[0].differential_ratio()
    assert (s[0] + (-s[0])).is_zero()


def test_non_section_rejected():
    th = theta(G2, [1, 2, 3])
    with pytest.raises(CurveError):
        HalfCanonicalSection(1, G2.x, th)


def test_sigma_eigenspaces_split_the_space():
    for th in enumerate_thetas(G2):
        for m in (2, 3, 4):
            plus, minus = sigma_eigensections(G2, th, m)
            assert len(plus) + len(minus) == h0(G2, m * th.divisor)
            for s in plus:
                assert s.sigma().u == s.u
            for s in minus:
                assert s.sigma().u == -s.u
