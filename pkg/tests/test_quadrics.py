import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinhiggs import quadrics as qd
from spinhiggs.curve import CurveError, HyperellipticCurve
from spinhiggs.exactalg import MPoly, Poly
from spinhiggs.spin import theta
from spinhiggs.suite import collinear_example

C = HyperellipticCurve.from_roots([-6, -1, 1, 2, 5, 7])
TH = theta(C, [1, 2, 3])
POINTS = C.search_points(12)

pencils = st.lists(st.fractions(-30, 30, max_denominator=4), min_size=6, max_size=6, unique=True).map(lambda mu: qd.QuadricPencil(tuple(mu)))


@settings(max_examples=20)
@given(pencils)
def test_bv_rank_one_and_descent(pencil):
    for i in range(1, 7):
        assert qd.verify_bv_rank_one(pencil, i)["passed"]
        assert qd.verify_bv_descends(pencil, i)["passed"]


def test_bv_tensors_commute_with_symmetric_structure():
    pencil = qd.QuadricPencil((0, 1, 2, 3, 5, 8))
    total = None
    for i in range(1, 7):
        S = qd.bv_tensor(pencil, i)
        total = S if total is None else [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(total, S)]
    # each (z_i d_j - z_j d_i)^2 appears with 1/(mu_i - mu_j) + 1/(mu_j - mu_i) = 0
    assert all(e.is_zero() for row in total for e in row)


def test_rotation_fields_are_tangent():
    pencil = qd.QuadricPencil((0, 1, 2, 3, 5, 8))
    for i, j in combinations(range(6), 2):
        assert qd.apply_field(qd.rotation_field(pencil, i, j), pencil.q1()).is_zero()


def test_pencil_needs_distinct_parameters():
    with pytest.raises(ValueError):
        qd.QuadricPencil((0, 1, 1, 2, 3, 4))
    with pytest.raises(ValueError):
        qd.bv_tensor(qd.QuadricPencil((0, 1, 2, 3, 4, 5)), 7)


def test_default_sign_table():
    table = qd.default_sign_table()
    assert len(table) == 15
    assert table[(1, 2)] == (1, 1, -1, -1)
    rep = qd.verify_degeneracy_section(table)
    assert rep["passed"] and rep["linear_forms"]["r12"] == "0"


def _table_text(overrides=None, drop=None):
    table = dict(qd.default_sign_table())
    table.update(overrides or {})
    if drop:
        del table[drop]
    return qd.format_sign_table(table)


def test_sign_table_errors(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text(_table_text(drop=(3, 4)))
    with pytest.raises(qd.SignTableError, match="incomplete sign table"):
        qd.load_sign_table(path)
    path.write_text(_table_text({(1, 2): (1, -1, 1, -1)}))
    with pytest.raises(qd.SignTableError, match="r_12"):
        qd.load_sign_table(path)
    path.write_text(_table_text({(1, 3): (1, -1, 1, -1)}))
    with pytest.raises(qd.SignTableError, match="degeneracy"):
        qd.load_sign_table(path)
    with pytest.raises(qd.SignTableError):
        qd.parse_sign_table("1 2 ++-")
    with pytest.raises(qd.SignTableError):
        qd.parse_sign_table("2 1 ++--")
    with pytest.raises(qd.SignTableError):
        qd.parse_sign_table("1 2 ++--\n1 2 ++--")


def test_sign_table_roundtrip():
    table = qd.default_sign_table()
    assert qd.parse_sign_table("# header\n" + qd.format_sign_table(table)) == table


@given(st.lists(st.sampled_from([1, -1]), min_size=4, max_size=4))
def test_degeneracy_criterion(eps):
    table = {(1, j): tuple(eps) for j in range(2, 7)}
    passed = qd.verify_degeneracy_section(table)["passed"]
    assert passed == (eps[0] == eps[1] and eps[2] == eps[3])


@st.composite
def moment_pairs(draw):
    q = draw(st.lists(st.integers(-5, 5), min_size=4, max_size=4).filter(any))
    p = draw(st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    q = [Fraction(v) for v in q]
    p = [Fraction(v) for v in p]
    k = next(i for i in range(4) if q[i])
    p[k] -= sum(a * b for a, b in zip(p, q)) / q[k]
    return q, p


XS = [Fraction(v) for v in (-3, -1, 0, 2, 5, 9)]


@given(moment_pairs())
def test_integrable_map_matches_partial_fractions(pair):
    q, p = pair
    table = qd.default_sign_table()
    N = qd.integrable_map(q, p, table, XS)
    assert N.degree() <= 4
    x0 = Fraction(7, 3)
    lhs = sum(2 * qd.r_value(eps, q, p) / ((x0 - XS[i - 1]) * (x0 - XS[j - 1])) for (i, j), eps in table.items())
    denom = Fraction(1)
    for xk in XS:
        denom *= x0 - xk
    assert N(x0) / denom == lhs


def test_integrable_map_span_and_guards():
    rng = random.Random(4)
    samples = []
    for _ in range(12):
        q = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        q[0] = q[0] or Fraction(1)
        p = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        p[0] -= sum(a * b for a, b in zip(p, q)) / q[0]
        samples.append((q, p))
    table = qd.default_sign_table()
    assert qd.span_dimension(table, XS, samples) <= 3
    with pytest.raises(ValueError, match="moment"):
        qd.integrable_map([1, 0, 0, 0], [1, 0, 0, 0], table, XS)
    with pytest.raises(qd.SignTableError):
        qd.integrable_map([1, 0, 0, 0], [0, 1, 0, 0], {(1, 2): (1, 1, -1, -1)}, XS)


def test_embedding_charts():
    for i in range(6):
        P = C.weierstrass(i)
        e = qd.embed_p3(C, TH, P)
        assert any(c != 0 for c in e.coords)
        assert qd.charts_agree(C, TH, P)
    for P in POINTS[:6]:
        assert qd.embed_p3(C, TH, P).chart == "main"
        assert qd.charts_agree(C, TH, P)
    assert qd.embed_p3(C, TH, C.inf_plus).normalized() == (0, 1, 0, 1)


def test_embedding_lies_on_two_quadrics():
    # [y : xy : g2 : x g2] satisfies Y0 Y3 = Y1 Y2
    for P in POINTS[:8]:
        Y = qd.embed_p3(C, TH, P).coords
        assert Y[0] * Y[3] == Y[1] * Y[2]


def _random_triples(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        tr = rng.sample(POINTS, 3)
        if len({P.x for P in tr}) == 3:
            out.append(tr)
    return out


@pytest.mark.parametrize("tr", _random_triples(20, 11))
def test_plane_construction(tr):
    r = qd.pqr_construction(C, TH, *tr)
    if isinstance(r, qd.CollinearCase):
        assert r.passed
        return
    assert r.quintic.degree() + r.residual_at_infinity == 5
    assert r.remainder_zero
    assert r.residual_degree == 2
    assert r.residual_divisor.degree() == 2 and r.residual_divisor.is_effective()
    assert r.class_h0 == 1
    assert r.xproj_matches


def test_plane_through_infinity():
    # x = 2/5-type triples found by the random sweep: the plane meets inf-
    hits = []
    for tr in _random_triples(60, 11):
        r = qd.pqr_construction(C, TH, *tr)
        if isinstance(r, qd.PlaneResult) and r.residual_at_infinity:
            hits.append(r)
    assert hits
    for r in hits:
        assert r.passed and r.xproj_matches
        assert r.residual_divisor.inf_coefficient("inf+") + r.residual_divisor.inf_coefficient("inf-") == r.residual_at_infinity


def test_plane_passes_through_sigma_points():
    tr = _random_triples(1, 3)[0]
    r = qd.pqr_construction(C, TH, *tr)
    for P in tr:
        Y = qd.embed_p3(C, TH, C.sigma(P)).coords
        assert sum(a * b for a, b in zip(r.plane, Y)) == 0


def test_collinear_cases():
    r = qd.pqr_construction(C, TH, *(C.weierstrass(i) for i in range(3)))
    assert isinstance(r, qd.CollinearCase) and r.passed
    Cc, thc, tri = collinear_example()
    r = qd.pqr_construction(Cc, thc, *tri)
    assert isinstance(r, qd.CollinearCase) and r.passed
    flipped = [Cc.sigma(P) for P in tri]
    assert isinstance(qd.pqr_construction(Cc, thc, *flipped), qd.CollinearCase)


def test_collinear_triple_search():
    Cc, thc, tri = collinear_example()
    found = qd.collinear_triples(Cc, thc, [12, -12, 5])
    xs = sorted(sorted(P.x for P in t) for t in found)
    assert [-3, -1, 0] in xs


def test_degenerate_and_invalid_triples():
    P = POINTS[0]
    other = next(Q for Q in POINTS if Q.x != P.x)
    with pytest.raises(qd.DegenerateTriple, match="degenerate triple"):
        qd.pqr_construction(C, TH, P, C.sigma(P), other)
    with pytest.raises(CurveError):
        qd.pqr_construction(C, TH, C.inf_plus, POINTS[1], POINTS[2])
    with pytest.raises(CurveError):
        qd.pqr_construction(C, theta(C, [1]), *_random_triples(1, 0)[0])
