"""Genus-2 moduli geometry: symmetric tensors on an intersection of two
quadrics, the quadratic-differential map on T*P^3, and the plane construction
of a Higgs field from three points of C embedded in P^3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .curve import (
    CurveError,
    CurvePoint,
    Divisor,
    HyperellipticCurve,
    canonical_divisor,
    divisor_from_points,
    divisor_of,
    h0,
)
from .exactalg import MPoly, Poly, kernel_basis, rank, to_scalar
from .spin import ThetaCharacteristic


class SignTableError(ValueError):
    pass


class DegenerateTriple(ValueError):
    pass


# ---------------------------------------------------------------------------
# BV symmetric tensors


@dataclass(frozen=True)
class QuadricPencil:
    mu: tuple

    def __post_init__(self):
        mu = tuple(to_scalar(m) for m in self.mu)
        if len(set(mu)) != len(mu):
            raise ValueError("pencil parameters must be distinct")
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return len(self.mu)

    def z(self, i: int) -> MPoly:
        return MPoly.var(self.n, i)

    def q1(self) -> MPoly:
        return sum((self.z(i) ** 2 for i in range(self.n)), MPoly(self.n))

    def q2(self) -> MPoly:
        return sum((self.z(i) ** 2 * self.mu[i] for i in range(self.n)), MPoly(self.n))


def gradient(p: MPoly) -> list[MPoly]:
    return [p.diff(k) for k in range(p.nvars)]


def rotation_field(pencil: QuadricPencil, i: int, j: int) -> list[MPoly]:
    """Components of z_i d_j - z_j d_i (0-based indices)."""
    n = pencil.n
    v = [MPoly(n) for _ in range(n)]
    v[j] = pencil.z(i)
    v[i] = -pencil.z(j)
    return v


def apply_field(v, p: MPoly) -> MPoly:
    return sum((vk * dk for vk, dk in zip(v, gradient(p))), MPoly(p.nvars))


def bv_tensor(pencil: QuadricPencil, i: int) -> list[list[MPoly]]:
    """s_i = sum_{j != i} (z_i d_j - z_j d_i)^2 / (mu_i - mu_j), 1-based i."""
    n = pencil.n
    if not 1 <= i <= n:
        raise ValueError(f"index must lie in 1..{n}")
    i -= 1
    S = [[MPoly(n) for _ in range(n)] for _ in range(n)]
    for j in range(n):
        if j == i:
            continue
        w = 1 / (pencil.mu[i] - pencil.mu[j])
        v = rotation_field(pencil, i, j)
        for a in (i, j):
            for b in (i, j):
                S[a][b] = S[a][b] + v[a] * v[b] * w
    return S


def contract(S, covector) -> list[MPoly]:
    n = len(S)
    return [sum((S[a][b] * covector[b] for b in range(n)), MPoly(S[0][0].nvars)) for a in range(n)]


def verify_bv_rank_one(pencil: QuadricPencil, i: int) -> dict:
    S = bv_tensor(pencil, i)
    n = pencil.n
    k = i - 1
    R = [[e.subs({k: 0}) for e in row] for row in S]
    symmetric = all(S[a][b] == S[b][a] for a in range(n) for b in range(n))
    nonzero = [(a, b) for a in range(n) for b in range(n) if not R[a][b].is_zero()]
    expected = sum((pencil.z(j) ** 2 * (1 / (pencil.mu[k] - pencil.mu[j])) for j in range(n) if j != k), MPoly(n))
    entry_ok = R[k][k] == expected
    contractions_vanish = True
    for c in range(n):
        if c == k:
            continue
        cov = [0] * n
        cov[c] = 1
        if any(not e.is_zero() for e in contract(R, cov)):
            contractions_vanish = False
    passed = symmetric and nonzero == [(k, k)] and entry_ok and contractions_vanish
    return {
        "i": i,
        "symmetric": symmetric,
        "nonzero_entries": [(a + 1, b + 1) for a, b in nonzero],
        "diagonal_entry": str(R[k][k]),
        "diagonal_entry_matches": entry_ok,
        "cotangent_contractions_vanish": contractions_vanish,
        "passed": passed,
    }


def verify_bv_descends(pencil: QuadricPencil, i: int) -> dict:
    n = pencil.n
    k = i - 1
    Q1, Q2 = pencil.q1(), pencil.q2()
    annihilates = all(apply_field(rotation_field(pencil, k, j), Q1).is_zero() for j in range(n) if j != k)
    S = bv_tensor(pencil, i)
    lhs = contract(S, gradient(Q2))
    zk = pencil.z(k)
    rhs = []
    for a in range(n):
        comp = zk * pencil.z(a)
        if a == k:
            comp = comp - Q1
        rhs.append(comp * zk * -2)
    descent = all(x == y for x, y in zip(lhs, rhs))
    kills_q1 = all(e.is_zero() for e in contract(S, gradient(Q1)))
    return {
        "i": i,
        "fields_annihilate_Q1": annihilates,
        "descent_identity": descent,
        "contraction_with_dQ1_vanishes": kills_q1,
        "passed": annihilates and descent and kills_q1,
    }


# ---------------------------------------------------------------------------
# sign tables and the quadratic-differential map


PAPER_R12 = (1, 1, -1, -1)


def _parse_pattern(s: str) -> tuple:
    s = s.strip()
    if len(s) != 4 or any(ch not in "+-" for ch in s):
        raise SignTableError(f"bad sign pattern {s!r}")
    return tuple(1 if ch == "+" else -1 for ch in s)


def parse_sign_table(text: str) -> dict:
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise SignTableError(f"line {lineno}: expected 'i j pattern'")
        i, j = int(parts[0]), int(parts[1])
        if not (1 <= i < j <= 6):
            raise SignTableError(f"line {lineno}: need 1 <= i < j <= 6")
        if (i, j) in table:
            raise SignTableError(f"line {lineno}: duplicate pair ({i},{j})")
        table[(i, j)] = _parse_pattern(parts[2])
    return table


def format_sign_table(table: dict) -> str:
    return "\n".join(f"{i} {j} " + "".join("+" if e > 0 else "-" for e in table[(i, j)]) for i, j in sorted(table)) + "\n"


def _require_complete(table: dict):
    missing = [(i, j) for i in range(1, 7) for j in range(i + 1, 7) if (i, j) not in table]
    if missing:
        raise SignTableError(f"incomplete sign table: missing {missing}")


def validate_sign_table(table: dict) -> dict:
    """Reject tables that are incomplete, change r_12, or fail the degeneracy check."""
    _require_complete(table)
    if tuple(table[(1, 2)]) != PAPER_R12:
        raise SignTableError("r_12 must use the pattern ++--")
    report = verify_degeneracy_section(table)
    if not report["passed"]:
        raise SignTableError(f"sign table fails the degeneracy check: {report['failing']}")
    return table


def load_sign_table(path=None) -> dict:
    if path is None:
        text = resources.files("spinhiggs").joinpath("data/default_sign_table.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return validate_sign_table(parse_sign_table(text))


def default_sign_table() -> dict:
    return load_sign_table()


def linear_form(eps, q) -> list:
    """Coefficients of l(p) = sum_k eps_k q_k p_k as a covector in p."""
    return [e * qk for e, qk in zip(eps, q)]


def r_value(eps, q, p):
    return sum(e * qk * pk for e, qk, pk in zip(eps, q, p)) ** 2


def integrable_map(q, p, table: dict, xs) -> Poly:
    """Numerator N(x) with sum_{i != j} r_ij / ((x - x_i)(x - x_j)) = N(x) / prod (x - x_k).

    The sum runs over ordered pairs, so each unordered pair counts twice.
    """
    _require_complete(table)
    q = [to_scalar(v) for v in q]
    p = [to_scalar(v) for v in p]
    if all(v == 0 for v in q):
        raise ValueError("q must be nonzero")
    if sum(a * b for a, b in zip(p, q)) != 0:
        raise ValueError("moment condition sum p_i q_i = 0 violated")
    xs = [to_scalar(v) for v in xs]
    out = Poly([])
    for (i, j), eps in table.items():
        others = [xs[k] for k in range(len(xs)) if k not in (i - 1, j - 1)]
        out = out + Poly.from_roots(others) * (2 * r_value(eps, q, p))
    return out


def evaluate_at_branch_point(N: Poly, xs, i: int):
    return N(to_scalar(xs[i - 1]))


def verify_degeneracy_section(table: dict) -> dict:
    """Check l_1j(q2, -q1, q4, -q3) = 0 identically for each r_1j in the table."""
    qv = [MPoly.var(4, k, names=("q1", "q2", "q3", "q4")) for k in range(4)]
    p = [qv[1], -qv[0], qv[3], -qv[2]]
    rows = {}
    failing = []
    keys = sorted(k for k in table if k[0] == 1)
    if len(keys) < 5:
        failing.append("missing r_1j entries")
    for key in keys:
        eps = table[key]
        val = sum((qv[k] * p[k] * eps[k] for k in range(4)), MPoly(4, names=("q1", "q2", "q3", "q4")))
        rows[f"r{key[0]}{key[1]}"] = str(val)
        if not val.is_zero():
            failing.append(f"r{key[0]}{key[1]}")
    moment = sum((qv[k] * p[k] for k in range(4)), MPoly(4))
    return {
        "substitution": "p = (q2, -q1, q4, -q3)",
        "linear_forms": rows,
        "moment_preserved": moment.is_zero(),
        "failing": failing,
        "passed": not failing and moment.is_zero(),
    }


def span_dimension(table: dict, xs, samples) -> int:
    """Rank of the numerators over the given (q, p) samples."""
    rows = []
    for q, p in samples:
        N = integrable_map(q, p, table, xs)
        rows.append([N[k] for k in range(5)])
    return rank(rows)


# ---------------------------------------------------------------------------
# embedding in P^3 and the plane construction


def _split(th: ThetaCharacteristic):
    C = th.curve
    if C.genus != 2 or len(th.subset) != 3:
        raise CurveError("even characteristic of a genus-2 curve required")
    if th.h0 % 2:
        raise CurveError("even characteristic required")
    T = th.subset
    comp = tuple(i for i in range(6) if i not in T)
    g1 = Poly.from_roots([C.weierstrass_roots[i] for i in T])
    g2 = Poly.from_roots([C.weierstrass_roots[i] for i in comp])
    lc = C.f.lc()
    return g1 * lc, g2


@dataclass(frozen=True)
class EmbeddedPoint:
    coords: tuple
    point: CurvePoint
    chart: str

    def normalized(self) -> tuple:
        lead = next(c for c in self.coords if c != 0)
        return tuple(c / lead for c in self.coords)


def embed_p3(C: HyperellipticCurve, th: ThetaCharacteristic, P: CurvePoint) -> EmbeddedPoint:
    """[y : xy : g2 : x g2], or [g1 : x g1 : y : xy] where y and g2 both vanish."""
    g1, g2 = _split(th)
    if P.kind in ("inf+", "inf-"):
        s = 1 if P.kind == "inf+" else -1
        return EmbeddedPoint((Fraction(0), Fraction(s) * C.sqrt_lc, Fraction(0), Fraction(1)), P, "infinity")
    x, y = P.x, P.y
    G2 = g2(x)
    if y != 0 or G2 != 0:
        coords = (y, x * y, G2, x * G2)
        return EmbeddedPoint(coords, P, "main")
    G1 = g1(x)
    return EmbeddedPoint((G1, x * G1, y, x * y), P, "alternate")


def charts_agree(C: HyperellipticCurve, th: ThetaCharacteristic, P: CurvePoint) -> bool:
    g1, g2 = _split(th)
    x, y = P.x, P.y
    main = [y, x * y, g2(x), x * g2(x)]
    alt = [g1(x), x * g1(x), y, x * y]
    if all(v == 0 for v in main) or all(v == 0 for v in alt):
        return True
    return rank([main, alt]) == 1


@dataclass
class PlaneResult:
    plane: tuple
    quintic: Poly
    residual: Poly
    remainder_zero: bool
    residual_divisor: Divisor
    class_h0: int
    collinear_h0: int
    xproj_matches: bool
    residual_at_infinity: int = 0
    report: dict = field(default_factory=dict)

    @property
    def residual_degree(self) -> int:
        """Degree of the residual as a binary form (roots at infinity included)."""
        return self.residual.degree() + self.residual_at_infinity

    @property
    def passed(self) -> bool:
        return self.remainder_zero and self.residual_degree == 2 and self.class_h0 == 1 and self.residual_divisor.degree() == 2


@dataclass
class CollinearCase:
    points: tuple
    line_rank: int
    h0_L_minus_half_canonical: int

    @property
    def passed(self) -> bool:
        return self.h0_L_minus_half_canonical == 1


def _x_projection(D: Divisor) -> Poly:
    out = Poly([1])
    for cl, n in D.clusters:
        if n < 0:
            raise CurveError("x-projection of a non-effective divisor")
        q = cl.q**n
        out = out * (q * q if cl.kind == "F" else q)
    return out


def pqr_construction(C: HyperellipticCurve, th: ThetaCharacteristic, p: CurvePoint, q: CurvePoint, r: CurvePoint):
    pts = (p, q, r)
    for P in pts:
        if P.kind not in ("affine", "weierstrass"):
            raise CurveError("p, q, r must be affine points")
        if P.y * P.y != C.f(P.x):
            raise CurveError(f"{P} is not on the curve")
    xs = [P.x for P in pts]
    if len(set(xs)) < 3:
        raise DegenerateTriple("degenerate triple")
    g1, g2 = _split(th)
    sig = [embed_p3(C, th, C.sigma(P)) for P in pts]
    M = [list(e.coords) for e in sig]
    rk = rank(M)
    e_t = th.divisor
    K = canonical_divisor(C)
    ppr = divisor_from_points(C, pts)
    collinear_h0 = h0(C, ppr - K - e_t)
    if rk < 3:
        return CollinearCase(pts, rk, collinear_h0)
    (plane,) = kernel_basis(M, 4)
    A, B, Cc, D = plane
    lin_y = Poly([A, B])  # coefficient of y
    lin_g = Poly([Cc, D])  # coefficient of g2
    quintic = g2 * lin_g * lin_g - g1 * lin_y * lin_y
    known = Poly.from_roots(xs)
    residual, rem = divmod(quintic, known)
    # plane section divisor: div(phi) minus the base locus a4 + a5 + a6 - 4H
    phi = C.fn(lin_g * g2, lin_y)
    base = Divisor(C, {C.weierstrass(i): 1 for i in range(6) if i not in th.subset})
    base = base - 4 * Divisor(C, {C.inf_plus: 1, C.inf_minus: 1})
    section = divisor_of(phi) - base
    sigma_sum = divisor_from_points(C, [C.sigma(P) for P in pts])
    Dc = section - sigma_sum
    if not Dc.is_effective():
        raise CurveError("plane section does not contain the three points")
    class_h0 = h0(C, ppr - K + e_t - Dc)
    # the quintic drops degree when the plane meets inf+ or inf-
    at_inf = 5 - quintic.degree()
    xproj = rem.is_zero() and _x_projection(Dc) == residual.monic() and sum(n for _, n in Dc.inf) == at_inf
    report = {
        "points": [repr(P) for P in pts],
        "sigma_images": [[str(c) for c in e.normalized()] for e in sig],
        "plane": [str(v) for v in plane],
        "quintic": str(quintic),
        "quintic_degree": quintic.degree(),
        "remainder_zero": rem.is_zero(),
        "residual": str(residual),
        "residual_degree": residual.degree() + at_inf,
        "residual_at_infinity": at_inf,
        "residual_divisor": repr(Dc),
        "class_h0": class_h0,
        "collinear_h0": collinear_h0,
    }
    return PlaneResult(tuple(plane), quintic, residual, rem.is_zero(), Dc, class_h0, collinear_h0, xproj, at_inf, report)


def collinear_triples(C: HyperellipticCurve, th: ThetaCharacteristic, lambdas) -> list[tuple]:
    """Rational triples cut out by sections t1 g1 + t2 y of K^{3/2}.

    For lambda = t1/t2 the zeros are the roots of lambda^2 g1 - g2 with
    y = -lambda g1(x); only fully rational triples with distinct x are kept.
    """
    from .exactalg import rational_roots

    g1, g2 = _split(th)
    out = []
    for lam in lambdas:
        lam = Fraction(lam)
        cubic = g1 * (lam * lam) - g2
        if cubic.degree() != 3:
            continue
        roots = rational_roots(cubic)
        if len(roots) != 3 or any(C.f(x) == 0 for x in roots):
            continue
        out.append(tuple(C.point(x, -lam * g1(x)) for x in roots))
    return out


__all__ = [
    "CollinearCase",
    "DegenerateTriple",
    "EmbeddedPoint",
    "PAPER_R12",
    "PlaneResult",
    "QuadricPencil",
    "SignTableError",
    "bv_tensor",
    "charts_agree",
    "collinear_triples",
    "contract",
    "default_sign_table",
    "embed_p3",
    "evaluate_at_branch_point",
    "format_sign_table",
    "integrable_map",
    "linear_form",
    "load_sign_table",
    "parse_sign_table",
    "pqr_construction",
    "r_value",
    "rotation_field",
    "span_dimension",
    "validate_sign_table",
    "verify_bv_descends",
    "verify_bv_rank_one",
    "verify_degeneracy_section",
]
