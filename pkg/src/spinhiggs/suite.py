"""The acceptance matrix: twelve criteria, each a function returning checks.

Every randomized criterion draws from its own ``random.Random`` seeded by
counter mode from the master seed, so criteria are reproducible in isolation.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import charclass, quadrics, spectral
from .curve import HyperellipticCurve, canonical_divisor, divisor_from_points, h0, point_pool, random_divisor
from .exactalg import Poly
from .higgs import DecomposableBundle, higgs_space, verify_parity_theorem
from .report import CLOSED_FORM, DERIVED, IDENTITY, THEOREM, Check, Report
from .spin import enumerate_thetas, parity_census, theta

DEFAULT_SEED = 20240601

GENUS2_ROOTS = (-6, -1, 1, 2, 5, 7)
GENUS3_ROOTS = (-3, -2, -1, 0, 1, 2, 3, 4)

# A genus-2 curve on which sigma(p), sigma(q), sigma(r) lie on a line for a
# rational triple: mu^2 g1 - g2 = (mu^2 - 1) (x + 3)(x + 1) x with mu = 12.
COLLINEAR_ROOTS = (Fraction(-5, 2), Fraction(-3, 2), Fraction(1, 9), 3, 4, 5)
COLLINEAR_XS = (-3, -1, 0)
COLLINEAR_MU = 12


def sub_seed(master: int, label: str, counter: int = 0) -> int:
    digest = hashlib.sha256(f"{master}:{label}:{counter}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sub_rng(master: int, label: str, counter: int = 0) -> random.Random:
    return random.Random(sub_seed(master, label, counter))


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    rr_trials: int = 200
    parity_trials: int = 100
    spectral_trials: int = 60
    prym_trials: int = 20
    bv_trials: int = 20
    pqr_trials: int = 20
    only: list = field(default_factory=list)


_curve_cache: dict = {}


def curve_from_roots(roots) -> HyperellipticCurve:
    key = tuple(Fraction(r) for r in roots)
    if key not in _curve_cache:
        _curve_cache[key] = HyperellipticCurve.from_roots(list(key))
    return _curve_cache[key]


def random_roots(rng, count: int, lo: int = -9, hi: int = 9) -> list:
    return sorted(rng.sample(range(lo, hi + 1), count))


# ---------------------------------------------------------------------------
# 1. spin census


def crit_spin_census(cfg: SuiteConfig) -> list[Check]:
    out = []
    t0 = time.perf_counter()
    c2 = parity_census(curve_from_roots(GENUS2_ROOTS))
    out.append(Check.compare("g=2 odd thetas", 6, c2.odd, THEOREM))
    out.append(Check.compare("g=2 even thetas", 10, c2.even, THEOREM))
    out.append(Check.compare("g=2 jumps (h0 >= 2)", 0, len(c2.jumps), THEOREM))
    out.append(Check.compare("g=2 total = 2^(2g)", 16, c2.total, DERIVED))
    out.append(Check.flag("g=2 total as stated", 64, c2.total, CLOSED_FORM))
    c3 = parity_census(curve_from_roots(GENUS3_ROOTS))
    out.append(Check.compare("g=3 odd thetas", 28, c3.odd, THEOREM))
    out.append(Check.compare("g=3 even thetas", 36, c3.even, THEOREM))
    out.append(Check.compare("g=3 total = 2^(2g)", 64, c3.total, DERIVED))
    jumps = [(th.label, d) for th, d in c3.jumps]
    out.append(Check.compare("g=3 even thetas with h0 = 2", 1, sum(1 for _, d in jumps if d == 2), THEOREM, detail={"jumps": jumps}))
    out.append(Check.compare("g=3 no h0 >= 3", 0, sum(1 for _, d in jumps if d > 2), DERIVED))
    elapsed = time.perf_counter() - t0
    out.append(Check.compare("census under 10 s", True, elapsed < 10, THEOREM))
    return out


# ---------------------------------------------------------------------------
# 2. Riemann-Roch engine


def crit_riemann_roch(cfg: SuiteConfig) -> list[Check]:
    out = []
    for roots in (GENUS2_ROOTS, GENUS3_ROOTS):
        C = curve_from_roots(roots)
        g = C.genus
        out.append(Check.compare(f"g={g} dim L(K)", g, h0(C, canonical_divisor(C)), THEOREM))
        for th in (enumerate_thetas(C)[0], enumerate_thetas(C)[-1]):
            dims = {m: h0(C, m * th.divisor) for m in range(3, 7)}
            want = {m: (m - 1) * (g - 1) for m in range(3, 7)}
            out.append(Check.compare(f"g={g} T={th.label} dim L(m e_T), m=3..6", want, dims, THEOREM))
    rng = sub_rng(cfg.seed, "riemann-roch")
    curves = [curve_from_roots(GENUS2_ROOTS), curve_from_roots(GENUS3_ROOTS)]
    pools = [point_pool(C, 6) for C in curves]
    bad = []
    for t in range(cfg.rr_trials):
        k = t % 2
        C, pool = curves[k], pools[k]
        g = C.genus
        deg = rng.randint(-2, 2 * g + 1)
        D = random_divisor(C, deg, rng, pool)
        K = canonical_divisor(C)
        lhs = h0(C, D) - h0(C, K - D)
        if lhs != deg - g + 1:
            bad.append(repr(D))
    out.append(Check.compare("RR identity l(D) - l(K-D) = deg D - g + 1", 0, len(bad), THEOREM, detail={"trials": cfg.rr_trials, "failures": bad[:5]}))
    return out


# ---------------------------------------------------------------------------
# 3, 4. Higgs fields


def crit_parity(cfg: SuiteConfig) -> list[Check]:
    out = []
    C = curve_from_roots(GENUS2_ROOTS)
    pool = point_pool(C, 6)
    thetas = enumerate_thetas(C)
    odd = [th for th in thetas if th.h0 % 2]
    even = [th for th in thetas if not th.h0 % 2]
    for n in (2, 3):
        rng = sub_rng(cfg.seed, "parity", n)
        bad = []
        seen_parities = set()
        for t in range(cfg.parity_trials):
            th = rng.choice(odd if t % 2 else even)
            Ds = [random_divisor(C, rng.randint(-3, 3), rng, pool) for _ in range(n)]
            r = verify_parity_theorem(DecomposableBundle(C, Ds), th)
            seen_parities.add(th.parity)
            if not r.passed:
                bad.append(r.as_dict())
        out.append(Check.compare(f"rank {n}: dim mod 2 matches formula", 0, len(bad), THEOREM, detail={"trials": cfg.parity_trials, "failures": bad[:3]}))
        out.append(Check.compare(f"rank {n}: both theta parities exercised", ["even", "odd"], sorted(seen_parities), IDENTITY))
    return out


def crit_jump_examples(cfg: SuiteConfig) -> list[Check]:
    out = []
    C = curve_from_roots(GENUS2_ROOTS)
    P = C.search_points(6)[0]
    for subset, parity, want in (((1,), "odd", 3), ((1, 2, 3), "even", 2)):
        th = theta(C, subset)
        E = DecomposableBundle(C, [divisor_from_points(C, [P]), th.divisor])
        hs = higgs_space(E, th)
        out.append(Check.compare(f"O(x)+K^1/2+O(sigma x), {parity} theta {th.label}", want, hs.dimension, THEOREM, detail={"summands": {str(k): v for k, v in hs.summand_dims.items()}}))
        # the (2,1) summand 2e_T - x is linearly equivalent to sigma(x)
        D = 2 * th.divisor - divisor_from_points(C, [P, C.sigma(P)])
        out.append(Check.compare(f"2e_T - x ~ sigma(x) for {th.label}", 1, h0(C, D), IDENTITY))
    return out


# ---------------------------------------------------------------------------
# 5, 6. spectral data


def crit_spectral(cfg: SuiteConfig) -> list[Check]:
    out = []
    curves = {2: curve_from_roots(GENUS2_ROOTS), 3: curve_from_roots(GENUS3_ROOTS)}
    combos = [(n, g) for n in (2, 3) for g in (2, 3)]
    per = max(1, -(-cfg.spectral_trials // len(combos)))
    disc_bad, rh_bad = [], []
    draws = smooth = nonreduced = 0
    for n, g in combos:
        C = curves[g]
        thetas = enumerate_thetas(C)
        rng = sub_rng(cfg.seed, "spectral", 10 * n + g)
        for _ in range(per):
            th = rng.choice(thetas)
            sd = spectral.random_spectral_data(th, n, rng)
            try:
                deg = spectral.discriminant_divisor(sd).degree()
            except spectral.NonReduced:
                nonreduced += 1
                continue
            draws += 1
            if deg != n * (n - 1) * (g - 1):
                disc_bad.append((n, g, deg))
            rec = spectral.genus_and_dims(sd)
            if rec["smooth"]:
                smooth += 1
                if rec["riemann_hurwitz_genus"] != n * (n + 1) * (g - 1) // 2 + 1:
                    rh_bad.append((n, g, rec["riemann_hurwitz_genus"]))
    out.append(Check.compare("discriminant degree = n(n-1)(g-1)", 0, len(disc_bad), THEOREM, detail={"draws": draws, "non_reduced_skipped": nonreduced, "failures": disc_bad[:5]}))
    out.append(Check.compare("Riemann-Hurwitz genus = n(n+1)(g-1)/2 + 1 (smooth draws)", 0, len(rh_bad), THEOREM, detail={"smooth_draws": smooth, "failures": rh_bad[:5]}))
    out.append(Check.compare("at least 50 reduced draws", True, draws >= 50, IDENTITY))
    table_bad = []
    for n in range(2, 7):
        for g in range(2, 6):
            rec = spectral.family_dimensions(n, g)
            if rec["total"] != rec["expected_total"]:
                table_bad.append((n, g))
    out.append(Check.compare("prym + base = 1 + (n^2-1)(g-1), n<=6, g<=5", [], table_bad, THEOREM))
    computed = {}
    for g, C in curves.items():
        th = enumerate_thetas(C)[-1]
        for n in (2, 3, 4):
            computed[f"n={n},g={g}"] = (spectral.base_dimension_from_sections(th, n), spectral.family_dimensions(n, g)["base_dim"])
    out.append(Check.compare("base dimension from section counts", [], [k for k, (a, b) in computed.items() if a != b], DERIVED, detail={"values": computed}))
    return out


def crit_prym(cfg: SuiteConfig) -> list[Check]:
    rng = sub_rng(cfg.seed, "prym")
    bad_even, bad_odd = [], []
    for t in range(cfg.prym_trials):
        roots = random_roots(rng, 6)
        C = curve_from_roots(roots)
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 5))
        while a in C.weierstrass_roots:
            a += 1
        triple = sorted(rng.sample(range(1, 7), 3))
        split = spectral.prym_split_even(C, triple, a)
        if not split.verified or split.genera != (1, 1):
            bad_even.append((roots, triple, str(a)))
        curve = spectral.prym_odd(C, rng.randint(1, 6), a)
        if curve.genus != 2:
            bad_odd.append((roots, str(a)))
    return [
        Check.compare("(z s_1)^2 proportional to (x-a)(x-x_1)(x-x_2)(x-x_3)", 0, len(bad_even), THEOREM, detail={"trials": cfg.prym_trials, "failures": bad_even[:3]}),
        Check.compare("odd-case Prym curve has genus 2", 0, len(bad_odd), THEOREM, detail={"trials": cfg.prym_trials}),
    ]


# ---------------------------------------------------------------------------
# 7-10. characteristic classes


def crit_pushforward(cfg: SuiteConfig) -> list[Check]:
    r = charclass.verify_pushforward_genus2()
    out = [Check.compare("pi_* ch(End_0 U) through degree 6", r["expected"], r["pushforward"], THEOREM, detail={"c2": r["c2"], "raw": r["pushforward_raw"]})]
    out.append(Check.flag("printed sinh/cosh closed form", r["printed_closed_form"], r["pushforward"], CLOSED_FORM, detail={"discrepancies": r["closed_form_discrepancies"]}))
    return out


def crit_koschorke(cfg: SuiteConfig) -> list[Check]:
    out = []
    for k in (1, 2, 3):
        r = charclass.koschorke_ch_equivalence(k)
        out.append(Check.compare(f"k={k} determinant form in ch", r["expected"], r["determinant_in_ch"], THEOREM))
    r = charclass.koschorke_ch_equivalence(4)
    out.append(Check.compare("k=4 determinant involves only odd ch", True, r["only_odd_ch"], DERIVED, detail={"form": r["determinant_in_ch"]}))
    return out


def crit_jumping_count(cfg: SuiteConfig) -> list[Check]:
    r = charclass.jumping_count_two_quadrics()
    return [
        Check.compare("jumping count on two quadrics", 8, r["count"], THEOREM),
        Check.compare("intermediate class", "2*h^3", r["class_on_M"], THEOREM),
        Check.compare("class agrees with the Koschorke rewrite", True, r["class_matches"] and r["rewrite_matches"], DERIVED),
        Check.compare("computed ch_3(T)", "-5/3*h^3", r["ch3_T"], DERIVED),
        Check.flag("printed ch_3(T)", r["ch3_T_printed"], r["ch3_T"], CLOSED_FORM, detail={"count_with_printed_value": r["count_with_printed_ch3"]}),
    ]


def crit_class_identities(cfg: SuiteConfig) -> list[Check]:
    r = charclass.pfaffian_class_identities()
    pb = charclass.projective_bundle_numbers(8, 4)
    return [
        Check.compare("ch(K^1/2) td(C) = 1", True, all(r["ch_half_canonical_td"].values()), THEOREM, detail={"genera": r["ch_half_canonical_td"]}),
        Check.compare("c1(L) = c1(T*M)/2", True, r["c1_L_is_half_cotangent"], THEOREM, detail={"c1_L": r["c1_L"], "c1_cotangent": r["c1_cotangent"]}),
        Check.compare("h^3 on P(V) = c1^2 - c2", 4, pb.h_cubed, THEOREM),
        Check.compare("D^3 for D = 2h", 32, pb.d_cubed, THEOREM),
        Check.compare("genus of a smooth (4,4) curve on a quadric", 9, charclass.genus_on_quadric(4, 4), THEOREM),
    ]


# ---------------------------------------------------------------------------
# 11, 12. quadrics


def crit_bv(cfg: SuiteConfig) -> list[Check]:
    rng = sub_rng(cfg.seed, "bv")
    bad_rank, bad_descent = [], []
    for _ in range(cfg.bv_trials):
        mu = [Fraction(v, rng.randint(1, 4)) for v in rng.sample(range(-30, 31), 6)]
        while len(set(mu)) < 6:
            mu = [Fraction(v) for v in rng.sample(range(-30, 31), 6)]
        pencil = quadrics.QuadricPencil(tuple(mu))
        for i in range(1, 7):
            if not quadrics.verify_bv_rank_one(pencil, i)["passed"]:
                bad_rank.append(([str(m) for m in mu], i))
            if not quadrics.verify_bv_descends(pencil, i)["passed"]:
                bad_descent.append(([str(m) for m in mu], i))
    deg = quadrics.verify_degeneracy_section(quadrics.default_sign_table())
    return [
        Check.compare("rank-one restriction at z_i = 0, all i", 0, len(bad_rank), THEOREM, detail={"pencils": cfg.bv_trials, "failures": bad_rank[:3]}),
        Check.compare("descent identity, all i", 0, len(bad_descent), THEOREM, detail={"failures": bad_descent[:3]}),
        Check.compare("r_12 degeneracy substitution vanishes", "0", deg["linear_forms"]["r12"], THEOREM),
        Check.compare("default table passes the degeneracy check", True, deg["passed"], DERIVED),
    ]


def collinear_example():
    C = curve_from_roots(COLLINEAR_ROOTS)
    g1 = Poly.from_roots(list(COLLINEAR_ROOTS[:3]))
    pts = tuple(C.point(x, COLLINEAR_MU * g1(x)) for x in COLLINEAR_XS)
    return C, theta(C, (1, 2, 3)), pts


def crit_pqr(cfg: SuiteConfig) -> list[Check]:
    rng = sub_rng(cfg.seed, "pqr")
    C = curve_from_roots(GENUS2_ROOTS)
    pts = C.search_points(12)
    evens = [th for th in enumerate_thetas(C) if len(th.subset) == 3]
    bad = []
    done = collinear_hits = 0
    attempts = 0
    while done < cfg.pqr_trials and attempts < 50 * cfg.pqr_trials:
        attempts += 1
        tr = rng.sample(pts, 3)
        if len({P.x for P in tr}) < 3:
            continue
        th = rng.choice(evens)
        r = quadrics.pqr_construction(C, th, *tr)
        if isinstance(r, quadrics.CollinearCase):
            collinear_hits += 1
            continue
        done += 1
        if not (r.passed and r.xproj_matches and r.quintic.degree() + r.residual_at_infinity == 5):
            bad.append(r.report)
    out = [
        Check.compare("non-collinear triples run", cfg.pqr_trials, done, IDENTITY),
        Check.compare("quintic, exact division, residual degree 2, D_c in |L K^1/2|", 0, len(bad), THEOREM, detail={"collinear_skipped": collinear_hits, "failures": bad[:2]}),
    ]
    cases = {}
    th = theta(C, (1, 2, 3))
    cases["a1+a2+a3"] = quadrics.pqr_construction(C, th, *(C.weierstrass(i) for i in range(3)))
    cases["a4+a5+a6"] = quadrics.pqr_construction(C, th, *(C.weierstrass(i) for i in range(3, 6)))
    Cc, thc, tri = collinear_example()
    cases["line section"] = quadrics.pqr_construction(Cc, thc, *tri)
    for name, r in cases.items():
        routed = isinstance(r, quadrics.CollinearCase)
        out.append(Check.compare(f"{name} routes to CollinearCase", True, routed, THEOREM))
        out.append(Check.compare(f"{name}: L = K^1/2 (h0(p+q+r-K-e_T) = 1)", 1, r.h0_L_minus_half_canonical if routed else None, THEOREM))
    return out


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    module: str
    run: object


CRITERIA = [
    Criterion(1, "spin census", "spin", crit_spin_census),
    Criterion(2, "Riemann-Roch engine", "curve", crit_riemann_roch),
    Criterion(3, "Higgs parity formula", "higgs", crit_parity),
    Criterion(4, "jump examples", "higgs", crit_jump_examples),
    Criterion(5, "spectral invariants", "spectral", crit_spectral),
    Criterion(6, "genus-2 Prym", "spectral", crit_prym),
    Criterion(7, "pushforward of ch(End_0 U)", "charclass", crit_pushforward),
    Criterion(8, "Koschorke identities", "charclass", crit_koschorke),
    Criterion(9, "jumping count", "charclass", crit_jumping_count),
    Criterion(10, "class identities", "charclass", crit_class_identities),
    Criterion(11, "BV tensors", "quadrics", crit_bv),
    Criterion(12, "plane construction", "quadrics", crit_pqr),
]

MODULES = sorted({c.module for c in CRITERIA})


def select(only) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    wanted = set()
    for tok in only:
        tok = str(tok).strip()
        if tok.isdigit():
            wanted.add(int(tok))
        elif tok in MODULES:
            wanted.update(c.number for c in CRITERIA if c.module == tok)
        else:
            raise ValueError(f"unknown criterion or module {tok!r}")
    return [c for c in CRITERIA if c.number in wanted]


def run_criterion(crit: Criterion, cfg: SuiteConfig) -> list[Check]:
    checks = crit.run(cfg)
    for c in checks:
        c.criterion = crit.number
    return checks


def run_suite(cfg: SuiteConfig, timing: bool = False) -> Report:
    rep = Report("suite", {"seed": cfg.seed, "only": list(cfg.only)})
    times = {}
    summary = []
    for crit in select(cfg.only):
        t0 = time.perf_counter()
        checks = run_criterion(crit, cfg)
        times[str(crit.number)] = round(time.perf_counter() - t0, 3)
        rep.extend(checks)
        failed = any(c.failed for c in checks)
        flagged = any(c.status == "discrepancy-flagged" for c in checks)
        summary.append({"criterion": crit.number, "name": crit.name, "status": "fail" if failed else "pass", "flagged": flagged})
    rep.data["criteria"] = summary
    if timing:
        rep.timing = {"per_criterion_seconds": times, "wall_seconds": round(sum(times.values()), 3)}
    return rep


__all__ = [
    "CRITERIA",
    "Criterion",
    "DEFAULT_SEED",
    "MODULES",
    "SuiteConfig",
    "collinear_example",
    "curve_from_roots",
    "run_criterion",
    "run_suite",
    "select",
    "sub_rng",
    "sub_seed",
]
