"""Command-line entry point: ``spinhiggs <command> [options]``.

Options may also come from a plain ``key = value`` file passed with
``--config``; flags given on the command line win.  Exit status is 0 when no
check fails, 1 when one does, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import charclass, quadrics, spectral, suite
from .curve import CurveError, HyperellipticCurve, new_curve, point_pool, random_divisor
from .exactalg import Poly
from .higgs import DecomposableBundle, verify_parity_theorem
from .report import DERIVED, IDENTITY, THEOREM, Check, Report
from .spin import enumerate_thetas, parity_census, theta

RANDOMIZED = {"parity-check", "spectral", "cayley", "gaw-check"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# config handling


def read_config(path: str) -> list[str]:
    """Turn ``key = value`` lines into ``--key=value`` arguments."""
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("_", "-")
            if key == "timing":
                if value.lower() in ("1", "true", "yes", "on"):
                    out.append("--timing")
                continue
            out.append(f"--{key}={value}")
    return out


def fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(s.strip()) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def index_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace("{", "").replace("}", "").split(",") if s.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_curve(args) -> HyperellipticCurve:
    roots = getattr(args, "roots", None)
    coeffs = getattr(args, "coeffs", None)
    if roots and coeffs:
        raise UsageError("give either --roots or --coeffs, not both")
    if coeffs:
        return new_curve(Poly(coeffs))
    if roots:
        return new_curve(Poly.from_roots(roots), roots)
    genus = getattr(args, "genus", None) or 2
    if genus == 2:
        return suite.curve_from_roots(suite.GENUS2_ROOTS)
    if genus == 3:
        return suite.curve_from_roots(suite.GENUS3_ROOTS)
    roots = list(range(-(genus + 1), genus + 1))
    return new_curve(Poly.from_roots(roots), roots)


def curve_inputs(C: HyperellipticCurve) -> dict:
    return {"f": str(C.f), "genus": C.genus, "roots": [str(r) for r in C.weierstrass_roots]}


def pick_theta(C, args, default):
    subset = getattr(args, "theta", None) or default
    return theta(C, subset)


# ---------------------------------------------------------------------------
# commands


def cmd_spin_table(args) -> Report:
    C = build_curve(args)
    g = C.genus
    census = parity_census(C)
    rep = Report("spin-table", curve_inputs(C))
    rep.data["rows"] = census.rows
    rep.add(Check.compare("total = 2^(2g)", 4**g, census.total, DERIVED))
    rep.add(Check.compare("odd count = 2^(g-1)(2^g - 1)", 2 ** (g - 1) * (2**g - 1), census.odd, THEOREM))
    rep.add(Check.compare("even count = 2^(g-1)(2^g + 1)", 2 ** (g - 1) * (2**g + 1), census.even, THEOREM))
    mism = [r["subset"] for r in census.rows if r["h0"] != r["predicted_h0"]]
    rep.add(Check.compare("h0 = (g + 1 - |T|)/2 on every row", [], mism, DERIVED))
    rep.data["jumps"] = [{"subset": th.label, "h0": d} for th, d in census.jumps]
    return rep


def cmd_parity_check(args) -> Report:
    C = build_curve(args)
    pool = point_pool(C, 6)
    thetas = enumerate_thetas(C)
    if args.theta:
        thetas = [pick_theta(C, args, None)]
    rep = Report("parity-check", {**curve_inputs(C), "rank": args.rank, "trials": args.trials, "seed": args.seed, "max_degree": args.max_degree})
    bad = []
    for t in range(args.trials):
        rng = suite.sub_rng(args.seed, "parity-check", t)
        th = rng.choice(thetas)
        Ds = [random_divisor(C, rng.randint(-args.max_degree, args.max_degree), rng, pool) for _ in range(args.rank)]
        r = verify_parity_theorem(DecomposableBundle(C, Ds), th)
        if not r.passed:
            bad.append(r.as_dict())
    rep.add(Check.compare("dim mod 2 matches the parity formula", 0, len(bad), THEOREM, detail={"failures": bad[:5]}))
    return rep


def cmd_spectral(args) -> Report:
    C = build_curve(args)
    n, g = args.rank, C.genus
    thetas = [pick_theta(C, args, None)] if args.theta else enumerate_thetas(C)
    rep = Report("spectral", {**curve_inputs(C), "rank": n, "trials": args.trials, "seed": args.seed})
    draws = []
    disc_bad = rh_bad = 0
    for t in range(args.trials):
        rng = suite.sub_rng(args.seed, "spectral", t)
        th = rng.choice(thetas)
        sd = spectral.random_spectral_data(th, n, rng)
        row = {"theta": th.label, "coefficients": {str(k): str(s.u) for k, s in sd.coeffs.items()}}
        try:
            row["discriminant_degree"] = spectral.discriminant_divisor(sd).degree()
        except spectral.NonReduced:
            row["status"] = "non-reduced"
            draws.append(row)
            continue
        rec = spectral.genus_and_dims(sd)
        row["smooth"] = rec["smooth"]
        row["irreducible"] = spectral.irreducibility(sd)
        if rec["smooth"]:
            row["riemann_hurwitz_genus"] = rec["riemann_hurwitz_genus"]
            rh_bad += rec["riemann_hurwitz_genus"] != spectral.closed_form_genus(n, g)
        disc_bad += row["discriminant_degree"] != n * (n - 1) * (g - 1)
        draws.append(row)
    rep.data["draws"] = draws
    rep.data["dimensions"] = spectral.family_dimensions(n, g)
    rep.add(Check.compare("discriminant degree = n(n-1)(g-1)", 0, disc_bad, THEOREM))
    rep.add(Check.compare("Riemann-Hurwitz genus on smooth draws", 0, rh_bad, THEOREM))
    dims = spectral.family_dimensions(n, g)
    rep.add(Check.compare("prym + base = 1 + (n^2-1)(g-1)", dims["expected_total"], dims["total"], THEOREM))
    return rep


def cmd_prym(args) -> Report:
    rep = Report("prym", {"trials": args.trials, "seed": args.seed})
    if args.trials:
        if args.seed is None:
            raise UsageError("--seed is required with --trials")
        cfg = suite.SuiteConfig(seed=args.seed, prym_trials=args.trials)
        rep.extend(suite.crit_prym(cfg))
        return rep
    C = build_curve(args)
    if C.genus != 2:
        raise UsageError("prym needs a genus-2 curve")
    a = args.a if args.a is not None else Fraction(0)
    rep.inputs.update({**curve_inputs(C), "a": str(a)})
    triple = args.theta or [1, 2, 3]
    if len(triple) == 3:
        split = spectral.prym_split_even(C, triple, a)
        rep.data["even"] = {
            "triple": list(split.subset),
            "complement": list(split.complement),
            "elliptic_1": str(split.elliptic1),
            "elliptic_2": str(split.elliptic2),
            "scales": [str(split.scale1), str(split.scale2)],
        }
        rep.add(Check.compare("(z s_1)^2 proportional to the quartic", True, split.verified, THEOREM))
        rep.add(Check.compare("elliptic factor genera", [1, 1], list(split.genera), THEOREM))
    if args.odd_index:
        curve = spectral.prym_odd(C, args.odd_index, a)
        rep.data["odd"] = {"index": args.odd_index, "curve": str(curve.f)}
        rep.add(Check.compare("odd-case curve genus", 2, curve.genus, THEOREM))
    return rep


def cmd_cayley(args) -> Report:
    C = build_curve(args)
    n = args.rank
    if n % 2:
        raise UsageError("Cayley reduction needs even rank")
    th = pick_theta(C, args, [1]) if args.theta else enumerate_thetas(C)[-1]
    rep = Report("cayley", {**curve_inputs(C), "rank": n, "theta": th.label, "trials": args.trials, "seed": args.seed})
    rows = []
    ok = 0
    rejected = 0
    for t in range(args.trials):
        rng = suite.sub_rng(args.seed, "cayley", t)
        sd = spectral.random_spectral_data(th, n, rng)
        invariant = {k: s.u for k, s in sd.coeffs.items() if k % 2 == 0}
        sd_inv = spectral.SpectralData.from_functions(th, invariant, n)
        cl = spectral.cayley_reduce(sd_inv)
        ok += 1
        rows.append({"classical": str(cl.polynomial()), "differentials": {str(k): str(v) for k, v in cl.differentials.items()}})
        if n >= 4 and any(not sd.c(k).is_zero() for k in range(3, n + 1, 2)):
            try:
                spectral.cayley_reduce(sd)
            except CurveError:
                rejected += 1
    rep.data["reductions"] = rows
    rep.add(Check.compare("P(z) = Q(z^2) for invariant data", args.trials, ok, IDENTITY))
    if n >= 4:
        rep.data["non_invariant_rejected"] = rejected
    return rep


def cmd_grr_verify(args) -> Report:
    rep = Report("grr-verify", {})
    cfg = suite.SuiteConfig()
    rep.extend(suite.crit_pushforward(cfg))
    split = charclass.verify_splitting_identity()
    rep.add(Check.compare("ch(End_0) from c_2 splitting identity", True, split["passed"], IDENTITY))
    rep.extend(suite.crit_class_identities(cfg))
    return rep


def cmd_jumping_count(args) -> Report:
    ring = args.ring or "two-quadrics"
    if ring != "two-quadrics":
        raise UsageError("jumping-count is defined on the two-quadrics ring only")
    rep = Report("jumping-count", {"ring": ring})
    rep.extend(suite.crit_jumping_count(suite.SuiteConfig()))
    r = charclass.jumping_count_two_quadrics()
    rep.data.update({k: r[k] for k in ("ch1_V*", "ch3_V*", "class", "ch1_T", "ch3_T", "class_on_M", "count")})
    return rep


def cmd_koschorke(args) -> Report:
    ks = args.k or [1, 2, 3, 4]
    rep = Report("koschorke", {"k": ks})
    for k in ks:
        r = charclass.koschorke_ch_equivalence(k)
        if r["expected"] is not None:
            rep.add(Check.compare(f"k={k} determinant form in ch", r["expected"], r["determinant_in_ch"], THEOREM))
        else:
            rep.add(Check.compare(f"k={k} only odd ch appear", True, r["only_odd_ch"], DERIVED, detail={"form": r["determinant_in_ch"]}))
    return rep


def cmd_bv_check(args) -> Report:
    if args.mu:
        pencil = quadrics.QuadricPencil(tuple(args.mu))
        rep = Report("bv-check", {"mu": [str(m) for m in pencil.mu]})
        for i in range(1, 7):
            r1 = quadrics.verify_bv_rank_one(pencil, i)
            r2 = quadrics.verify_bv_descends(pencil, i)
            rep.add(Check.compare(f"s_{i} rank one at z_{i} = 0", True, r1["passed"], THEOREM, detail=r1))
            rep.add(Check.compare(f"s_{i} descends", True, r2["passed"], THEOREM, detail=r2))
        return rep
    if args.seed is None:
        raise UsageError("--seed is required for random pencils")
    rep = Report("bv-check", {"trials": args.trials, "seed": args.seed})
    rep.extend(suite.crit_bv(suite.SuiteConfig(seed=args.seed, bv_trials=args.trials)))
    return rep


def cmd_gaw_check(args) -> Report:
    try:
        table = quadrics.load_sign_table(args.sign_table)
    except quadrics.SignTableError as exc:
        raise UsageError(str(exc)) from None
    rep = Report("gaw-check", {"sign_table": args.sign_table or "default", "trials": args.trials, "seed": args.seed})
    deg = quadrics.verify_degeneracy_section(table)
    rep.add(Check.compare("degeneracy substitution p = (q2, -q1, q4, -q3)", True, deg["passed"], THEOREM, detail=deg))
    rng = suite.sub_rng(args.seed, "gaw")
    xs = [Fraction(v) for v in rng.sample(range(-20, 21), 6)]
    samples = []
    for _ in range(args.trials):
        q = [Fraction(rng.randint(-6, 6)) for _ in range(4)]
        if not any(q):
            q[0] = Fraction(1)
        p = [Fraction(rng.randint(-6, 6)) for _ in range(4)]
        k = next(i for i in range(4) if q[i])
        p[k] -= sum(a * b for a, b in zip(p, q)) / q[k]
        samples.append((q, p))
    span = quadrics.span_dimension(table, xs, samples)
    degrees = sorted({quadrics.integrable_map(q, p, table, xs).degree() for q, p in samples})
    rep.data.update({"branch_points": [str(x) for x in xs], "span_dimension": span, "numerator_degrees": degrees})
    if args.sign_table is None:
        rep.add(Check.compare("span of the image is at most 3", True, span <= 3, DERIVED, detail={"span": span}))
    return rep


def parse_points(C, text: str):
    pts = []
    for tok in text.split(","):
        x, y = tok.split(":")
        pts.append(C.point(Fraction(x), Fraction(y)))
    if len(pts) != 3:
        raise UsageError("--points needs exactly three x:y pairs")
    return pts


def cmd_pqr(args) -> Report:
    if args.points is None:
        if args.seed is None:
            raise UsageError("--seed is required for random triples")
        rep = Report("pqr", {"trials": args.trials, "seed": args.seed})
        rep.extend(suite.crit_pqr(suite.SuiteConfig(seed=args.seed, pqr_trials=args.trials)))
        return rep
    C = build_curve(args)
    th = pick_theta(C, args, [1, 2, 3])
    pts = parse_points(C, args.points)
    rep = Report("pqr", {**curve_inputs(C), "theta": th.label, "points": args.points})
    try:
        r = quadrics.pqr_construction(C, th, *pts)
    except quadrics.DegenerateTriple as exc:
        raise UsageError(str(exc)) from None
    if isinstance(r, quadrics.CollinearCase):
        rep.data["case"] = "collinear"
        rep.add(Check.compare("L = K^1/2 on a line", 1, r.h0_L_minus_half_canonical, THEOREM))
        return rep
    rep.data.update({"case": "plane", **r.report})
    rep.add(Check.compare("exact division by the known roots", True, r.remainder_zero, THEOREM))
    rep.add(Check.compare("residual degree", 2, r.residual_degree, THEOREM))
    rep.add(Check.compare("D_c in |L K^1/2|", 1, r.class_h0, THEOREM))
    rep.add(Check.compare("residual matches the divisor's x-projection", True, r.xproj_matches, DERIVED))
    return rep


def cmd_suite(args) -> Report:
    cfg = suite.SuiteConfig(seed=args.seed if args.seed is not None else suite.DEFAULT_SEED)
    for key in ("rr_trials", "parity_trials", "spectral_trials", "prym_trials", "bv_trials", "pqr_trials"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    cfg.only = [tok for chunk in (args.only or []) for tok in chunk.split(",") if tok]
    try:
        suite.select(cfg.only)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return suite.run_suite(cfg, timing=args.timing)


COMMANDS = {
    "spin-table": cmd_spin_table,
    "parity-check": cmd_parity_check,
    "spectral": cmd_spectral,
    "prym": cmd_prym,
    "cayley": cmd_cayley,
    "grr-verify": cmd_grr_verify,
    "jumping-count": cmd_jumping_count,
    "koschorke": cmd_koschorke,
    "bv-check": cmd_bv_check,
    "gaw-check": cmd_gaw_check,
    "pqr": cmd_pqr,
    "suite": cmd_suite,
}


# ---------------------------------------------------------------------------
# parser


def _common(p):
    p.add_argument("--config", help="key = value file; command-line flags override it")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    p.add_argument("--seed", type=int)


def _curve_opts(p):
    p.add_argument("--genus", type=int)
    p.add_argument("--roots", type=fraction_list, help="comma-separated branch points")
    p.add_argument("--coeffs", type=fraction_list, help="coefficients of f, constant term first")
    p.add_argument("--theta", type=index_list, help="1-based Weierstrass indices, e.g. 1,2,3")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinhiggs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spin-table", help="theta characteristics and their h0")
    _common(p)
    _curve_opts(p)

    p = sub.add_parser("parity-check", help="parity of dim H0(End_0 E x K^1/2)")
    _common(p)
    _curve_opts(p)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-degree", type=int, default=3)

    p = sub.add_parser("spectral", help="discriminant and genus of random spectral data")
    _common(p)
    _curve_opts(p)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("prym", help="genus-2 Prym descriptions")
    _common(p)
    _curve_opts(p)
    p.add_argument("--a", type=Fraction)
    p.add_argument("--odd-index", type=int)
    p.add_argument("--trials", type=int)

    p = sub.add_parser("cayley", help="reduce involution-invariant spectral data")
    _common(p)
    _curve_opts(p)
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--trials", type=int, default=5)

    p = sub.add_parser("grr-verify", help="pushforward and class identities")
    _common(p)

    p = sub.add_parser("jumping-count", help="count of jumping points on two quadrics")
    _common(p)
    p.add_argument("--ring", default="two-quadrics")

    p = sub.add_parser("koschorke", help="determinantal forms versus ch forms")
    _common(p)
    p.add_argument("--k", type=index_list)

    p = sub.add_parser("bv-check", help="symmetric tensors on an intersection of quadrics")
    _common(p)
    p.add_argument("--mu", type=fraction_list)
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("gaw-check", help="sign table and quadratic-differential map")
    _common(p)
    p.add_argument("--sign-table")
    p.add_argument("--trials", type=int, default=12)

    p = sub.add_parser("pqr", help="Higgs field from three points in P^3")
    _common(p)
    _curve_opts(p)
    p.add_argument("--points", help="x:y,x:y,x:y")
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("suite", help="run the acceptance matrix")
    _common(p)
    p.add_argument("--only", action="append", help="criterion numbers or module names, comma-separated")
    for key in ("rr", "parity", "spectral", "prym", "bv", "pqr"):
        p.add_argument(f"--{key}-trials", type=int)
    return parser


def _split_config(argv: list[str]) -> list[str]:
    """Expand --config FILE into arguments placed before the explicit flags."""
    if not argv or argv[0].startswith("-"):
        return argv
    cmd, rest = argv[0], argv[1:]
    cfg_path = None
    kept = []
    i = 0
    while i < len(rest):
        a = rest[i]
        if a == "--config" and i + 1 < len(rest):
            cfg_path = rest[i + 1]
            i += 2
            continue
        if a.startswith("--config="):
            cfg_path = a.split("=", 1)[1]
            i += 1
            continue
        kept.append(a)
        i += 1
    if cfg_path is None:
        return argv
    return [cmd] + read_config(cfg_path) + kept


def run(argv: list[str] | None = None):
    """Parse, dispatch and render.

    Returns (report, exit code, rendered text, parsed args); report and args
    are None on usage errors, in which case the text is the error message.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _split_config(argv)
    except (OSError, UsageError) as exc:
        return None, 2, f"spinhiggs: {exc}\n", None
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, 2 if exc.code else 0, "", None
    if args.command in RANDOMIZED and args.seed is None:
        return None, 2, f"spinhiggs {args.command}: --seed is required\n", args
    t0 = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args)
    except (UsageError, CurveError, ValueError) as exc:
        return None, 2, f"spinhiggs {args.command}: {exc}\n", args
    if args.timing and rep.timing is None:
        rep.timing = {"wall_seconds": round(time.perf_counter() - t0, 3)}
    return rep, rep.exit_code, rep.render(args.format), args


def main(argv: list[str] | None = None) -> int:
    rep, code, text, args = run(argv)
    if rep is None:
        sys.stderr.write(text)
    elif args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
