"""Spectral curves z^n + c_2 z^(n-2) + ... + c_n = 0 in the total space of K^{1/2}.

The coefficients c_k are sections of K^{k/2}, stored as functions in
L(k e_T).  The discriminant in z is then a section of K^{n(n-1)/2}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import (
    CurveError,
    Divisor,
    FnElt,
    HyperellipticCurve,
    divisor_of,
    hyperelliptic_genus,
    in_space,
    new_curve,
    riemann_roch_space,
)
from .exactalg import Poly, discriminant, rational_roots
from .higgs import ConsistencyError, SpectralData
from .spin import ThetaCharacteristic

SMOOTH = "Smooth"
POSSIBLY_SINGULAR = "PossiblySingular"


class NonReduced(ValueError):
    pass


def spectral_polynomial(sd: SpectralData) -> Poly:
    """z^n + c_2 z^(n-2) + ... + c_n with function-field coefficients."""
    C = sd.curve
    coeffs = [C.const(0)] * (sd.n + 1)
    coeffs[sd.n] = C.const(1)
    for k in range(2, sd.n + 1):
        coeffs[sd.n - k] = sd.c(k)
    return Poly(coeffs, "z")


def discriminant_function(sd: SpectralData) -> FnElt:
    d = discriminant(spectral_polynomial(sd))
    if not isinstance(d, FnElt):
        d = sd.curve.const(d)
    return d


def discriminant_divisor(sd: SpectralData) -> Divisor:
    """Zero divisor of the discriminant as a section of K^{n(n-1)/2}."""
    d = discriminant_function(sd)
    if d.is_zero():
        raise NonReduced("non-reduced spectral curve")
    n = sd.n
    out = divisor_of(d) + (n * (n - 1)) * sd.theta.divisor
    if not out.is_effective():
        raise ConsistencyError("discriminant is not a holomorphic section")
    return out


def is_smooth(sd: SpectralData) -> str:
    if sd.n == 2:
        c2 = sd.c(2)
        if c2.is_zero():
            raise NonReduced("non-reduced spectral curve")
        zeros = divisor_of(c2) + 2 * sd.theta.divisor
        return SMOOTH if zeros.max_multiplicity() <= 1 else POSSIBLY_SINGULAR
    disc = discriminant_divisor(sd)
    return SMOOTH if disc.max_multiplicity() <= 1 else POSSIBLY_SINGULAR


def closed_form_genus(n: int, g: int) -> int:
    return n * (n + 1) * (g - 1) // 2 + 1


def family_dimensions(n: int, g: int) -> dict:
    prym = (n * (n + 1) // 2 - 1) * (g - 1)
    base = 1 + (g - 1) * n * (n - 1) // 2
    return {
        "n": n,
        "g": g,
        "spectral_genus": closed_form_genus(n, g),
        "prym_dim": prym,
        "base_dim": base,
        "total": prym + base,
        "expected_total": 1 + (n * n - 1) * (g - 1),
    }


def base_dimension_from_sections(theta: ThetaCharacteristic, n: int) -> int:
    """dim of the coefficient space: sum over k = 2..n of h0(K^{k/2}), computed."""
    C = theta.curve
    return sum(len(riemann_roch_space(C, k * theta.divisor)) for k in range(2, n + 1))


def genus_and_dims(data, g: int | None = None) -> dict:
    """Spectral genus and family dimensions, from SpectralData or from (n, g).

    For smooth data the genus also comes from Riemann-Hurwitz with the
    discriminant as ramification divisor, and must agree with the closed form.
    """
    if isinstance(data, SpectralData):
        n, g = data.n, data.curve.genus
        rec = family_dimensions(n, g)
        if is_smooth(data) == SMOOTH:
            ram = discriminant_divisor(data).degree()
            two_gs_minus_2 = n * (2 * g - 2) + ram
            if two_gs_minus_2 % 2:
                raise ConsistencyError("odd Riemann-Hurwitz total")
            g_rh = two_gs_minus_2 // 2 + 1
            rec["ramification_degree"] = ram
            rec["riemann_hurwitz_genus"] = g_rh
            if g_rh != rec["spectral_genus"]:
                raise ConsistencyError("Riemann-Hurwitz genus disagrees with the closed form")
            rec["smooth"] = True
        else:
            rec["smooth"] = False
        return rec
    n = int(data)
    if g is None:
        raise ValueError("genus required")
    return family_dimensions(n, g)


# ---------------------------------------------------------------------------
# Cayley reduction


@dataclass
class ClassicalSpectral:
    """y^m + a_2 y^(m-1) + ... + a_{2m}, a_{2i} a section of K^i."""

    m: int
    theta: ThetaCharacteristic
    coeffs: dict  # i -> FnElt in L(i * 2e_T), coefficient of y^(m-i)
    differentials: dict = field(default_factory=dict)  # i -> h with a_{2i} = h (dx/y)^i

    def polynomial(self) -> Poly:
        C = self.theta.curve
        cs = [C.const(0)] * (self.m + 1)
        cs[self.m] = C.const(1)
        for i, u in self.coeffs.items():
            cs[self.m - i] = u
        return Poly(cs, "y")


def cayley_reduce(sd: SpectralData) -> ClassicalSpectral:
    n = sd.n
    for k in range(1, n + 1, 2):
        if not sd.c(k).is_zero():
            raise CurveError("not involution-invariant")
    if n % 2:
        raise CurveError("not involution-invariant")
    m = n // 2
    coeffs = {}
    diffs = {}
    two_e = 2 * sd.theta.divisor
    for i in range(1, m + 1):
        u = sd.c(2 * i)
        if not in_space(u, i * two_e):
            raise ConsistencyError(f"a_{2 * i} is not a section of K^{i}")
        coeffs[i] = u
        diffs[i] = u * sd.theta.phi**i
    out = ClassicalSpectral(m, sd.theta, coeffs, diffs)
    # substitution check: P(z) == Q(z^2)
    Q = out.polynomial()
    C = sd.curve
    sub = [C.const(0)] * (2 * m + 1)
    for k, c in enumerate(Q.coeffs):
        sub[2 * k] = c
    if Poly(sub, "z") != spectral_polynomial(sd):
        raise ConsistencyError("Cayley substitution identity failed")
    return out


# ---------------------------------------------------------------------------
# irreducibility for small rank


def _coefficient_rows(funcs):
    """Put FnElts over a common denominator and return their (a, b) coefficient lists."""
    den = funcs[0].c
    for u in funcs[1:]:
        den = den * u.c.exact_div(den.gcd(u.c))
    out = []
    for u in funcs:
        s = den.exact_div(u.c)
        out.append((u.a * s, u.b * s))
    return out


def _scalar_roots(coeff_funcs) -> list:
    """Rational t with sum_k coeff_funcs[k] t^k == 0 identically."""
    pairs = _coefficient_rows(coeff_funcs)
    da = max((a.degree() for a, _ in pairs), default=-1)
    db = max((b.degree() for _, b in pairs), default=-1)
    g = None
    for comp in (0, 1):
        for i in range(max(da, db) + 1):
            p = Poly([pair[comp][i] for pair in pairs], "t")
            if p.is_zero():
                continue
            g = p if g is None else g.gcd(p)
    if g is None:
        return None  # identically zero in t
    if g.degree() < 1:
        return []
    return rational_roots(g)


def irreducibility(sd: SpectralData):
    """True/False for n = 2, 3 when h0(e_T) <= 1; None when not decided."""
    C = sd.curve
    basis = riemann_roch_space(C, sd.theta.divisor)
    if sd.n not in (2, 3) or len(basis) > 1:
        return None
    if sd.n == 2:
        c2 = sd.c(2)
        if not basis:
            return not c2.is_zero()
        b = basis[0]
        roots = _scalar_roots([c2, C.const(0), b * b])
        return roots is not None and not roots
    c2, c3 = sd.c(2), sd.c(3)
    if not basis:
        return not c3.is_zero()
    b = basis[0]
    roots = _scalar_roots([c3, c2 * b, C.const(0), b * b * b])
    return roots is not None and not roots


# ---------------------------------------------------------------------------
# genus-2 Prym descriptions


@dataclass
class PrymSplit:
    a: Fraction
    subset: tuple
    complement: tuple
    elliptic1: Poly
    elliptic2: Poly
    scale1: object
    scale2: object
    verified: bool
    genera: tuple


def _branch_product(C: HyperellipticCurve, idx) -> Poly:
    return Poly.from_roots([C.weierstrass_roots[i] for i in idx])


def _square_section(C, th, idx):
    """u spanning L(3e_T - sum_{i in idx} a_i), and lambda with u^2 phi^3 = lambda * g."""
    D = 3 * th.divisor - Divisor(C, {C.weierstrass(i): 1 for i in idx})
    basis = riemann_roch_space(C, D)
    if len(basis) != 1:
        raise ConsistencyError("expected a unique section with the given zeros")
    u = basis[0]
    g = _branch_product(C, idx)
    ratio = (u * u * th.phi**3) / C.fn(g)
    if not ratio.is_constant():
        raise ConsistencyError("s^2 is not proportional to the branch product")
    return u, ratio.constant_value()


def prym_split_even(C: HyperellipticCurve, subset_one_based, a) -> PrymSplit:
    """Elliptic factors of the Prym for c = (x - a) dx/y and an even theta.

    ``subset_one_based`` is the triple {x_1, x_2, x_3}; the complementary
    triple gives the second factor.
    """
    from .spin import ThetaCharacteristic as Theta

    if C.genus != 2:
        raise CurveError("genus 2 required")
    idx = tuple(sorted(i - 1 for i in subset_one_based))
    if len(idx) != 3:
        raise CurveError("even characteristic required")
    th = Theta(C, idx)
    if th.h0 % 2:
        raise CurveError("even characteristic required")
    a = Fraction(a)
    comp = tuple(i for i in range(6) if i not in idx)
    xa = Poly([-a, 1])
    uc = C.fn(xa) / th.phi  # c = (x - a) dx/y as a section of K
    if not in_space(uc, 2 * th.divisor):
        raise ConsistencyError("c is not a section of K")
    ok = True
    scales = []
    quartics = []
    for part in (idx, comp):
        u, lam = _square_section(C, th, part)
        scales.append(lam)
        g = _branch_product(C, part)
        s_sq = C.fn(g) / th.phi**3  # s^2 defined as g (dx/y)^3
        lhs = uc * s_sq * th.phi**4
        quartic = xa * g
        ok = ok and lhs == C.fn(quartic) and u * u == s_sq * lam
        quartics.append(quartic)
    genera = tuple(hyperelliptic_genus(q) for q in quartics)
    return PrymSplit(a, tuple(i + 1 for i in idx), tuple(i + 1 for i in comp), quartics[0], quartics[1], scales[0], scales[1], ok, genera)


def prym_odd(C: HyperellipticCurve, index_one_based: int, a) -> HyperellipticCurve:
    """The genus-2 curve y^2 = (x - a) prod_{j != i} (x - x_j) for c = (x - a) dx/y."""
    from .spin import ThetaCharacteristic as Theta

    if C.genus != 2:
        raise CurveError("genus 2 required")
    i = index_one_based - 1
    th = Theta(C, (i,))
    if th.h0 % 2 == 0:
        raise CurveError("odd characteristic required")
    a = Fraction(a)
    if a in C.weierstrass_roots:
        raise CurveError("a must avoid the branch points")
    roots = [a] + [r for j, r in enumerate(C.weierstrass_roots) if j != i]
    return new_curve(Poly.from_roots(roots), roots)


def random_spectral_data(theta: ThetaCharacteristic, n: int, rng, spread: int = 3) -> SpectralData:
    """c_k = random integer combination of a basis of L(k e_T), k = 2..n."""
    C = theta.curve
    funcs = {}
    for k in range(2, n + 1):
        u = C.const(0)
        for b in riemann_roch_space(C, k * theta.divisor):
            u = u + b * rng.randint(-spread, spread)
        funcs[k] = u
    return SpectralData.from_functions(theta, funcs, n)


__all__ = [
    "ClassicalSpectral",
    "random_spectral_data",
    "NonReduced",
    "POSSIBLY_SINGULAR",
    "PrymSplit",
    "SMOOTH",
    "base_dimension_from_sections",
    "cayley_reduce",
    "closed_form_genus",
    "discriminant_divisor",
    "discriminant_function",
    "family_dimensions",
    "genus_and_dims",
    "irreducibility",
    "is_smooth",
    "prym_odd",
    "prym_split_even",
    "spectral_polynomial",
]
