"""Theta characteristics on hyperelliptic curves and sections of K^{m/2}.

A theta characteristic is encoded by a subset T of Weierstrass indices with
|T| = g + 1 (mod 2); its divisor is

    e_T = sum_{i in T} a_i + ((g - 1 - |T|) / 2) * H,     H = inf+ + inf-.

T and its complement give linearly equivalent divisors, so the smaller one
(ties broken lexicographically) is kept.

A section of K^{m/2} is represented by a function u with div(u) + m*e_T >= 0.
Multiplying by phi_T^{m/2} (phi_T spanning L(K - 2e_T)) turns an even power
into an ordinary function multiple of (dx/y)^{m/2}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .curve import (
    CurveError,
    Divisor,
    FnElt,
    HyperellipticCurve,
    canonical_divisor,
    divisor_of,
    h0,
    in_space,
    riemann_roch_space,
)


def _require_enumerable(curve: HyperellipticCurve):
    if not curve.even:
        raise CurveError("even model required")
    if len(curve.weierstrass_roots) != 2 * curve.genus + 2:
        raise CurveError("even model required: all branch points must lie in the ground field")


def canonical_subset(subset, npoints: int) -> tuple[int, ...]:
    s = tuple(sorted(set(subset)))
    comp = tuple(i for i in range(npoints) if i not in s)
    if len(comp) < len(s) or (len(comp) == len(s) and comp < s):
        return comp
    return s


@dataclass(frozen=True, eq=False)
class ThetaCharacteristic:
    curve: HyperellipticCurve
    subset: tuple[int, ...]

    def __post_init__(self):
        _require_enumerable(self.curve)
        g = self.curve.genus
        if (len(self.subset) - g - 1) % 2:
            raise CurveError(f"|T| must be congruent to g+1 mod 2, got {len(self.subset)}")
        object.__setattr__(self, "subset", canonical_subset(self.subset, 2 * g + 2))

    def __eq__(self, other):
        return isinstance(other, ThetaCharacteristic) and other.curve == self.curve and other.subset == self.subset

    def __hash__(self):
        return hash(self.subset)

    @property
    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.subset) + "}"

    def __repr__(self):
        return f"Theta(T={self.label})"

    @cached_property
    def divisor(self) -> Divisor:
        C = self.curve
        g = C.genus
        k = (g - 1 - len(self.subset)) // 2
        terms = {C.weierstrass(i): 1 for i in self.subset}
        terms[C.inf_plus] = k
        terms[C.inf_minus] = terms[C.inf_plus]
        return Divisor(C, terms)

    @property
    def predicted_h0(self) -> int:
        """(g + 1 - |T|)/2 for the canonical representative; a cross-check only."""
        return (self.curve.genus + 1 - len(self.subset)) // 2

    @cached_property
    def h0(self) -> int:
        return h0(self.curve, self.divisor)

    @property
    def parity(self) -> str:
        return "odd" if self.h0 % 2 else "even"

    @cached_property
    def phi(self) -> FnElt:
        """Spanning element of L(K - 2e_T); div(phi) = 2e_T - K."""
        basis = riemann_roch_space(self.curve, canonical_divisor(self.curve) - 2 * self.divisor)
        if len(basis) != 1:
            raise CurveError("2e_T is not canonical")
        return basis[0]

    def is_square_root_of_canonical(self) -> bool:
        return h0(self.curve, canonical_divisor(self.curve) - 2 * self.divisor) == 1

    def translate(self, subset) -> "ThetaCharacteristic":
        """Act by the 2-torsion class indexed by an even-size subset."""
        s = set(subset)
        if len(s) % 2:
            raise CurveError("translation subsets have even size")
        return ThetaCharacteristic(self.curve, tuple(sorted(set(self.subset) ^ s)))


def theta(curve: HyperellipticCurve, subset_one_based) -> ThetaCharacteristic:
    """Convenience constructor from 1-based indices."""
    return ThetaCharacteristic(curve, tuple(i - 1 for i in subset_one_based))


def enumerate_thetas(curve: HyperellipticCurve) -> list[ThetaCharacteristic]:
    _require_enumerable(curve)
    g = curve.genus
    n = 2 * g + 2
    seen = []
    keys = set()
    for size in range(0, g + 2):
        if (size - g - 1) % 2:
            continue
        for s in combinations(range(n), size):
            c = canonical_subset(s, n)
            if c not in keys:
                keys.add(c)
                seen.append(ThetaCharacteristic(curve, c))
    return seen


def h0_theta(curve: HyperellipticCurve, th: ThetaCharacteristic) -> int:
    return h0(curve, th.divisor)


@dataclass
class Census:
    odd: int
    even: int
    jumps: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.odd + self.even


def parity_census(curve: HyperellipticCurve) -> Census:
    rows = []
    odd = even = 0
    jumps = []
    for th in enumerate_thetas(curve):
        d = th.h0
        rows.append(
            {
                "subset": th.label,
                "size": len(th.subset),
                "degree": th.divisor.degree(),
                "h0": d,
                "predicted_h0": th.predicted_h0,
                "parity": th.parity,
            }
        )
        if d % 2:
            odd += 1
        else:
            even += 1
        if d >= 2:
            jumps.append((th, d))
    return Census(odd, even, jumps, rows)


@dataclass(frozen=True, eq=False)
class HalfCanonicalSection:
    """A section of K^{m/2}, stored as u with div(u) + m*e_T >= 0."""

    m: int
    u: FnElt
    theta: ThetaCharacteristic
    check: bool = True

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("power must be nonnegative")
        if self.check and not in_space(self.u, self.m * self.theta.divisor):
            raise CurveError(f"function is not a section of K^({self.m}/2)")

    def __mul__(self, other: "HalfCanonicalSection") -> "HalfCanonicalSection":
        if other.theta != self.theta:
            raise CurveError("sections for different spin structures")
        return HalfCanonicalSection(self.m + other.m, self.u * other.u, self.theta, check=False)

    def __add__(self, other: "HalfCanonicalSection") -> "HalfCanonicalSection":
        if other.m != self.m or other.theta != self.theta:
            raise CurveError("adding sections of different bundles")
        return HalfCanonicalSection(self.m, self.u + other.u, self.theta, check=False)

    def __neg__(self):
        return HalfCanonicalSection(self.m, -self.u, self.theta, check=False)

    def scale(self, c) -> "HalfCanonicalSection":
        return HalfCanonicalSection(self.m, self.u * c, self.theta, check=False)

    def is_zero(self) -> bool:
        return self.u.is_zero()

    def zero_divisor(self) -> Divisor:
        """The effective divisor div(u) + m*e_T."""
        return divisor_of(self.u) + self.m * self.theta.divisor

    def differential_ratio(self) -> FnElt:
        """For even m: the function h with s = h * (dx/y)^(m/2)."""
        if self.m % 2:
            raise CurveError("odd powers have no function normalization")
        return self.u * self.theta.phi ** (self.m // 2)

    def sigma(self) -> "HalfCanonicalSection":
        """Pull back by the involution, acting on the function part only."""
        return HalfCanonicalSection(self.m, self.u.sigma(), self.theta, check=False)

    def __repr__(self):
        return f"Section(K^{self.m}/2, {self.u})"


def half_power_sections(curve: HyperellipticCurve, th: ThetaCharacteristic, m: int) -> list[HalfCanonicalSection]:
    if m < 1:
        raise ValueError("m must be >= 1")
    return [HalfCanonicalSection(m, u, th, check=False) for u in riemann_roch_space(curve, m * th.divisor)]


def sigma_eigensections(curve: HyperellipticCurve, th: ThetaCharacteristic, m: int):
    """Bases of the two eigenspaces of the involution on L(m e_T).

    The involution's lift to K^{1/2} is fixed only up to a global sign, so
    both eigenspaces are returned without preferring either.
    """
    plus, minus = [], []
    for s in half_power_sections(curve, th, m):
        even_part = FnElt(curve, s.u.a, None, s.u.c)
        odd_part = FnElt(curve, None, s.u.b, s.u.c)
        if even_part:
            plus.append(even_part)
        if odd_part:
            minus.append(odd_part)
    return _independent(curve, plus, m, th), _independent(curve, minus, m, th)


def _independent(curve, funcs, m, th):
    """Drop linearly dependent functions (all share one ambient space)."""
    from .exactalg import rank

    if not funcs:
        return []
    c = funcs[0].c
    for u in funcs[1:]:
        c = c * u.c.exact_div(c.gcd(u.c))
    vecs = []
    for u in funcs:
        scale = c.exact_div(u.c)
        a, b = u.a * scale, u.b * scale
        vecs.append((a, b))
    width_a = max(a.degree() for a, _ in vecs) + 1
    width_b = max(b.degree() for _, b in vecs) + 1
    out, rows = [], []
    for u, (a, b) in zip(funcs, vecs):
        row = [a[i] for i in range(width_a)] + [b[i] for i in range(width_b)]
        if rank(rows + [row]) > len(rows):
            rows.append(row)
            out.append(HalfCanonicalSection(m, u, th, check=False))
    return out


__all__ = [
    "Census",
    "HalfCanonicalSection",
    "ThetaCharacteristic",
    "canonical_subset",
    "enumerate_thetas",
    "h0_theta",
    "half_power_sections",
    "parity_census",
    "sigma_eigensections",
    "theta",
]
