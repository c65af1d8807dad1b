"""Hyperelliptic curves y^2 = f(x): points, divisors, valuations, L(D).

Divisors may be supported on points that are not defined over the ground
field.  Such support is carried by *clusters*: a squarefree polynomial q(x)
together with a choice of sheet, namely

* ``W``  the Weierstrass points over the roots of q (q divides f),
* ``F``  both points over every root of q (full fibres),
* ``B``  the points (alpha, r(alpha)) for the roots alpha of q, with
  r(x)^2 = f(x) mod q.

A rational point is a cluster with a linear q.  Divisors are kept in a
canonical form (one cluster per coefficient and kind), so two equal divisors
always compare equal.

Local parameters: x - x0 at ordinary affine points, y at Weierstrass points,
1/x at the two points at infinity of an even-degree model and a square root
of 1/x at the single point at infinity of an odd-degree model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exactalg import (
    Poly,
    PowerSeries,
    coprime_base,
    crt_pair,
    exact_sqrt,
    kernel_basis,
    rational_roots,
    series_sqrt,
    squarefree,
    squarefree_decomposition,
    to_scalar,
)
from .exactalg.scalars import context_of

X = Poly.gen("x")
ONE = Poly([1])


class SingularModel(ValueError):
    pass


class CurveError(ValueError):
    pass


def hyperelliptic_genus(f: Poly) -> int:
    """Genus of the smooth model of y^2 = f(x) for squarefree f."""
    if f.degree() < 1 or not squarefree(f):
        raise SingularModel("singular model: f must be squarefree of positive degree")
    return max((f.degree() - 1) // 2, 0)


@dataclass(frozen=True)
class CurvePoint:
    """A point of the curve defined over the ground field."""

    kind: str  # "affine", "weierstrass", "inf+", "inf-", "inf"
    x: object = None
    y: object = None
    index: int | None = None

    def __repr__(self):
        if self.kind == "affine":
            return f"({self.x}, {self.y})"
        if self.kind == "weierstrass":
            return f"a{self.index + 1}"
        return {"inf+": "inf+", "inf-": "inf-", "inf": "inf"}[self.kind]

    @property
    def is_infinite(self) -> bool:
        return self.kind.startswith("inf")


@dataclass(frozen=True)
class Cluster:
    """A Galois-stable set of affine points (see module docstring)."""

    kind: str  # "W", "F", "B"
    q: Poly
    r: Poly | None = None

    def degree(self) -> int:
        return 2 * self.q.degree() if self.kind == "F" else self.q.degree()

    def __repr__(self):
        if self.kind == "W":
            return f"W[{self.q}]"
        if self.kind == "F":
            return f"F[{self.q}]"
        return f"B[{self.q} | y = {self.r}]"


class HyperellipticCurve:
    """The curve y^2 = f(x) with f squarefree.

    ``weierstrass_roots`` lists the roots of f in the ground field, in the
    order used for Weierstrass indices.
    """

    def __init__(self, f: Poly, weierstrass_roots=None):
        if f.var != "x":
            f = Poly(f.coeffs, "x")
        self.f = f
        self.genus = hyperelliptic_genus(f)
        self.even = f.degree() % 2 == 0
        self.ctx = context_of(f.coeffs)
        if weierstrass_roots is None:
            if self.ctx is None:
                weierstrass_roots = rational_roots(f)
            else:
                weierstrass_roots = []
        roots = [to_scalar(r) for r in weierstrass_roots]
        for r in roots:
            if f(r) != 0:
                raise CurveError(f"{r} is not a root of f")
        if len(set(map(repr, roots))) != len(roots):
            raise CurveError("repeated Weierstrass root")
        self.weierstrass_roots = tuple(roots)
        self.infinity_model = "TwoPoints" if self.even else "OnePoint"
        self.sqrt_lc = exact_sqrt(f.lc(), self.ctx) if self.even else None

    @classmethod
    def from_roots(cls, roots, lc=1):
        roots = [to_scalar(r) for r in roots]
        return cls(Poly.from_roots(roots) * to_scalar(lc), roots)

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.f}, g={self.genus})"

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and other.f == self.f and other.weierstrass_roots == self.weierstrass_roots

    def __hash__(self):
        return hash((self.f, self.weierstrass_roots))

    # points
    def point(self, x0, y0) -> CurvePoint:
        x0, y0 = to_scalar(x0), to_scalar(y0)
        if y0 * y0 != self.f(x0):
            raise CurveError(f"({x0}, {y0}) is not on the curve")
        if y0 == 0:
            return self.weierstrass(self.weierstrass_roots.index(x0))
        return CurvePoint("affine", x0, y0)

    def weierstrass(self, i: int) -> CurvePoint:
        if not 0 <= i < len(self.weierstrass_roots):
            raise CurveError(f"no Weierstrass point with index {i}")
        return CurvePoint("weierstrass", self.weierstrass_roots[i], to_scalar(0), i)

    @property
    def inf_plus(self) -> CurvePoint:
        if not self.even:
            raise CurveError("odd model has a single point at infinity")
        return CurvePoint("inf+")

    @property
    def inf_minus(self) -> CurvePoint:
        if not self.even:
            raise CurveError("odd model has a single point at infinity")
        return CurvePoint("inf-")

    @property
    def infinity(self) -> CurvePoint:
        if self.even:
            raise CurveError("even model has two points at infinity")
        return CurvePoint("inf")

    def infinite_points(self) -> list[CurvePoint]:
        return [CurvePoint("inf+"), CurvePoint("inf-")] if self.even else [CurvePoint("inf")]

    def sigma(self, P: CurvePoint) -> CurvePoint:
        """The hyperelliptic involution (x, y) -> (x, -y)."""
        if P.kind == "affine":
            return CurvePoint("affine", P.x, -P.y)
        if P.kind == "inf+":
            return CurvePoint("inf-")
        if P.kind == "inf-":
            return CurvePoint("inf+")
        return P

    def points_over(self, x0) -> list[CurvePoint]:
        x0 = to_scalar(x0)
        v = self.f(x0)
        if v == 0:
            return [self.point(x0, 0)] if x0 in self.weierstrass_roots else []
        s = exact_sqrt(v, self.ctx)
        if s is None:
            return []
        return [CurvePoint("affine", x0, s), CurvePoint("affine", x0, -s)]

    def search_points(self, height: int) -> list[CurvePoint]:
        """Affine non-Weierstrass points with x = a/b, |a| <= height*b, b <= height."""
        from math import gcd

        out = []
        seen = set()
        for b in range(1, height + 1):
            for a in range(-height * b, height * b + 1):
                if gcd(a, b) != 1:
                    continue
                x0 = Fraction(a, b)
                if x0 in seen:
                    continue
                seen.add(x0)
                out.extend(P for P in self.points_over(x0) if P.kind == "affine")
        return out

    # function field
    @property
    def x(self) -> "FnElt":
        return FnElt(self, X)

    @property
    def y(self) -> "FnElt":
        return FnElt(self, Poly([]), ONE)

    def const(self, c) -> "FnElt":
        return FnElt(self, Poly([c]))

    def fn(self, a, b=None, c=None) -> "FnElt":
        def wrap(p):
            if p is None:
                return None
            return p if isinstance(p, Poly) else Poly([p])

        return FnElt(self, wrap(a), wrap(b), wrap(c))

    def _infinity_series(self, precision: int) -> PowerSeries:
        """t^(g+1) y at inf+ in the parameter t = 1/x."""
        if self.sqrt_lc is None:
            raise CurveError("points at infinity are not defined over the ground field")
        g = self.genus
        ft = self.f.reverse(2 * g + 2)
        return series_sqrt(PowerSeries(ft.coeffs, max(precision, 1)), self.sqrt_lc)


# ---------------------------------------------------------------------------
# function field elements


class FnElt:
    """(a(x) + b(x) y) / c(x) in the function field of a hyperelliptic curve."""

    __slots__ = ("curve", "a", "b", "c")

    def __init__(self, curve: HyperellipticCurve, a: Poly, b: Poly | None = None, c: Poly | None = None):
        self.curve = curve
        a = a if a is not None else Poly([])
        b = b if b is not None else Poly([])
        c = c if c is not None else ONE
        if c.is_zero():
            raise ZeroDivisionError("zero denominator")
        if a.is_zero() and b.is_zero():
            self.a, self.b, self.c = Poly([]), Poly([]), ONE
            return
        g = a.gcd(b).gcd(c)
        if g.degree() > 0:
            a, b, c = a.exact_div(g), b.exact_div(g), c.exact_div(g)
        lc = c.lc()
        if lc != 1:
            inv = 1 / lc
            a, b, c = a * inv, b * inv, c * inv
        self.a, self.b, self.c = a, b, c

    def _coerce(self, other):
        if isinstance(other, FnElt):
            if other.curve is not self.curve and other.curve != self.curve:
                raise CurveError("function-field elements on different curves")
            return other
        if isinstance(other, Poly):
            return FnElt(self.curve, other)
        return FnElt(self.curve, Poly([other]))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        return FnElt(self.curve, self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c)

    __radd__ = __add__

    def __neg__(self):
        return FnElt(self.curve, -self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        f = self.curve.f
        return FnElt(
            self.curve,
            self.a * o.a + self.b * o.b * f,
            self.a * o.b + self.b * o.a,
            self.c * o.c,
        )

    __rmul__ = __mul__

    def norm_poly(self) -> Poly:
        """a^2 - b^2 f (the numerator norm)."""
        return self.a * self.a - self.b * self.b * self.curve.f

    def inverse(self) -> "FnElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        n = self.norm_poly()
        return FnElt(self.curve, self.c * self.a, -(self.c * self.b), n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = FnElt(self.curve, ONE)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sigma(self) -> "FnElt":
        return FnElt(self.curve, self.a, -self.b, self.c)

    def __eq__(self, other):
        if not isinstance(other, (FnElt, Poly, int, Fraction)) and not hasattr(other, "ctx"):
            return NotImplemented
        o = self._coerce(other)
        return self.a * o.c == o.a * self.c and self.b * o.c == o.b * self.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def is_constant(self) -> bool:
        return self.b.is_zero() and self.a.degree() <= 0 and self.c.degree() == 0

    def constant_value(self):
        if not self.is_constant():
            raise CurveError("not a constant function")
        return self.a[0] / self.c[0]

    def __call__(self, P: CurvePoint):
        if P.kind not in ("affine", "weierstrass"):
            raise CurveError("evaluation at infinity is not supported")
        cv = self.c(P.x)
        if cv == 0:
            raise ZeroDivisionError("pole at the evaluation point")
        return (self.a(P.x) + self.b(P.x) * P.y) / cv

    def __repr__(self):
        num = []
        if not self.a.is_zero():
            num.append(f"({self.a})")
        if not self.b.is_zero():
            num.append(f"({self.b})*y")
        s = " + ".join(num) or "0"
        if self.c.degree() > 0:
            s = f"[{s}] / ({self.c})"
        return s


# ---------------------------------------------------------------------------
# divisors


def _sqrt_mod(f: Poly, q: Poly, r: Poly, m: int) -> Poly:
    """R with R^2 = f mod q^m and R = r mod q (Hensel lifting)."""
    R = r % q
    prec = 1
    while prec < m:
        prec = min(2 * prec, m)
        mod = q**prec
        R = ((R + (f % mod) * R.inverse_mod(mod)) * Fraction(1, 2)) % mod
    return R


def _point_to_cluster(curve: HyperellipticCurve, P: CurvePoint) -> Cluster:
    if P.kind == "affine":
        if P.y * P.y != curve.f(P.x):
            raise CurveError(f"{P} is not on the curve")
        return Cluster("B", Poly([-P.x, 1]), Poly([P.y]))
    if P.kind == "weierstrass":
        return Cluster("W", Poly([-P.x, 1]))
    raise CurveError("points at infinity are not clusters")


def _validate_cluster(curve: HyperellipticCurve, cl: Cluster) -> Cluster:
    q = cl.q.monic()
    if q.degree() < 1 or not squarefree(q):
        raise CurveError("cluster polynomial must be squarefree of positive degree")
    f = curve.f
    if cl.kind == "W":
        if not (f % q).is_zero():
            raise CurveError("Weierstrass cluster polynomial must divide f")
        return Cluster("W", q)
    if q.gcd(f).degree() > 0:
        raise CurveError("cluster meets the branch locus")
    if cl.kind == "F":
        return Cluster("F", q)
    r = cl.r % q
    if not ((r * r - f) % q).is_zero():
        raise CurveError("sheet polynomial does not satisfy r^2 = f mod q")
    return Cluster("B", q, r)


def _refine(curve: HyperellipticCurve, raw):
    """Split raw (cluster, n) terms into coprime pieces with per-sheet coefficients.

    Returns a list of tuples (kind, p, r, n_plus, n_minus); kind is "W", "F"
    (n_plus == n_minus, no sheet polynomial) or "B" (sheets r and -r).
    """
    wterms = [(cl, n) for cl, n in raw if cl.kind == "W"]
    oterms = [(cl, n) for cl, n in raw if cl.kind != "W"]
    pieces = []
    if wterms:
        for p in coprime_base([cl.q for cl, _ in wterms]):
            n = sum(k for cl, k in wterms if (cl.q % p).is_zero())
            if n:
                pieces.append(("W", p, None, n, n))
    if not oterms:
        return pieces
    work = []
    for p in coprime_base([cl.q for cl, _ in oterms]):
        contrib = [(cl.kind, None if cl.r is None else cl.r % p, n) for cl, n in oterms if (cl.q % p).is_zero()]
        work.append((p, contrib))
    while work:
        p, contrib = work.pop()
        contrib = [(k, None if r is None else r % p, n) for k, r, n in contrib]
        nf = sum(n for k, _, n in contrib if k == "F")
        branches = [(r, n) for k, r, n in contrib if k == "B"]
        if not branches:
            if nf:
                pieces.append(("F", p, None, nf, nf))
            continue
        r0 = branches[0][0]
        split = None
        for r, _ in branches[1:]:
            g = p.gcd(r - r0)
            if 0 < g.degree() < p.degree():
                split = g
                break
        if split is not None:
            work.append((split, contrib))
            work.append((p.exact_div(split), contrib))
            continue
        nplus = nminus = nf
        for r, n in branches:
            if ((r - r0) % p).is_zero():
                nplus += n
            elif ((r + r0) % p).is_zero():
                nminus += n
            else:  # pragma: no cover - excluded by the splitting above
                raise CurveError("inconsistent sheets")
        if nplus == 0 and nminus == 0:
            continue
        if nplus == nminus:
            pieces.append(("F", p, None, nplus, nplus))
        else:
            pieces.append(("B", p, r0, nplus, nminus))
    return pieces


def _regroup(pieces):
    """Canonical clusters (one per coefficient and kind) from refined pieces."""
    groups: dict = {}

    def put(n, kind, p, r=None):
        if n == 0:
            return
        groups.setdefault((n, kind), []).append((p, r))

    for kind, p, r, nplus, nminus in pieces:
        if kind == "W":
            put(nplus, "W", p)
        elif kind == "F":
            put(nplus, "F", p)
        else:
            put(nplus, "B", p, r)
            put(nminus, "B", p, -r)
    out = []
    for (n, kind), items in groups.items():
        q = ONE
        r = Poly([])
        for p, rr in items:
            if kind == "B":
                r = crt_pair(r, q, rr, p) if q.degree() > 0 else rr % p
            q = q * p
        out.append((Cluster(kind, q.monic(), r if kind == "B" else None), n))
    out.sort(key=lambda t: (t[1], t[0].kind, repr(t[0].q.coeffs), repr(t[0].r)))
    return tuple(out)


class Divisor:
    """A divisor on a hyperelliptic curve, kept in canonical form.

    ``terms`` maps :class:`CurvePoint` or :class:`Cluster` to integers.
    """

    __slots__ = ("curve", "clusters", "inf", "__dict__")

    def __init__(self, curve: HyperellipticCurve, terms=None, *, _canonical=None):
        self.curve = curve
        if _canonical is not None:
            self.clusters, self.inf = _canonical
            return
        raw = []
        inf = {k: 0 for k in (("inf+", "inf-") if curve.even else ("inf",))}
        for key, n in (terms or {}).items():
            n = int(n)
            if n == 0:
                continue
            if isinstance(key, CurvePoint):
                if key.is_infinite:
                    if key.kind not in inf:
                        raise CurveError(f"{key.kind} does not exist on this model")
                    inf[key.kind] += n
                    continue
                key = _point_to_cluster(curve, key)
            raw.append((_validate_cluster(curve, key), n))
        self.clusters = _regroup(_refine(curve, raw))
        self.inf = tuple(sorted(inf.items()))

    @classmethod
    def zero(cls, curve):
        return cls(curve, {})

    def _raw(self):
        return list(self.clusters)

    @cached_property
    def pieces(self):
        return _refine(self.curve, self._raw())

    def _combine(self, other, sign):
        if other.curve != self.curve:
            raise CurveError("divisors on different curves")
        raw = self._raw() + [(cl, sign * n) for cl, n in other.clusters]
        inf = dict(self.inf)
        for k, n in other.inf:
            inf[k] += sign * n
        return Divisor(self.curve, _canonical=(_regroup(_refine(self.curve, raw)), tuple(sorted(inf.items()))))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, k: int):
        k = int(k)
        if k == 0:
            return Divisor.zero(self.curve)
        return Divisor(
            self.curve,
            _canonical=(
                _regroup([(kind, p, r, k * a, k * b) for kind, p, r, a, b in self.pieces]),
                tuple((name, k * n) for name, n in self.inf),
            ),
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.curve == other.curve and self.clusters == other.clusters and self.inf == other.inf

    def __hash__(self):
        return hash((self.clusters, self.inf))

    def degree(self) -> int:
        return sum(n * cl.degree() for cl, n in self.clusters) + sum(n for _, n in self.inf)

    def is_effective(self) -> bool:
        return all(n >= 0 for _, n in self.clusters) and all(n >= 0 for _, n in self.inf)

    def is_zero(self) -> bool:
        return not self.clusters and all(n == 0 for _, n in self.inf)

    def max_multiplicity(self) -> int:
        vals = [n for _, n in self.clusters] + [n for _, n in self.inf if n]
        return max(vals, default=0)

    def inf_coefficient(self, kind: str) -> int:
        return dict(self.inf).get(kind, 0)

    def coefficient(self, P: CurvePoint) -> int:
        if P.is_infinite:
            return self.inf_coefficient(P.kind)
        total = 0
        for cl, n in self.clusters:
            if cl.q(P.x) != 0:
                continue
            if cl.kind == "W" and P.kind == "weierstrass":
                total += n
            elif cl.kind == "F" and P.kind == "affine":
                total += n
            elif cl.kind == "B" and P.kind == "affine" and cl.r(P.x) == P.y:
                total += n
        return total

    def sigma(self) -> "Divisor":
        raw = []
        for cl, n in self.clusters:
            if cl.kind == "B":
                raw.append((Cluster("B", cl.q, (-cl.r) % cl.q), n))
            else:
                raw.append((cl, n))
        inf = dict(self.inf)
        if self.curve.even:
            inf = {"inf+": inf["inf-"], "inf-": inf["inf+"]}
        return Divisor(self.curve, _canonical=(_regroup(_refine(self.curve, raw)), tuple(sorted(inf.items()))))

    def points(self):
        """Expand into (CurvePoint or Cluster, n) pairs, splitting off rational points."""
        out = []
        curve = self.curve
        for cl, n in self.clusters:
            if curve.ctx is not None:
                out.append((cl, n))
                continue
            roots = rational_roots(cl.q)
            rest = cl.q
            for x0 in roots:
                rest = rest.exact_div(Poly([-x0, 1]))
                if cl.kind == "W":
                    out.append((curve.point(x0, 0), n))
                elif cl.kind == "F":
                    for P in curve.points_over(x0) or []:
                        out.append((P, n))
                    if not curve.points_over(x0):
                        out.append((Cluster("F", Poly([-x0, 1])), n))
                else:
                    out.append((CurvePoint("affine", x0, cl.r(x0)), n))
            if rest.degree() > 0:
                r = None if cl.r is None else cl.r % rest
                out.append((Cluster(cl.kind, rest, r), n))
        for name, n in self.inf:
            if n:
                out.append((CurvePoint(name), n))
        return out

    def __repr__(self):
        parts = [f"{n}*{key!r}" for key, n in self.points()]
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def divisor_from_points(curve, points) -> Divisor:
    """Sum of the given points (repetition allowed)."""
    terms: dict = {}
    for P in points:
        terms[P] = terms.get(P, 0) + 1
    return Divisor(curve, terms)


# ---------------------------------------------------------------------------
# valuations and principal divisors


def _poly_divisor_raw(curve: HyperellipticCurve, h: Poly, sign: int):
    """Raw cluster terms and infinity orders of the divisor of h(x)."""
    raw = []
    for p, k in squarefree_decomposition(h):
        w = p.gcd(curve.f)
        if w.degree() > 0:
            raw.append((Cluster("W", w), 2 * k * sign))
        rest = p.exact_div(w)
        if rest.degree() > 0:
            raw.append((Cluster("F", rest.monic()), k * sign))
    d = h.degree()
    if curve.even:
        inf = {"inf+": -d * sign, "inf-": -d * sign}
    else:
        inf = {"inf": -2 * d * sign}
    return raw, inf


def _order(p: Poly, x0) -> float | int:
    return float("inf") if p.is_zero() else p.order_at(x0)


def _valuation_inf_plus(curve: HyperellipticCurve, a: Poly, b: Poly) -> int:
    """Order of a + b*y at inf+ (even model); a + b*y must be nonzero."""
    g = curve.genus
    if b.is_zero():
        return -a.degree()
    top = max(a.degree(), b.degree() + g + 1)
    norm = a * a - b * b * curve.f
    precision = 2 * top - norm.degree() + 1
    Y = curve._infinity_series(precision)
    E = PowerSeries(a.reverse(top).coeffs, precision) + PowerSeries(b.reverse(top - g - 1).coeffs, precision) * Y
    k = E.valuation()
    if k is None:  # pragma: no cover - precision bound is exact
        raise CurveError("valuation exceeded its precision bound")
    return k - top


def valuation(u: FnElt, P: CurvePoint) -> int:
    """Order of vanishing of u at the point P."""
    if u.is_zero():
        raise ValueError("valuation of zero")
    curve = u.curve
    a, b, c = u.a, u.b, u.c
    g = curve.genus
    if P.kind == "weierstrass":
        num = min(2 * _order(a, P.x), 2 * _order(b, P.x) + 1)
        return int(num) - 2 * c.order_at(P.x)
    if P.kind == "affine":
        vc = c.order_at(P.x)
        if b.is_zero():
            return a.order_at(P.x) - vc
        bound = (a * a - b * b * curve.f).order_at(P.x)
        precision = bound + 1
        t_f = PowerSeries(curve.f.shift(P.x).coeffs, precision)
        Y = series_sqrt(t_f, P.y)
        E = PowerSeries(a.shift(P.x).coeffs, precision) + PowerSeries(b.shift(P.x).coeffs, precision) * Y
        k = E.valuation()
        if k is None:  # pragma: no cover - precision bound is exact
            raise CurveError("valuation exceeded its precision bound")
        return k - vc
    if P.kind == "inf":
        if curve.even:
            raise CurveError("even model has two points at infinity")
        va = -2 * a.degree() if not a.is_zero() else float("inf")
        vb = -(2 * b.degree() + 2 * g + 1) if not b.is_zero() else float("inf")
        return int(min(va, vb)) + 2 * c.degree()
    if P.kind in ("inf+", "inf-"):
        if not curve.even:
            raise CurveError("odd model has a single point at infinity")
        bb = b if P.kind == "inf+" else -b
        return _valuation_inf_plus(curve, a, bb) + c.degree()
    raise CurveError(f"unknown point kind {P.kind}")


def divisor_of(u: FnElt) -> Divisor:
    """The principal divisor div(u) = zeros - poles."""
    if u.is_zero():
        raise ValueError("valuation of zero")
    curve = u.curve
    g = curve.genus
    a, b, c = u.a, u.b, u.c
    raw = []
    inf = {k: 0 for k in (("inf+", "inf-") if curve.even else ("inf",))}

    def absorb(terms, infs):
        raw.extend(terms)
        for k, n in infs.items():
            inf[k] += n

    absorb(*_poly_divisor_raw(curve, c, -1))
    if b.is_zero():
        absorb(*_poly_divisor_raw(curve, a, 1))
    else:
        g0 = a.gcd(b)
        absorb(*_poly_divisor_raw(curve, g0, 1))
        a1, b1 = a.exact_div(g0), b.exact_div(g0)
        norm = a1 * a1 - b1 * b1 * curve.f
        w = norm.gcd(curve.f)
        if w.degree() > 0:
            raw.append((Cluster("W", w), 1))
        rest = norm.exact_div(w)
        for h, k in squarefree_decomposition(rest):
            r = (-(a1 % h) * (b1 % h).inverse_mod(h)) % h
            raw.append((Cluster("B", h, r), k))
        if curve.even:
            vp = _valuation_inf_plus(curve, a1, b1)
            inf["inf+"] += vp
            inf["inf-"] += -norm.degree() - vp
        else:
            va = -2 * a1.degree() if not a1.is_zero() else None
            vb = -(2 * b1.degree() + 2 * g + 1)
            inf["inf"] += vb if va is None else min(va, vb)
    return Divisor(curve, _canonical=(_regroup(_refine(curve, raw)), tuple(sorted(inf.items()))))


def differential_divisor_dx(curve: HyperellipticCurve) -> Divisor:
    """div(dx): simple zeros at the Weierstrass points, poles at infinity."""
    raw = [(Cluster("W", curve.f.monic()), 1)]
    if curve.even:
        inf = (("inf+", -2), ("inf-", -2))
    else:
        inf = (("inf", -3),)
    return Divisor(curve, _canonical=(_regroup(_refine(curve, raw)), tuple(sorted(inf))))


def canonical_divisor(curve: HyperellipticCurve) -> Divisor:
    """div(dx/y)."""
    return differential_divisor_dx(curve) - divisor_of(curve.y)


# ---------------------------------------------------------------------------
# Riemann-Roch spaces


def _rows_mod(a_polys, b_polys, Q: Poly):
    """Linear conditions sum u_i a_polys[i] + sum v_j b_polys[j] = 0 mod Q."""
    ra = [p % Q for p in a_polys]
    rb = [p % Q for p in b_polys]
    rows = []
    for k in range(Q.degree()):
        rows.append([p[k] for p in ra] + [p[k] for p in rb])
    return rows


def _powers_mod(n: int, Q: Poly, times: Poly | None = None) -> list[Poly]:
    out = []
    cur = (times if times is not None else ONE) % Q
    for _ in range(n):
        out.append(cur)
        cur = (cur * X) % Q
    return out


def riemann_roch_space(curve: HyperellipticCurve, D: Divisor) -> list[FnElt]:
    """Exact basis of L(D) = {u : div(u) + D >= 0}."""
    g = curve.genus
    pieces = D.pieces
    # denominator from the positive affine part
    c = ONE
    cexp = []
    for kind, p, r, nplus, nminus in pieces:
        if kind == "W":
            k = max(-(-nplus // 2), 0)
        else:
            k = max(nplus, nminus, 0)
        cexp.append(k)
        if k:
            c = c * p**k
    dc = c.degree()
    if curve.even:
        n_inf = [D.inf_coefficient("inf+"), D.inf_coefficient("inf-")]
        top = max(n_inf) + dc
        if top < 0:
            return []
        na, nb = top, top - g - 1
    else:
        top = D.inf_coefficient("inf") + 2 * dc
        if top < 0:
            return []
        na, nb = top // 2, (top - 2 * g - 1) // 2 if top >= 2 * g + 1 else -1
    nA, nB = na + 1, max(nb + 1, 0)
    ncols = nA + nB
    rows = []
    zero_a = [Poly([])] * nA
    zero_b = [Poly([])] * nB
    for (kind, p, r, nplus, nminus), k in zip(pieces, cexp):
        if kind == "W":
            m = 2 * k - nplus
            ea, eb = -(-m // 2), -(-(m - 1) // 2)
            if ea > 0:
                rows += _rows_mod(_powers_mod(nA, p**ea), zero_b, p**ea)
            if eb > 0 and nB:
                rows += _rows_mod(zero_a, _powers_mod(nB, p**eb), p**eb)
        elif kind == "F":
            m = k - nplus
            if m > 0:
                Q = p**m
                rows += _rows_mod(_powers_mod(nA, Q), zero_b, Q)
                if nB:
                    rows += _rows_mod(zero_a, _powers_mod(nB, Q), Q)
        else:
            for sheet, n in ((r, nplus), (-r, nminus)):
                m = k - n
                if m <= 0:
                    continue
                Q = p**m
                R = _sqrt_mod(curve.f, p, sheet, m)
                rows += _rows_mod(_powers_mod(nA, Q), _powers_mod(nB, Q, R), Q)
    if curve.even:
        for sign, n in ((1, n_inf[0]), (-1, n_inf[1])):
            m = top - n - dc
            if m <= 0:
                continue
            Y = curve._infinity_series(m) * sign
            for kk in range(m):
                row = [Fraction(0)] * ncols
                i = top - kk
                if 0 <= i < nA:
                    row[i] = Fraction(1)
                for j in range(nB):
                    idx = kk - (top - g - 1 - j)
                    if 0 <= idx < m:
                        row[nA + j] = row[nA + j] + Y[idx]
                rows.append(row)
    if ncols == 0:
        return []
    basis = kernel_basis(rows, ncols) if rows else kernel_basis([[0] * ncols], ncols)
    return [FnElt(curve, Poly(v[:nA]), Poly(v[nA:]), c) for v in basis]


def h0(curve: HyperellipticCurve, D: Divisor) -> int:
    return len(riemann_roch_space(curve, D))


def in_space(u: FnElt, D: Divisor) -> bool:
    """True iff div(u) + D >= 0 (the zero function always qualifies)."""
    if u.is_zero():
        return True
    return (divisor_of(u) + D).is_effective()


def new_curve(f: Poly, weierstrass_roots=None) -> HyperellipticCurve:
    """Validated constructor: f squarefree of degree >= 5 (genus >= 2)."""
    if f.degree() < 5:
        raise CurveError("new_curve needs deg f >= 5")
    return HyperellipticCurve(f, weierstrass_roots)


__all__ = [
    "Cluster",
    "CurveError",
    "CurvePoint",
    "Divisor",
    "FnElt",
    "HyperellipticCurve",
    "SingularModel",
    "canonical_divisor",
    "differential_divisor_dx",
    "divisor_from_points",
    "divisor_of",
    "h0",
    "hyperelliptic_genus",
    "in_space",
    "new_curve",
    "point_pool",
    "random_divisor",
    "riemann_roch_space",
    "valuation",
]


def point_pool(curve: HyperellipticCurve, height: int = 4) -> list[CurvePoint]:
    """Rational points available as divisor support: affine, Weierstrass, infinite."""
    pool = list(curve.search_points(height))
    pool += [curve.weierstrass(i) for i in range(len(curve.weierstrass_roots))]
    if not curve.even or curve.sqrt_lc is not None:
        pool += curve.infinite_points()
    return pool


def random_divisor(curve: HyperellipticCurve, degree: int, rng, pool=None, npoints: int = 4, spread: int = 2) -> Divisor:
    """A divisor of the given degree supported on random points of ``pool``."""
    pool = pool if pool is not None else point_pool(curve)
    if not pool:
        raise CurveError("no rational points to build divisors from")
    terms: dict = {}
    for _ in range(max(npoints - 1, 0)):
        P = rng.choice(pool)
        terms[P] = terms.get(P, 0) + rng.randint(-spread, spread)
    P = rng.choice(pool)
    terms[P] = terms.get(P, 0) + degree - sum(terms.values())
    return Divisor(curve, terms)
