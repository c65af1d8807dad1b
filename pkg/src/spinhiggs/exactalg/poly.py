"""Dense univariate polynomials over an exact field.

Coefficients are stored low degree first.  They may be rationals, quadratic
scalars, or any other exact field elements (function-field elements, or even
polynomials for nested use in resultants).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm

from .scalars import to_scalar


def _is_zero(c) -> bool:
    return c == 0


def _exact_div(a, b):
    if isinstance(a, Poly):
        return a.exact_div(b)
    return a / b


class Poly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var: str = "x"):
        cs = [to_scalar(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # construction helpers
    @classmethod
    def const(cls, c, var="x"):
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var="x"):
        return cls([0] * k + [c], var)

    @classmethod
    def from_roots(cls, roots, var="x"):
        p = cls([1], var)
        for r in roots:
            p = p * cls([-to_scalar(r), 1], var)
        return p

    @classmethod
    def gen(cls, var="x"):
        return cls([0, 1], var)

    # basic properties
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def _zero(self):
        return self.coeffs[0] * 0 if self.coeffs else Fraction(0)

    def _wrap(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([other], self.var)

    # arithmetic
    def __add__(self, other):
        o = self._wrap(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[k] + o[k] for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if _is_zero(other):
                return Poly([], self.var)
            return Poly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly([], self.var)
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out, self.var)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1], self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        o = self._wrap(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly([], self.var), self
        q = [None] * (dq + 1)
        lead = o.coeffs[-1]
        for k in range(dq, -1, -1):
            c = _exact_div(rem[k + len(o.coeffs) - 1], lead)
            q[k] = c
            if not _is_zero(c):
                for j, oc in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return Poly(q, self.var), Poly(rem[: len(o.coeffs) - 1], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        if not isinstance(other, Poly):
            return Poly([_exact_div(c, other) for c in self.coeffs], self.var)
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return self.exact_div(other)
        return Poly([c / other for c in self.coeffs], self.var)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if len(self.coeffs) <= 1:
            return self[0] == other
        return False

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # evaluation and calculus
    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        return acc

    def derivative(self):
        return Poly([k * self.coeffs[k] for k in range(1, len(self.coeffs))], self.var)

    def compose(self, other):
        acc = Poly([], self.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, x0):
        """p(x + x0)."""
        return self.compose(Poly([x0, 1], self.var))

    def reverse(self, n: int | None = None):
        """x^n p(1/x) for n >= degree (default n = degree)."""
        if n is None:
            n = self.degree()
        if n < self.degree():
            raise ValueError("reversal length below degree")
        cs = list(self.coeffs) + [self._zero()] * (n + 1 - len(self.coeffs))
        return Poly(list(reversed(cs)), self.var)

    def monic(self):
        if self.is_zero():
            return self
        return self.exact_div(self.lc()) if isinstance(self.lc(), Poly) else self * (1 / self.lc())

    def order_at(self, x0) -> int:
        """Multiplicity of the root x0 (infinite for the zero polynomial)."""
        if self.is_zero():
            raise ValueError("order of the zero polynomial")
        k = 0
        p = self
        lin = Poly([-x0, 1], self.var)
        while True:
            q, r = divmod(p, lin)
            if not r.is_zero():
                return k
            p = q
            k += 1

    def order_mod(self, q) -> int:
        """Largest k with q^k dividing self."""
        if self.is_zero():
            raise ValueError("order of the zero polynomial")
        k = 0
        p = self
        while True:
            a, r = divmod(p, q)
            if not r.is_zero():
                return k
            p = a
            k += 1

    def gcd(self, other):
        a, b = self, self._wrap(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g monic."""
        r0, r1 = self, self._wrap(other)
        s0, s1 = Poly([1], self.var), Poly([], self.var)
        t0, t1 = Poly([], self.var), Poly([1], self.var)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = 1 / r0.lc()
        return r0 * inv, s0 * inv, t0 * inv

    def inverse_mod(self, m):
        g, s, _ = self.xgcd(m)
        if g.degree() != 0:
            raise ZeroDivisionError("polynomial not invertible modulo m")
        return s % m

    def content_free(self):
        """Scale a rational polynomial to a primitive integer polynomial."""
        den = reduce(lcm, (Fraction(c).denominator for c in self.coeffs), 1)
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        from math import gcd as igcd

        g = reduce(igcd, ints, 0) or 1
        if ints and ints[-1] < 0:
            g = -g
        return [i // g for i in ints]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{k}"
            if isinstance(c, Poly) or not isinstance(c, Fraction):
                cs = f"({c})"
                terms.append(f"{cs}*{mono}" if mono else cs)
                continue
            if mono and c == 1:
                terms.append(f"+ {mono}")
            elif mono and c == -1:
                terms.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                a = abs(c)
                terms.append(f"{sign} {a}*{mono}" if mono else f"{sign} {a}")
        s = " ".join(terms)
        if s.startswith("+ "):
            s = s[2:]
        elif s.startswith("- "):
            s = "-" + s[2:]
        return s

    __str__ = __repr__


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime (a_k, k) with p = lc * prod a_k^k."""
    if p.degree() < 1:
        return []
    out = []
    dp = p.derivative()
    a0 = p.gcd(dp)
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    k = 1
    while b.degree() >= 1:
        a = b.gcd(d)
        if a.degree() >= 1:
            out.append((a.monic(), k))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        k += 1
    return out


def squarefree_part(p: Poly) -> Poly:
    out = Poly([1], p.var)
    for a, _ in squarefree_decomposition(p):
        out = out * a
    return out


def squarefree(p: Poly) -> bool:
    """True iff gcd(p, p') is constant."""
    if p.is_zero():
        raise ValueError("squarefree test of the zero polynomial")
    return p.gcd(p.derivative()).degree() == 0


def sylvester_matrix(p: Poly, q: Poly):
    m, n = p.degree(), q.degree()
    zero = p.coeffs[0] * 0
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([zero] * i + pc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qc + [zero] * (size - n - 1 - i))
    return rows


def resultant(p: Poly, q: Poly, var: str | None = None):
    """Sylvester resultant of p and q in their (outer) variable.

    Coefficients may themselves be polynomials in another variable, in which
    case the result is such a polynomial.
    """
    if var is not None and (p.var != var or q.var != var):
        raise ValueError(f"resultant variable {var!r} is not the outer variable")
    if p.is_zero() and q.is_zero():
        raise ValueError("undefined resultant")
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    if p.degree() == 0 and q.degree() == 0:
        return p.coeffs[0] * 0 + 1
    if p.degree() == 0:
        return p.coeffs[0] ** q.degree()
    if q.degree() == 0:
        return q.coeffs[0] ** p.degree()
    from .linalg import det

    return det(sylvester_matrix(p, q))


def discriminant(p: Poly):
    """disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p)."""
    n = p.degree()
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _exact_div(r * sign, p.lc())


def coprime_base(polys) -> list[Poly]:
    """Monic pairwise coprime polynomials whose products recover every input's radical."""
    base: list[Poly] = []
    for p in polys:
        pending = [p.monic()]
        while pending:
            a = pending.pop()
            if a.degree() < 1:
                continue
            for i, b in enumerate(base):
                g = a.gcd(b)
                if g.degree() >= 1:
                    del base[i]
                    pending.append(g)
                    pending.append(a.exact_div(g))
                    pending.append(b.exact_div(g))
                    break
            else:
                base.append(a)
    return base


def crt_pair(r1: Poly, q1: Poly, r2: Poly, q2: Poly) -> Poly:
    """The residue modulo q1*q2 congruent to r1 mod q1 and r2 mod q2."""
    inv = q1.inverse_mod(q2)
    return (r1 + q1 * (((r2 - r1) * inv) % q2)) % (q1 * q2)


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of a rational polynomial, sorted."""
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if p.degree() < 1:
        return []
    if not all(isinstance(c, Fraction) for c in p.coeffs):
        raise TypeError("rational_roots needs rational coefficients")
    import sympy

    x = sympy.Symbol("x")
    ints = p.content_free()
    sp = sympy.Poly([sympy.Integer(c) for c in reversed(ints)], x, domain="QQ")
    roots = sp.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)
