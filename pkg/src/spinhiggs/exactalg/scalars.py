"""Exact scalars: rationals and elements of one quadratic field Q(sqrt d).

Rationals are plain :class:`fractions.Fraction`.  Elements of Q(sqrt d) are
:class:`QuadScalar` values tied to a :class:`QuadContext`; arithmetic between
two different contexts raises :class:`ContextMismatch`.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class ContextMismatch(ValueError):
    pass


def _squarefree_part_ok(d: int) -> bool:
    if d in (0, 1):
        return False
    n = abs(d)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadContext:
    """The field Q(sqrt d) for a square-free integer d != 0, 1."""

    __slots__ = ("d",)

    def __init__(self, d: int):
        d = int(d)
        if not _squarefree_part_ok(d):
            raise ValueError(f"d must be square-free and not 0 or 1, got {d}")
        self.d = d

    def __eq__(self, other):
        return isinstance(other, QuadContext) and other.d == self.d

    def __hash__(self):
        return hash(("QuadContext", self.d))

    def __repr__(self):
        return f"QuadContext({self.d})"

    def __call__(self, a, b=0) -> "QuadScalar":
        return QuadScalar(a, b, self)

    @property
    def sqrt_d(self) -> "QuadScalar":
        return QuadScalar(0, 1, self)


class QuadScalar:
    """a + b*sqrt(d) with rational a, b."""

    __slots__ = ("a", "b", "ctx")

    def __init__(self, a, b, ctx: QuadContext):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.ctx = ctx

    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"mixing Q(sqrt {self.ctx.d}) with Q(sqrt {other.ctx.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self.ctx)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a + o.a, self.b + o.b, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.ctx)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a - o.a, self.b - o.b, self.ctx)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.ctx.d
        return QuadScalar(self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.ctx)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.ctx)

    def norm(self) -> Fraction:
        return self.a * self.a - self.ctx.d * self.b * self.b

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadScalar(self.a / n, -self.b / n, self.ctx)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadScalar(1, 0, self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"comparing Q(sqrt {self.ctx.d}) with Q(sqrt {other.ctx.d})")
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.ctx.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"({self.a} + {self.b}*sqrt({self.ctx.d}))"

    __str__ = __repr__


def to_scalar(v):
    """Normalise ints (and numeric strings) to Fraction; leave others alone."""
    if isinstance(v, Fraction) or isinstance(v, QuadScalar):
        return v
    if isinstance(v, bool):
        return Fraction(int(v))
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    return v


def context_of(values) -> QuadContext | None:
    """The common quadratic context of an iterable of scalars (None for Q)."""
    ctx = None
    for v in values:
        if isinstance(v, QuadScalar):
            if ctx is None:
                ctx = v.ctx
            elif v.ctx != ctx:
                raise ContextMismatch(f"mixing Q(sqrt {ctx.d}) with Q(sqrt {v.ctx.d})")
    return ctx


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def exact_sqrt(v, ctx: QuadContext | None = None):
    """A square root of ``v`` inside its field, or None if there is none.

    For a rational ``v`` and a context ``ctx`` the square root is searched
    in Q(sqrt d); otherwise in Q.
    """
    if isinstance(v, QuadScalar):
        ctx = v.ctx
        if v.b == 0:
            return exact_sqrt(v.a, ctx)
        # (u + w sqrt d)^2 = a + b sqrt d  =>  u^2 + d w^2 = a, 2uw = b
        s = _rational_sqrt(v.norm())
        if s is None:
            return None
        for u2 in ((v.a + s) / 2, (v.a - s) / 2):
            u = _rational_sqrt(u2)
            if u is not None and u != 0:
                w = v.b / (2 * u)
                cand = QuadScalar(u, w, ctx)
                if cand * cand == v:
                    return cand
        return None
    v = Fraction(v)
    r = _rational_sqrt(v)
    if r is not None:
        return r if ctx is None else QuadScalar(r, 0, ctx)
    if ctx is not None:
        w2 = v / ctx.d
        w = _rational_sqrt(w2)
        if w is not None:
            return QuadScalar(0, w, ctx)
    return None
