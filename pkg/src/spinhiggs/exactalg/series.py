"""Truncated power series with exact coefficients."""

from __future__ import annotations

from fractions import Fraction

from .scalars import to_scalar


class BranchMismatch(ValueError):
    pass


class PowerSeries:
    """sum_{k < order} coeffs[k] t^k, known modulo t^order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int):
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        cs = [to_scalar(c) for c in list(coeffs)[:order]]
        zero = cs[0] * 0 if cs else Fraction(0)
        cs += [zero] * (order - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, p, order: int):
        return cls(p.coeffs, order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def _other(self, other):
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([other], self.order)

    def __add__(self, other):
        o = self._other(other)
        n = min(self.order, o.order)
        return PowerSeries([self.coeffs[k] + o.coeffs[k] for k in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [a[0] * 0] * n
        for i in range(n):
            if a[i] == 0:
                continue
            for j in range(n - i):
                out[i + j] = out[i + j] + a[i] * b[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def inverse(self):
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = PowerSeries([1 / self.coeffs[0]], 1)
        prec = 1
        while prec < self.order:
            prec = min(2 * prec, self.order)
            s = self.truncate(prec)
            inv = PowerSeries(inv.coeffs, prec)
            inv = inv * (2 - s * inv)
        return inv

    def truncate(self, order: int):
        return PowerSeries(self.coeffs[:order], order)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient (None if zero to this order)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[:n] == other.coeffs[:n]

    def __repr__(self):
        terms = [f"{c}*t^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms or ["0"]) + f" + O(t^{self.order})"


def series_sqrt(s: PowerSeries, y0) -> PowerSeries:
    """The square root of ``s`` with constant term ``y0``, by Newton iteration."""
    y0 = to_scalar(y0)
    if y0 == 0:
        raise ValueError("series_sqrt needs a nonzero constant term")
    if y0 * y0 != s.coeffs[0]:
        raise BranchMismatch("branch mismatch: y0^2 != s(0)")
    t = PowerSeries([y0], 1)
    prec = 1
    while prec < s.order:
        prec = min(2 * prec, s.order)
        t = PowerSeries(t.coeffs, prec)
        st = s.truncate(prec)
        t = (t + st * t.inverse()) * Fraction(1, 2)
    return t
