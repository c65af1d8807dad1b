"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction

from .scalars import to_scalar


class MPoly:
    __slots__ = ("nvars", "terms", "names")

    def __init__(self, nvars: int, terms=None, names=None):
        self.nvars = nvars
        self.names = tuple(names) if names else tuple(f"z{i + 1}" for i in range(nvars))
        clean = {}
        for e, c in (terms or {}).items():
            c = to_scalar(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def var(cls, nvars: int, i: int, names=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, names)

    @classmethod
    def const(cls, nvars: int, c, names=None):
        return cls(nvars, {(0,) * nvars: c}, names)

    def _like(self, terms):
        return MPoly(self.nvars, terms, self.names)

    def _wrap(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.nvars, other, self.names)

    def __add__(self, other):
        o = self._wrap(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            other = to_scalar(other)
            return self._like({e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / to_scalar(c))

    def __pow__(self, k: int):
        out = MPoly.const(self.nvars, 1, self.names)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return self._like(out)

    def subs(self, values: dict):
        """Substitute variables (by index) with scalars or MPolys."""
        out = MPoly(self.nvars, {}, self.names)
        for e, c in self.terms.items():
            term = MPoly.const(self.nvars, c, self.names)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if i in values:
                    term = term * (self._wrap(values[i]) ** k)
                else:
                    e2 = [0] * self.nvars
                    e2[i] = k
                    term = term * MPoly(self.nvars, {tuple(e2): 1}, self.names)
            out = out + term
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        return self == self._wrap(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(self.names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = __repr__


def coefficient(p: MPoly, e) -> Fraction:
    return p.terms.get(tuple(e), Fraction(0))
