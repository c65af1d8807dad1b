"""Spinor-valued Higgs fields on decomposable bundles E = O(D_1) + ... + O(D_n).

End_0 E splits as the sum of O(D_i - D_j) over i != j plus n - 1 trivial
summands, so twisting by K^{1/2} = O(e_T) reduces every section space to a
Riemann-Roch computation.  A Higgs field entry (i, j) is a function in
L(D_i - D_j + m*e_T), with m = 1 for Higgs fields and m = 2 for brackets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .curve import CurveError, Divisor, FnElt, HyperellipticCurve, in_space, riemann_roch_space
from .spin import HalfCanonicalSection, ThetaCharacteristic


class ConsistencyError(RuntimeError):
    """An internal identity failed (never expected to happen)."""


@dataclass(frozen=True, eq=False)
class DecomposableBundle:
    curve: HyperellipticCurve
    divisors: tuple

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        if len(self.divisors) < 2:
            raise ValueError("rank must be at least 2")
        for D in self.divisors:
            if D.curve != self.curve:
                raise CurveError("summand divisor on another curve")

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def degree(self) -> int:
        return sum(D.degree() for D in self.divisors)

    def __eq__(self, other):
        return isinstance(other, DecomposableBundle) and self.divisors == other.divisors

    def __hash__(self):
        return hash(self.divisors)

    def entry_divisor(self, i: int, j: int, th: ThetaCharacteristic, m: int = 1) -> Divisor:
        return self.divisors[i] - self.divisors[j] + m * th.divisor


def _det(mat):
    """Determinant by permutation expansion (ranks here are small)."""
    n = len(mat)
    total = None
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = mat[0][perm[0]]
        for i in range(1, n):
            term = term * mat[i][perm[i]]
        if inversions % 2:
            term = -term
        total = term if total is None else total + term
    return total


class HiggsField:
    """A trace-free matrix of sections of End_0 E tensor K^{m/2}."""

    def __init__(self, bundle: DecomposableBundle, theta: ThetaCharacteristic, entries, m: int = 1, check: bool = True):
        n = bundle.rank
        C = bundle.curve
        rows = []
        for row in entries:
            rows.append(tuple(e if isinstance(e, FnElt) else C.const(e) for e in row))
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("entry matrix has the wrong shape")
        self.bundle = bundle
        self.theta = theta
        self.m = m
        self.entries = tuple(rows)
        if check:
            self.validate()

    def validate(self):
        n = self.rank
        trace = self.entries[0][0]
        for i in range(1, n):
            trace = trace + self.entries[i][i]
        if not trace.is_zero():
            raise CurveError("Higgs field is not trace-free")
        for i in range(n):
            for j in range(n):
                e = self.entries[i][j]
                if not in_space(e, self.bundle.entry_divisor(i, j, self.theta, self.m)):
                    raise CurveError(f"entry ({i},{j}) is not a section of the expected bundle")

    @property
    def rank(self) -> int:
        return self.bundle.rank

    @property
    def curve(self) -> HyperellipticCurve:
        return self.bundle.curve

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _same_space(self, other: "HiggsField"):
        if other.bundle != self.bundle or other.theta != self.theta:
            raise CurveError("Higgs fields on different bundles or spin structures")

    def __add__(self, other: "HiggsField") -> "HiggsField":
        self._same_space(other)
        if other.m != self.m:
            raise CurveError("adding fields of different twists")
        n = self.rank
        return HiggsField(
            self.bundle,
            self.theta,
            [[self.entries[i][j] + other.entries[i][j] for j in range(n)] for i in range(n)],
            self.m,
            check=False,
        )

    def scale(self, c) -> "HiggsField":
        return HiggsField(self.bundle, self.theta, [[e * c for e in row] for row in self.entries], self.m, check=False)

    def matmul(self, other: "HiggsField"):
        self._same_space(other)
        n = self.rank
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.entries[i][0] * other.entries[0][j]
                for k in range(1, n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return out

    def conjugate_diagonal(self, scalars) -> "HiggsField":
        """Conjugate by diag(scalars): entry (i,j) picks up scalars[i]/scalars[j]."""
        n = self.rank
        return HiggsField(
            self.bundle,
            self.theta,
            [[self.entries[i][j] * (scalars[i] / scalars[j]) for j in range(n)] for i in range(n)],
            self.m,
            check=False,
        )

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, HiggsField):
            return NotImplemented
        return self.m == other.m and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"HiggsField(m={self.m}, {[list(r) for r in self.entries]})"


@dataclass
class HiggsSpace:
    dimension: int
    basis: list
    summand_dims: dict = field(default_factory=dict)


def higgs_space(E: DecomposableBundle, th: ThetaCharacteristic) -> HiggsSpace:
    """Basis of H^0(End_0 E tensor K^{1/2}) from its line-bundle summands."""
    C = E.curve
    n = E.rank
    zero = C.const(0)
    basis = []
    dims = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            space = riemann_roch_space(C, E.entry_divisor(i, j, th))
            dims[(i, j)] = len(space)
            for u in space:
                mat = [[zero] * n for _ in range(n)]
                mat[i][j] = u
                basis.append(HiggsField(E, th, mat, check=False))
    diag = riemann_roch_space(C, th.divisor)
    dims["diagonal"] = (n - 1) * len(diag)
    for k in range(n - 1):
        for psi in diag:
            mat = [[zero] * n for _ in range(n)]
            mat[k][k] = psi
            mat[n - 1][n - 1] = -psi
            basis.append(HiggsField(E, th, mat, check=False))
    return HiggsSpace(len(basis), basis, dims)


@dataclass
class ParityReport:
    rank: int
    degree: int
    theta: str
    h0_theta: int
    dimension: int
    computed_parity: int
    predicted_parity: int

    @property
    def passed(self) -> bool:
        return self.computed_parity == self.predicted_parity

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "theta": self.theta,
            "h0_theta": self.h0_theta,
            "dimension": self.dimension,
            "computed_parity": self.computed_parity,
            "predicted_parity": self.predicted_parity,
            "passed": self.passed,
        }


def predicted_parity(rank: int, degree: int, h0_theta: int) -> int:
    if rank % 2:
        return 0
    return (degree + h0_theta) % 2


def verify_parity_theorem(E: DecomposableBundle, th: ThetaCharacteristic) -> ParityReport:
    """Compare dim H^0(End_0 E tensor K^{1/2}) mod 2 with the predicted parity.

    A mismatch is reported (passed == False), never raised.
    """
    dim = higgs_space(E, th).dimension
    h = th.h0
    return ParityReport(E.rank, E.degree, th.label, h, dim, dim % 2, predicted_parity(E.rank, E.degree, h))


def bracket(psi1: HiggsField, psi2: HiggsField) -> HiggsField:
    """[psi1, psi2], a trace-free section of End_0 E tensor K^{(m1+m2)/2}."""
    psi1._same_space(psi2)
    a = psi1.matmul(psi2)
    b = psi2.matmul(psi1)
    n = psi1.rank
    return HiggsField(
        psi1.bundle,
        psi1.theta,
        [[a[i][j] - b[i][j] for j in range(n)] for i in range(n)],
        psi1.m + psi2.m,
    )


@dataclass
class SpectralData:
    """Coefficients of det(z I - Psi) = z^n + c_2 z^(n-2) + ... + c_n."""

    n: int
    theta: ThetaCharacteristic
    coeffs: dict  # k -> HalfCanonicalSection in K^{k/2}

    def __post_init__(self):
        c1 = self.coeffs.get(1)
        if c1 is not None and not c1.is_zero():
            raise CurveError("c_1 must vanish")
        self.coeffs.pop(1, None)
        for k, s in self.coeffs.items():
            if s.m != k:
                raise CurveError(f"c_{k} must be a section of K^({k}/2)")
            if not in_space(s.u, k * self.theta.divisor):
                raise ConsistencyError(f"c_{k} violates its divisor condition")

    @property
    def curve(self) -> HyperellipticCurve:
        return self.theta.curve

    def c(self, k: int) -> FnElt:
        s = self.coeffs.get(k)
        return s.u if s is not None else self.curve.const(0)

    @classmethod
    def from_functions(cls, theta: ThetaCharacteristic, funcs: dict, n: int | None = None) -> "SpectralData":
        n = n if n is not None else max(funcs)
        coeffs = {k: HalfCanonicalSection(k, u, theta, check=False) for k, u in funcs.items() if k >= 2}
        if 1 in funcs and not funcs[1].is_zero():
            raise CurveError("c_1 must vanish")
        return cls(n, theta, coeffs)


def char_poly(psi: HiggsField) -> SpectralData:
    """det(z I - Psi); c_k = (-1)^k * (sum of principal k-minors)."""
    from itertools import combinations

    n = psi.rank
    C = psi.curve
    coeffs = {}
    for k in range(1, n + 1):
        total = C.const(0)
        for idx in combinations(range(n), k):
            sub = [[psi.entries[i][j] for j in idx] for i in idx]
            total = total + _det(sub)
        if k % 2:
            total = -total
        coeffs[k] = HalfCanonicalSection(k * psi.m, total, psi.theta, check=False)
    if not coeffs[1].is_zero():
        raise ConsistencyError("trace-free field produced nonzero c_1")
    if psi.m != 1:
        raise CurveError("characteristic polynomial is defined for spinor-valued fields")
    return SpectralData(n, psi.theta, coeffs)


__all__ = [
    "ConsistencyError",
    "DecomposableBundle",
    "HiggsField",
    "HiggsSpace",
    "ParityReport",
    "SpectralData",
    "bracket",
    "char_poly",
    "higgs_space",
    "predicted_parity",
    "verify_parity_theorem",
]
