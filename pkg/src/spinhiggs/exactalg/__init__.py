"""Exact scalar, polynomial, series and linear-algebra substrate."""

from .linalg import det, echelon, kernel_basis, rank, solve
from .mpoly import MPoly
from .poly import (
    Poly,
    coprime_base,
    crt_pair,
    discriminant,
    rational_roots,
    resultant,
    squarefree,
    squarefree_decomposition,
    squarefree_part,
)
from .scalars import ContextMismatch, QuadContext, QuadScalar, exact_sqrt, to_scalar
from .series import BranchMismatch, PowerSeries, series_sqrt

__all__ = [
    "BranchMismatch",
    "ContextMismatch",
    "MPoly",
    "Poly",
    "PowerSeries",
    "QuadContext",
    "QuadScalar",
    "coprime_base",
    "crt_pair",
    "det",
    "discriminant",
    "echelon",
    "exact_sqrt",
    "kernel_basis",
    "rank",
    "rational_roots",
    "resultant",
    "series_sqrt",
    "solve",
    "squarefree",
    "squarefree_decomposition",
    "squarefree_part",
    "to_scalar",
]
