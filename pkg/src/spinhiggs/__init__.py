"""Exact computations for spinor-valued Higgs fields on hyperelliptic curves."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
