"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module is used.  Setting ``SPINHIGGS_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("SPINHIGGS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

bareiss_echelon = _impl.bareiss_echelon
koszul_mul = _impl.koszul_mul

__all__ = ["BACKEND", "bareiss_echelon", "koszul_mul"]
