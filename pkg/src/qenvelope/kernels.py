"""Backend selection for the cyclotomic kernels.

The compiled extension is used when it imports; setting the environment
variable ``QENVELOPE_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from qenvelope import _pykernel

BACKEND = "python"
mulmod = _pykernel.mulmod
matmul_flat = _pykernel.matmul_flat

if os.environ.get("QENVELOPE_PURE_PYTHON") != "1":
    try:
        from qenvelope import _ckernel
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        mulmod = _ckernel.mulmod
        matmul_flat = _ckernel.matmul_flat

__all__ = ["BACKEND", "mulmod", "matmul_flat"]
