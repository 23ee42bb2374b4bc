"""Kernel backend selection.

The compiled extension is preferred; set FFEXPAND_PURE_PYTHON=1 to force the
pure-Python fallback (used by the benchmark and the parity tests).
"""

import os

if os.environ.get("FFEXPAND_PURE_PYTHON"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

poly_mul = _impl.poly_mul
poly_divmod = _impl.poly_divmod
conv_coeff = _impl.conv_coeff
vec_addmul = _impl.vec_addmul
