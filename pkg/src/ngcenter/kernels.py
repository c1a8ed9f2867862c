"""Kernel dispatch: the compiled extension when importable, else numpy.

Set NGCENTER_BACKEND=python to force the fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if os.environ.get("NGCENTER_BACKEND", "").lower() != "python":
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py


def half4_residual_batch(X, bsub, bghmt, conj_a_sub, c2inv, c2d):
    """Quartic center residuals for a batch X of xi vectors, shape (B, n*n)."""
    c = np.ascontiguousarray
    return _impl.half4_residual_batch(
        c(X, dtype=complex), c(bsub, dtype=complex), c(bghmt, dtype=complex),
        c(conj_a_sub, dtype=complex), complex(c2inv), complex(c2d),
    )


def verlinde(S):
    """N[a, b, c] = sum_x S_ax S_bx conj(S_cx) / S_0x, unrounded.

    Always numpy: the contraction is a BLAS product that a hand loop does not beat.
    """
    return _kernels_py.verlinde(np.asarray(S, dtype=complex))
