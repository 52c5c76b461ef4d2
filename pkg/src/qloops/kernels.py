"""Kernel selection: the compiled extension when importable, else numpy.

Set ``QLOOPS_PURE_PYTHON=1`` to force the fallback.  Even when compiled, the
kernels hand matrices larger than ``COMPILED_MAX_N`` to numpy, whose BLAS
matmul beats the scalar loops there (see benchmarks/bench_kernels.py).
"""

import os

from . import _pykernels

COMPILED_MAX_N = 6

BACKEND = "python"
_impl = _pykernels
if os.environ.get("QLOOPS_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        pass


def convolve(A, B, out_len):
    k = _impl if A.shape[-1] <= COMPILED_MAX_N else _pykernels
    return k.convolve(A, B, out_len)


def unit_series_inverse(N, out_len):
    k = _impl if N.shape[-1] <= COMPILED_MAX_N else _pykernels
    return k.unit_series_inverse(N, out_len)


# elementwise; the compiled loop is no faster than numpy broadcasting
scale_rows_by_power = _pykernels.scale_rows_by_power

__all__ = ["BACKEND", "COMPILED_MAX_N", "convolve", "scale_rows_by_power",
           "unit_series_inverse"]
