import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qloops import _pykernels, kernels

try:
    from qloops import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _cm(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@needs_ext
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(1, 9), st.integers(1, 9),
       st.integers(1, 12))
def test_convolve_backends_agree(seed, n, la, lb, out_len):
    rng = np.random.default_rng(seed)
    A, B = _cm(rng, la, n, n + 1), _cm(rng, lb, n + 1, n)
    assert np.allclose(_ckernels.convolve(A, B, out_len), _pykernels.convolve(A, B, out_len))


@needs_ext
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(1, 9))
def test_scale_backends_agree(seed, n, L):
    rng = np.random.default_rng(seed)
    C, f = _cm(rng, L, n, n), _cm(rng, L)
    assert np.allclose(_ckernels.scale_rows_by_power(C, f), _pykernels.scale_rows_by_power(C, f),
                       rtol=1e-15, atol=0)


@needs_ext
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(1, 9), st.integers(1, 12))
def test_unit_inverse_backends_agree(seed, n, L, out_len):
    rng = np.random.default_rng(seed)
    N = 0.3 * _cm(rng, L, n, n)
    N[0] = 0
    assert np.allclose(_ckernels.unit_series_inverse(N, out_len),
                       _pykernels.unit_series_inverse(N, out_len))


def test_unit_inverse_is_inverse():
    rng = np.random.default_rng(0)
    N = 0.3 * _cm(rng, 4, 3, 3)
    N[0] = 0
    C = kernels.unit_series_inverse(N, 10)
    Ip = N.copy()
    Ip[0] = np.eye(3)
    P = kernels.convolve(Ip, C, 10)
    assert np.allclose(P[0], np.eye(3)) and np.allclose(P[1:], 0)


def test_pure_python_switch():
    env = dict(os.environ, QLOOPS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import qloops.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_classification_identical_across_backends():
    code = ("from qloops.testkit import *; from qloops.invariant import classify;"
            "from qloops.config import DEFAULT_MODULUS as c;"
            "a = random_aligned_loop(GeneratorSpec(seed=11, n=3, deg=2), c);"
            "print(classify(a, c).to_json())")
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, QLOOPS_PURE_PYTHON=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                   text=True, check=True).stdout)
    assert outs[0] == outs[1] or _ckernels is None


def test_large_matrices_use_numpy_path():
    rng = np.random.default_rng(3)
    n = kernels.COMPILED_MAX_N + 2
    A = rng.standard_normal((5, n, n)) + 1j * rng.standard_normal((5, n, n))
    assert np.array_equal(kernels.convolve(A, A, 5), _pykernels.convolve(A, A, 5))
