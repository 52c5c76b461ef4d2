"""Pure numpy fallback for the hot kernels in ``_ckernels.pyx``."""

import numpy as np


def convolve(A, B, out_len):
    """Truncated Cauchy product of two matrix coefficient stacks.

    ``A`` is (La, n, k), ``B`` is (Lb, k, p); returns C of shape
    (out_len, n, p) with ``C[t] = sum_{i+j=t} A[i] @ B[j]``.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    La, Lb = A.shape[0], B.shape[0]
    C = np.zeros((out_len, A.shape[1], B.shape[2]), dtype=np.complex128)
    if La <= Lb:
        for i in range(min(La, out_len)):
            stop = min(Lb, out_len - i)
            C[i:i + stop] += np.matmul(A[i], B[:stop])
    else:
        for j in range(min(Lb, out_len)):
            stop = min(La, out_len - j)
            C[j:j + stop] += np.matmul(A[:stop], B[j])
    return C


def scale_rows_by_power(C, factors):
    """Multiply ``C[t]`` by ``factors[t]``; returns a new array."""
    return np.asarray(C) * np.asarray(factors)[:, None, None]


def unit_series_inverse(N, out_len):
    """Coefficients of ``(I + N(z))**-1`` for ``N[0] == 0``, first out_len terms."""
    N = np.asarray(N, dtype=np.complex128)
    n = N.shape[1]
    L = min(out_len, N.shape[0])
    C = np.zeros((out_len, n, n), dtype=np.complex128)
    C[0] = np.eye(n)
    for k in range(1, out_len):
        top = min(k, L - 1)
        if top < 1:
            continue
        # C_k = -sum_{j=1..k} N_j C_{k-j}
        C[k] = -np.matmul(N[1:top + 1], C[k - top:k][::-1]).sum(axis=0)
    return C
