# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; see ``_pykernels`` for the reference implementation.

Complex arrays are viewed as interleaved doubles so the inner products run
on plain double arithmetic with register accumulators.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def _as_real(X):
    X = np.ascontiguousarray(X, dtype=np.complex128)
    return X, X.view(np.float64)  # last axis doubles


def convolve(A, B, Py_ssize_t out_len):
    A, Ar = _as_real(A)
    B, Br = _as_real(B)
    cdef const double[:, :, ::1] a = Ar
    cdef const double[:, :, ::1] b = Br
    cdef Py_ssize_t La = A.shape[0], n = A.shape[1], kk = A.shape[2]
    cdef Py_ssize_t Lb = B.shape[0], p = B.shape[2]
    if B.shape[1] != kk:
        raise ValueError("inner dimensions disagree")
    out = np.zeros((out_len, n, p), dtype=np.complex128)
    cdef double[:, :, ::1] c = out.view(np.float64)
    cdef Py_ssize_t t, r, s, i, j, l, i0, i1
    cdef double sre, sim, are, aim, bre, bim
    for t in range(out_len):
        i0 = t - Lb + 1
        if i0 < 0:
            i0 = 0
        i1 = t + 1
        if i1 > La:
            i1 = La
        for r in range(n):
            for s in range(p):
                sre = 0.0
                sim = 0.0
                for i in range(i0, i1):
                    j = t - i
                    for l in range(kk):
                        are = a[i, r, 2 * l]
                        aim = a[i, r, 2 * l + 1]
                        bre = b[j, l, 2 * s]
                        bim = b[j, l, 2 * s + 1]
                        sre += are * bre - aim * bim
                        sim += are * bim + aim * bre
                c[t, r, 2 * s] = sre
                c[t, r, 2 * s + 1] = sim
    return out


def scale_rows_by_power(C, factors):
    C, Cr = _as_real(C)
    f = np.ascontiguousarray(factors, dtype=np.complex128)
    cdef const double[:, :, ::1] src = Cr
    cdef const double[:, ::1] fr = f.view(np.float64).reshape(f.shape[0], 2)
    out = np.empty_like(C)
    cdef double[:, :, ::1] dst = out.view(np.float64)
    cdef Py_ssize_t t, r, s
    cdef double xr, xi, yr, yi
    for t in range(src.shape[0]):
        yr = fr[t, 0]
        yi = fr[t, 1]
        for r in range(src.shape[1]):
            for s in range(0, src.shape[2], 2):
                xr = src[t, r, s]
                xi = src[t, r, s + 1]
                dst[t, r, s] = xr * yr - xi * yi
                dst[t, r, s + 1] = xr * yi + xi * yr
    return out


def unit_series_inverse(N, Py_ssize_t out_len):
    N, Nr = _as_real(N)
    cdef const double[:, :, ::1] nn = Nr
    cdef Py_ssize_t n = N.shape[1], L = N.shape[0]
    out = np.zeros((out_len, n, n), dtype=np.complex128)
    cdef double[:, :, ::1] c = out.view(np.float64)
    cdef Py_ssize_t k, j, r, s, l, top
    cdef double sre, sim, are, aim, bre, bim
    for r in range(n):
        c[0, r, 2 * r] = 1.0
    for k in range(1, out_len):
        top = k
        if top > L - 1:
            top = L - 1
        # C_k = -sum_{j=1..top} N_j C_{k-j}
        for r in range(n):
            for s in range(n):
                sre = 0.0
                sim = 0.0
                for j in range(1, top + 1):
                    for l in range(n):
                        are = nn[j, r, 2 * l]
                        aim = nn[j, r, 2 * l + 1]
                        bre = c[k - j, l, 2 * s]
                        bim = c[k - j, l, 2 * s + 1]
                        sre += are * bre - aim * bim
                        sim += are * bim + aim * bre
                c[k, r, 2 * s] = -sre
                c[k, r, 2 * s + 1] = -sim
    return out
