"""Brute-force oracle: solve g(qz) a(z) = a2(z) g(z) for Laurent polynomial g
with support in a finite window.

The system on the coefficients g(k) is exact for polynomial inputs, so the
numerical null space is the full solution space on that window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .errors import NotPolynomial, ShapeMismatch
from .series import LaurentMatrix, common_covering, multiply, q_shift


@dataclass(frozen=True, eq=False)
class SolutionSpace:
    window: tuple
    basis: tuple
    dim: int
    singular_values: np.ndarray | None = None


def _polynomial_pair(a, a2):
    for x in (a, a2):
        if not x.exact:
            raise NotPolynomial("the intertwiner oracle needs exact (polynomial) inputs")
    a, a2 = common_covering(a.trimmed(), a2.trimmed())
    return a, a2


def _q_exponents(lams, mus, m, cfg: ModulusConfig, tol: ToleranceConfig):
    """Integers k (in units 1/m) with q^(k/m) lam ~ mu for some pair."""
    lq = math.log(abs(cfg.q)) / m
    out = set()
    for lam in lams:
        for mu in mus:
            ratio = mu / lam
            k = round(math.log(abs(ratio)) / lq)
            if abs(k) > tol.l_max * m:
                continue
            qk = cfg.q_power(k / m)
            if abs(ratio - qk) < max(tol.eps_res, 1e-3) * abs(qk):
                out.add(k)
    return out


def support_bound(a: LaurentMatrix, a2: LaurentMatrix, cfg: ModulusConfig,
                  tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """Window containing the support of every Laurent polynomial intertwiner.

    Exponents are in units of 1/m_cov of the (common) covering.
    """
    a, a2 = _polynomial_pair(a, a2)
    m = a.m_cov
    lams = np.linalg.eigvals(a.coeff(a.k_min))
    mus = np.linalg.eigvals(a2.coeff(a2.k_min))
    ks = _q_exponents(lams, mus, m, cfg, tol)
    if not ks:
        return (0, 0)
    spread = max(a.k_max - a.k_min, a2.k_max - a2.k_min)
    widen = (a.shape[0] + a2.shape[0]) * spread
    return (min(ks) - widen, max(ks) + widen)


def _system(a, a2, window, cfg):
    n1, n2 = a.shape[0], a2.shape[0]
    m = a.m_cov
    w0, w1 = window
    d = n1 * n2
    t_lo = w0 + min(a.k_min, a2.k_min)
    t_hi = w1 + max(a.k_max, a2.k_max)
    nk = w1 - w0 + 1
    rows = (t_hi - t_lo + 1) * d
    Mx = np.zeros((rows, nk * d), dtype=np.complex128)
    I1, I2 = np.eye(n1), np.eye(n2)
    for ki, k in enumerate(range(w0, w1 + 1)):
        qk = cfg.q_power(k / m)
        cols = slice(ki * d, (ki + 1) * d)
        for j, aj in a.terms():
            if np.any(aj):
                t = k + j - t_lo
                Mx[t * d:(t + 1) * d, cols] += qk * np.kron(aj.T, I2)
        for j, bj in a2.terms():
            if np.any(bj):
                t = k + j - t_lo
                Mx[t * d:(t + 1) * d, cols] -= np.kron(I1, bj)
    return Mx


def solve_intertwiners(a: LaurentMatrix, a2: LaurentMatrix, window, cfg: ModulusConfig,
                       tol: ToleranceConfig = DEFAULT_TOLERANCE) -> SolutionSpace:
    a, a2 = _polynomial_pair(a, a2)
    n1, n2 = a.shape[0], a2.shape[0]
    if a.shape[0] != a.shape[1] or a2.shape[0] != a2.shape[1]:
        raise ShapeMismatch("loops must be square")
    w0, w1 = int(window[0]), int(window[1])
    Mx = _system(a, a2, (w0, w1), cfg)
    # equilibrate by the size of the terms entering each column, not by the
    # column norm itself (which cancels to rounding noise on solutions)
    sa = float(np.max(np.abs(a.coeffs)))
    sb = float(np.max(np.abs(a2.coeffs)))
    m = a.m_cov
    colscale = np.repeat([max(abs(cfg.q_power(k / m)) * sa, sb) for k in range(w0, w1 + 1)],
                         n1 * n2)
    Ms = Mx / colscale
    _, s, vh = np.linalg.svd(Ms)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > tol.eps_eig * max(smax, 1.0))) if s.size else 0
    null = vh[rank:].conj().T  # columns
    basis = []
    for v in null.T:
        g = v / colscale
        g = g / np.max(np.abs(g))
        coeffs = g.reshape(w1 - w0 + 1, n1, n2).transpose(0, 2, 1)  # undo column-major vec
        basis.append(LaurentMatrix(coeffs, w0, a.m_cov, True).trimmed(1e-12))
    return SolutionSpace((w0, w1), tuple(basis), len(basis), s)


def hom_dimension_measured(a, a2, cfg: ModulusConfig,
                           tol: ToleranceConfig = DEFAULT_TOLERANCE) -> int:
    return solve_intertwiners(a, a2, support_bound(a, a2, cfg, tol), cfg, tol).dim


def intertwining_residual(g: LaurentMatrix, a: LaurentMatrix, a2: LaurentMatrix,
                          cfg: ModulusConfig) -> float:
    """max |g(qz) a(z) - a2(z) g(z)| over all coefficients, relative."""
    g, a, a2 = common_covering(g, a, a2)
    lhs = multiply(q_shift(g, cfg), a)
    rhs = multiply(a2, g)
    lo = min(lhs.k_min, rhs.k_min)
    hi = max(lhs.k_max, rhs.k_max)
    s = max(lhs.scale(), rhs.scale())
    return max(float(np.max(np.abs(lhs.coeff(k) - rhs.coeff(k)))) for k in range(lo, hi + 1)) / s


def determinant_polynomial(g: LaurentMatrix):
    """Coefficients of det g(z) (exponents n*k_min ..) by interpolation on a circle."""
    n = g.n
    d = g.k_max - g.k_min
    npts = n * d + 1
    zs = np.exp(2j * np.pi * np.arange(npts) / npts)
    powers = zs[:, None] ** np.arange(d + 1)[None, :]
    vals = np.linalg.det(np.einsum("pk,kij->pij", powers, g.coeffs))
    return np.fft.fft(vals) / npts


def certificate_conjugator(a, a2, cfg: ModulusConfig, tol: ToleranceConfig = DEFAULT_TOLERANCE,
                           trials: int = 32, seed: int = 0x5EED):
    """An invertible intertwiner (so a2 = g(qz) a g(z)^-1), or None."""
    from .testkit import Rng

    if a.shape != a2.shape:
        return None
    n = a.shape[0]
    ident = LaurentMatrix.identity(n, a.m_cov)
    if intertwining_residual(ident, a, a2, cfg) < tol.eps_eig:
        return ident
    space = solve_intertwiners(a, a2, support_bound(a, a2, cfg, tol), cfg, tol)
    if space.dim == 0:
        return None
    rng = Rng(seed)
    lo = min(b.k_min for b in space.basis)
    hi = max(b.k_max for b in space.basis)
    stack = [_shift_window(b, lo, hi) for b in space.basis]
    for t in range(trials):
        w = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in stack]
        if t == 0 and len(stack) == 1:
            w = [1.0]
        C = sum(wi * s.coeffs for wi, s in zip(w, stack))
        g = LaurentMatrix(C, lo, a.m_cov, True).trimmed(1e-12)
        dp = determinant_polynomial(g)
        if np.max(np.abs(dp)) > tol.eps_eig * max(1.0, float(np.max(np.abs(g.coeffs)))) ** n:
            return g
    return None


def _shift_window(b, lo, hi):
    pad_lo = np.zeros((b.k_min - lo,) + b.shape, dtype=np.complex128)
    pad_hi = np.zeros((hi - b.k_max,) + b.shape, dtype=np.complex128)
    return LaurentMatrix(np.concatenate([pad_lo, b.coeffs, pad_hi]), lo, b.m_cov, True)
