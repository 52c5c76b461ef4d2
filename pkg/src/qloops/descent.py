"""Covering descent: conjugate an aligned form by phi(z^{1/m})^{-1} to a
reduced constant c and read off the finite-order a-cycle element theta_a."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .align import AlignedForm
from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .errors import NotConstantCocycle, ResonanceMismatch, VerificationFailed
from .resonance import ResonanceData, is_reduced, resonance_analyze
from .series import LaurentMatrix, galois_shift, invert, multiply, twisted_conjugate


@dataclass(frozen=True, eq=False)
class DescentData:
    """Monodromy pair in eigen-coordinates (``basis`` maps back)."""

    m: int
    phi: tuple
    c: np.ndarray
    theta_a: np.ndarray
    s_red: np.ndarray
    basis: np.ndarray
    residual: float = 0.0

    def in_original_basis(self):
        P = self.basis
        Pinv = np.linalg.inv(P)
        return P @ self.c @ Pinv, P @ self.theta_a @ Pinv


def cocharacter_loop(phi, m, sign=-1) -> LaurentMatrix:
    """diag(z^(sign*phi_i/m)) as an exact Laurent polynomial in z^(1/m)."""
    return LaurentMatrix.diagonal_monomials([sign * p for p in phi], m)


def galois_cocycle(g: LaurentMatrix, m: int | None = None,
                   tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """theta = g(e^{2 pi i/m} z^{1/m}) g(z^{1/m})^{-1}; must be constant."""
    if m is not None and g.m_cov != m:
        g = g.rescale(m)
    ginv = invert(g, tol.trunc)
    th = multiply(galois_shift(g), ginv)
    if not th.is_constant(tol.eps_eig):
        raise NotConstantCocycle("Galois cocycle is not constant")
    theta = th.coeff(0)
    mm = g.m_cov
    if np.max(np.abs(np.linalg.matrix_power(theta, mm) - np.eye(theta.shape[0]))) > \
            tol.eps_eig * max(1.0, float(np.max(np.abs(theta)))):
        raise NotConstantCocycle("theta^m != I")
    return theta


def descend(af: AlignedForm, rd: ResonanceData | None, cfg: ModulusConfig,
            tol: ToleranceConfig = DEFAULT_TOLERANCE) -> DescentData:
    if rd is None:
        rd = resonance_analyze(af.eigs, cfg, tol)
    n = af.n
    m, phi = rd.m, rd.phi
    ph = np.array(phi)
    for k, x in enumerate(af.xs, start=1):
        bad = (np.abs(x) > 0) & (ph[:, None] - ph[None, :] != m * k)
        if np.any(bad):
            r, c = np.argwhere(bad)[0]
            raise ResonanceMismatch(
                f"x_{k} has an entry at ({r}, {c}) but phi_r - phi_c = {ph[r] - ph[c]} != {m * k}")
    # the unipotent part must also be phi-graded (equal eigenvalues share phi)
    if np.any((np.abs(af.a0) > 0) & (ph[:, None] != ph[None, :])):
        raise ResonanceMismatch("a0 mixes coordinates with different phi")

    s_red = np.asarray(rd.s_red_eigs, dtype=np.complex128)
    u = af.jordan.U
    c = np.diag(s_red) @ u
    for x in af.xs:
        if np.any(x):
            c = c @ _expm_nilpotent(x)
    theta = np.diag(np.exp(2j * np.pi * ph / m))

    # witness: h(qz) a h(z)^{-1} with h = diag(z^{-phi/m}) must equal c exactly
    h = cocharacter_loop(phi, m, -1)
    h_inv = cocharacter_loop(phi, m, +1)
    poly = af.polynomial(m)
    res = twisted_conjugate(h, poly, cfg, g_inv=h_inv)
    scale = max(1.0, float(np.max(np.abs(c))))
    resid = 0.0
    for k, M in res.terms():
        target = c if k == 0 else 0.0
        resid = max(resid, float(np.max(np.abs(M - target))))
    if res.k_min > 0 or res.k_max < 0:
        resid = max(resid, float(np.max(np.abs(c))))
    if resid > tol.eps_eig * scale:
        raise VerificationFailed(f"descent witness residual {resid:.3e} exceeds tolerance")
    if np.max(np.abs(np.linalg.matrix_power(theta, m) - np.eye(n))) > tol.eps_eig:
        raise VerificationFailed("theta_a^m != I")
    if np.max(np.abs(theta @ c - c @ theta)) > tol.eps_eig * scale:
        raise VerificationFailed("theta_a does not commute with c")
    if not is_reduced(s_red, cfg, tol):
        raise VerificationFailed("descended constant is not reduced")
    return DescentData(m, tuple(phi), c, theta, s_red, af.basis, resid)


def _expm_nilpotent(x):
    n = x.shape[0]
    out = np.eye(n, dtype=np.complex128)
    p = np.eye(n, dtype=np.complex128)
    for j in range(1, n):
        p = p @ x / j
        if not np.any(p):
            break
        out = out + p
    return out
