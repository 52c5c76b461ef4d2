"""Alignment: twisted-conjugate an integral loop into the finite normal form
a0 * exp(x_1 z) * ... * exp(x_K z^K) with x_k in the q^k weight space of
Ad(a0^ss).

All work happens in the eigenbasis P of a0^ss.  There a0 is block diagonal
(one upper-triangular block per eigenvalue cluster), Ad(a0^ss) is diagonal on
matrix units, and the weight spaces are coordinate masks, so every x_k is
supported exactly on its resonant positions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .errors import NotIntegralRepresentative, WindowTooShort
from .series import (LaurentMatrix, exp_nilpotent_monomial, exp_series, multiply,
                     twisted_conjugate)
from .spectral import (JordanData, WeightData, jordan_decomposition,
                       jordan_from_eigenbasis_block, weight_decomposition)


@dataclass(frozen=True, eq=False)
class AlignedForm:
    """Aligned normal form in eigen-coordinates.

    ``a0`` is block diagonal and upper triangular; ``jordan`` describes it
    with S = diag(eigs); ``xs[k-1]`` lives on the positions (r, c) with
    eigs[r]/eigs[c] = q^k.  ``basis`` maps eigen-coordinates back to the
    coordinates of the original loop: original = basis @ eigen @ basis^-1.
    """

    a0: np.ndarray
    jordan: JordanData
    xs: tuple
    K: int
    basis: np.ndarray
    weights: WeightData | None = None

    @property
    def n(self):
        return self.a0.shape[0]

    @property
    def eigs(self):
        return self.jordan.eigs

    def polynomial(self, m_cov=1) -> LaurentMatrix:
        """Expanded a0 exp(x_1 z) ... exp(x_K z^K) (exact) in eigen-coordinates."""
        out = LaurentMatrix.constant(self.a0)
        for k, x in enumerate(self.xs, start=1):
            if np.any(x):
                out = multiply(out, exp_nilpotent_monomial(x, k))
        return out.trimmed().rescale(m_cov)

    def polynomial_inverse(self) -> LaurentMatrix:
        out = LaurentMatrix.constant(np.linalg.inv(self.a0))
        for k, x in enumerate(self.xs, start=1):
            if np.any(x):
                out = multiply(exp_nilpotent_monomial(-x, k), out)
        return out.trimmed()

    def original_polynomial(self) -> LaurentMatrix:
        """The aligned polynomial expressed in the input's coordinates."""
        P = self.basis
        Pinv = np.linalg.inv(P)
        return self.polynomial().map_coeffs(lambda M: P @ M @ Pinv)

    def postcondition_residuals(self, cfg: ModulusConfig):
        """||Ad(a0^ss) x_k - q^k x_k|| / max(1, ||x_k||) for each k."""
        S = np.diag(self.eigs)
        Sinv = np.diag(1.0 / self.eigs)
        out = []
        for k, x in enumerate(self.xs, start=1):
            r = S @ x @ Sinv - cfg.q_power(k) * x
            out.append(float(np.linalg.norm(r)) / max(1.0, float(np.linalg.norm(x))))
        return out


def check_integral(a: LaurentMatrix, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> LaurentMatrix:
    """Return ``a`` on a power-series window starting at exponent 0.

    Rejects negative or fractional exponents and singular constant terms.
    """
    a.n
    s = a.scale()
    cut = 1e-14 * s
    b = a.reduce_covering(1e-14)
    for k, M in b.terms():
        if np.max(np.abs(M), initial=0.0) <= cut:
            continue
        bad = np.argwhere(np.abs(M) > cut)[0]
        entry = {"row": int(bad[0]), "col": int(bad[1]), "k": k, "m_cov": b.m_cov}
        if k < 0:
            raise NotIntegralRepresentative(
                f"entry ({bad[0]}, {bad[1]}) has a term z^({k}/{b.m_cov}) of negative order",
                entry)
        if k % b.m_cov:
            raise NotIntegralRepresentative(
                f"entry ({bad[0]}, {bad[1]}) has a fractional exponent {k}/{b.m_cov}", entry)
    if b.k_min > 0:
        raise NotIntegralRepresentative("constant term vanishes",
                                        {"row": 0, "col": 0, "k": 0, "m_cov": 1})
    if b.k_min < 0:
        b = LaurentMatrix(b.coeffs[-b.k_min:], 0, 1, b.exact) if b.k_max >= 0 else None
        if b is None:
            raise NotIntegralRepresentative("no constant term in window",
                                            {"row": 0, "col": 0, "k": 0, "m_cov": 1})
    a0 = b.coeff(0)
    sv = np.linalg.svd(a0, compute_uv=False)
    if sv[-1] <= 1e-12 * max(1.0, sv[0]):
        raise NotIntegralRepresentative("constant term a(0) is singular",
                                        {"row": None, "col": None, "k": 0, "m_cov": 1})
    return b


def _block_solve(A, clusters, B, qk, mask):
    """Solve (q^k Ad(A^-1) - Id) X = -B on every non-resonant cluster block."""
    X = np.zeros_like(B)
    Ainv = np.linalg.inv(A)
    for (r0, r1) in clusters:
        Ar_inv = Ainv[r0:r1, r0:r1]
        for (c0, c1) in clusters:
            if mask[r0, c0]:
                continue
            Bb = B[r0:r1, c0:c1]
            if not np.any(Bb):
                continue
            Ac = A[c0:c1, c0:c1]
            dr, dc = r1 - r0, c1 - c0
            # vec(A_r^-1 X A_c) = (A_c^T kron A_r^-1) vec(X), column-major vec
            op = qk * np.kron(Ac.T, Ar_inv) - np.eye(dr * dc)
            x = np.linalg.solve(op, -Bb.reshape(-1, order="F"))
            X[r0:r1, c0:c1] = x.reshape(dr, dc, order="F")
    return X


def align(a: LaurentMatrix, cfg: ModulusConfig, tol: ToleranceConfig = DEFAULT_TOLERANCE,
          full: bool = True):
    """Return ``(AlignedForm, conjugator)``.

    ``twisted_conjugate(conjugator, a)`` equals ``af.polynomial()`` on the
    conjugator's window.  With ``full=False`` the iteration stops at K, which
    already fixes the aligned form; the conjugator is then only valid up to
    order K.
    """
    b = check_integral(a, tol)
    n = b.n
    jd0 = jordan_decomposition(b.coeff(0), tol)
    P, Pinv = jd0.P, np.linalg.inv(jd0.P)
    clusters = jd0.clusters
    eigs = jd0.eigs
    at = b.map_coeffs(lambda M: Pinv @ M @ P)
    A0 = at.coeff(0).copy()
    lab = jd0.cluster_of()
    A0[lab[:, None] != lab[None, :]] = 0.0
    jd = jordan_from_eigenbasis_block(A0, eigs, clusters)
    wd = weight_decomposition(jd, cfg, tol)
    K = wd.K

    if b.exact:
        top = max(tol.trunc, K + 1)
        current = at.truncate(top)
    else:
        top = b.k_max
        if top < K + 1:
            raise WindowTooShort(f"input known to order {top}, alignment needs {K + 1}")
        current = at
    stop = top if full else K
    A0inv = np.linalg.inv(A0)

    conj = LaurentMatrix.constant(Pinv).truncate(top)
    xs = []
    stepped = False
    # Einv = exp(-y_{k-1} z^{k-1}) ... exp(-y_1 z)
    Einv = LaurentMatrix.identity(n).truncate(top)
    for k in range(1, stop + 1):
        W = A0inv @ current.coeffs[: k + 1]
        ak = np.einsum("jab,jbc->ac", Einv.coeffs[: k + 1], W[::-1])
        mask = wd.mask(k)
        y = np.where(mask, ak, 0.0)
        x = _block_solve(A0, clusters, ak - y, cfg.q_power(k), mask)
        if k <= K:
            xs.append(y)
        if np.any(x):
            step = exp_series(LaurentMatrix.monomial(x, k).truncate(top))
            step_inv = exp_series(LaurentMatrix.monomial(-x, k).truncate(top))
            current = twisted_conjugate(step, current, cfg, g_inv=step_inv)
            conj = multiply(step, conj)
            stepped = True
        if np.any(y):
            Einv = multiply(exp_nilpotent_monomial(-y, k), Einv)
    while len(xs) < K:
        xs.append(np.zeros((n, n), dtype=np.complex128))
    af = AlignedForm(A0, jd, tuple(xs), K, P, wd)
    if full and not stepped:
        conj = LaurentMatrix.constant(Pinv)  # nothing to correct: exact
    return af, conj


def triangularize(af: AlignedForm) -> AlignedForm:
    """Reorder the eigenbasis by weakly increasing |lambda|.

    In that order a0 is block upper triangular and every x_k (which maps the
    lambda-space into the smaller q^k*lambda-space) is strictly upper
    triangular.  Clusters keep their internal order.
    """
    eigs = af.eigs
    n = len(eigs)
    clusters = list(af.jordan.clusters) or [(i, i + 1) for i in range(n)]
    order = sorted(range(len(clusters)), key=lambda c: abs(eigs[clusters[c][0]]))
    if order == list(range(len(clusters))):
        return af
    perm = [i for c in order for i in range(*clusters[c])]
    new_clusters, s = [], 0
    for c in order:
        d = clusters[c][1] - clusters[c][0]
        new_clusters.append((s, s + d))
        s += d
    ix = np.ix_(perm, perm)
    a0 = af.a0[ix]
    new_eigs = eigs[perm]
    jd = jordan_from_eigenbasis_block(a0, new_eigs, new_clusters)
    xs = tuple(x[ix] for x in af.xs)
    return AlignedForm(a0, jd, xs, af.K, af.basis[:, perm], None)


def aligned_form_from_parts(a0, xs, cfg: ModulusConfig,
                            tol: ToleranceConfig = DEFAULT_TOLERANCE) -> AlignedForm:
    """Wrap user-supplied eigen-coordinate data (a0 block diagonal in the
    eigenbasis, x_k on resonant positions) as an AlignedForm."""
    a0 = np.atleast_2d(np.asarray(a0, dtype=np.complex128))
    n = a0.shape[0]
    eigs = np.diag(a0).copy()
    clusters, start = [], 0
    for i in range(1, n + 1):
        if i == n or abs(eigs[i] - eigs[start]) > tol.eps_cluster * abs(eigs[start]):
            clusters.append((start, i))
            start = i
    jd = jordan_from_eigenbasis_block(a0, eigs, clusters)
    wd = weight_decomposition(jd, cfg, tol)
    xs = tuple(np.asarray(x, dtype=np.complex128) for x in xs)
    return AlignedForm(a0, jd, xs, len(xs), np.eye(n, dtype=np.complex128), wd)
