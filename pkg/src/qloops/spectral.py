"""Constant-matrix spectral algebra: multiplicative Jordan decomposition,
adjoint weight spaces, and joint block structure of commuting pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .errors import NonCommutingPair, SingularMatrix, VerificationFailed


@dataclass(frozen=True, eq=False)
class JordanData:
    """A = S U = U S with S semisimple and U unipotent.

    ``P`` holds the (generalized) eigenbasis column-wise, grouped by cluster;
    ``eigs[i]`` is the eigenvalue attached to column i.  Clusters appear in
    order of weakly increasing modulus.
    """

    S: np.ndarray
    U: np.ndarray
    P: np.ndarray
    eigs: np.ndarray
    clusters: tuple = field(default=())  # tuple of index ranges (start, stop)

    @property
    def n(self):
        return self.S.shape[0]

    def cluster_of(self):
        lab = np.empty(self.n, dtype=int)
        for c, (a, b) in enumerate(self.clusters):
            lab[a:b] = c
        return lab


def cluster_eigenvalues(values, eps):
    """Single-linkage clustering at relative distance ``eps``.

    Returns a list of index lists; each cluster's representative is the mean
    of its members (the trace-mean is far more stable than any single member
    when the cluster comes from a perturbed Jordan block).
    """
    values = np.asarray(values, dtype=np.complex128)
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(abs(values[i]), abs(values[j]), 1e-300)
            if abs(values[i] - values[j]) <= eps * scale:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def spectral_order_key(lam):
    """Sort key: increasing modulus, then argument in [0, 2 pi).

    Both are quantized so that values equal up to rounding sort identically.
    """
    lam = complex(lam)
    a = np.angle(lam) % (2 * np.pi)
    if a > 2 * np.pi - 1e-9:
        a = 0.0
    return (round(math.log(abs(lam)) * 1e7), round(a * 1e7))


def _echelon_basis(V):
    """Canonical basis of span(V): pivoted-QR rows made into the identity.

    For coordinate subspaces this returns unit vectors, so already-diagonal
    inputs keep a permutation-free eigenbasis.
    """
    k = V.shape[1]
    _, _, piv = sla.qr(V.conj().T, pivoting=True, mode="economic")
    rows = np.sort(piv[:k])
    B = V @ np.linalg.inv(V[rows])
    B[np.abs(B) < 1e-14] = 0.0
    B[rows] = np.eye(k)
    return B


def _generalized_eigenspace(A, mu, mult):
    n = A.shape[0]
    M = np.linalg.matrix_power(A - mu * np.eye(n), mult)
    _, _, vh = np.linalg.svd(M)
    V = vh[n - mult:].conj().T
    return _echelon_basis(V)


def jordan_decomposition(A, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> JordanData:
    A = np.atleast_2d(np.asarray(A, dtype=np.complex128))
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.linalg.svd(A, compute_uv=False)[-1] < 1e-14 * scale:
        raise SingularMatrix("matrix is singular")
    raw = np.linalg.eigvals(A)
    groups = cluster_eigenvalues(raw, tol.eps_cluster)
    reps = [(np.mean(raw[g]), len(g)) for g in groups]
    reps.sort(key=lambda t: spectral_order_key(t[0]))
    cols, eigs, clusters = [], [], []
    start = 0
    for mu, mult in reps:
        if mult == n:
            B = np.eye(n, dtype=np.complex128)
        else:
            B = _generalized_eigenspace(A, mu, mult)
        cols.append(B)
        eigs += [mu] * mult
        clusters.append((start, start + mult))
        start += mult
    P = np.hstack(cols)
    Pinv = np.linalg.inv(P)
    T = Pinv @ A @ P
    # upper-triangularize each diagonal block when it is not already
    for a, b in clusters:
        blk = T[a:b, a:b]
        if b - a > 1 and np.max(np.abs(np.tril(blk, -1))) > 1e-14 * scale:
            _, Z = sla.schur(blk, output="complex")
            P[:, a:b] = P[:, a:b] @ Z
    Pinv = np.linalg.inv(P)
    eigs = np.array(eigs, dtype=np.complex128)
    S = P @ np.diag(eigs) @ Pinv
    U = np.linalg.solve(S, A)
    return JordanData(S, U, P, eigs, tuple(clusters))


def jordan_from_eigenbasis_block(a0, eigs, clusters) -> JordanData:
    """JordanData for a matrix already block-diagonal in its eigenbasis."""
    a0 = np.asarray(a0, dtype=np.complex128)
    eigs = np.asarray(eigs, dtype=np.complex128)
    n = a0.shape[0]
    S = np.diag(eigs)
    U = np.diag(1.0 / eigs) @ a0
    return JordanData(S, U, np.eye(n, dtype=np.complex128), eigs, tuple(clusters))


@dataclass(frozen=True, eq=False)
class WeightData:
    """Adjoint weights of S in its eigenbasis.

    ``ratio_table[i, j] = eigs[i] / eigs[j]`` is the weight of the matrix
    unit E_ij; ``positions[k]`` is the boolean mask of E_ij spanning g_{q^k}.
    """

    P: np.ndarray
    ratio_table: np.ndarray
    resonant_exponents: tuple
    K: int
    positions: dict

    def mask(self, k):
        return self.positions.get(k, np.zeros(self.ratio_table.shape, dtype=bool))


def q_exponent_of(ratio, cfg: ModulusConfig, tol: ToleranceConfig):
    """k >= 1 with ratio within eps_res*|q|^k of q^k, else None."""
    lq = math.log(abs(cfg.q))
    if ratio == 0:
        return None
    k = round(math.log(abs(ratio)) / lq)
    if k < 1 or k > tol.l_max:
        return None
    qk = cfg.q_power(k)
    if abs(ratio - qk) < tol.eps_res * abs(qk):
        return k
    return None


def weight_decomposition(j: JordanData, cfg: ModulusConfig,
                         tol: ToleranceConfig = DEFAULT_TOLERANCE) -> WeightData:
    eigs = j.eigs
    R = eigs[:, None] / eigs[None, :]
    n = len(eigs)
    positions = {}
    for r in range(n):
        for c in range(n):
            k = q_exponent_of(R[r, c], cfg, tol)
            if k is not None:
                positions.setdefault(k, np.zeros((n, n), dtype=bool))[r, c] = True
    ks = tuple(sorted(positions))
    return WeightData(j.P, R, ks, max(ks) if ks else 0, positions)


def numerical_rank(M, rel):
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > rel))


def nilpotent_block_sizes(N, tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """Jordan block sizes of a nilpotent matrix from its rank sequence.

    Callers pass N scaled to order one (e.g. (c - beta)/beta) so the
    relative threshold eps_rank * max(1, ||N||)^p is meaningful.
    """
    d = N.shape[0]
    if d == 0:
        return []
    base = max(1.0, float(np.linalg.norm(N, 2)))
    ranks = [d]
    Np = np.eye(d, dtype=np.complex128)
    for p in range(1, d + 1):
        Np = Np @ N
        ranks.append(min(ranks[-1], numerical_rank(Np, tol.eps_rank * base ** p)))
        if ranks[-1] == 0:
            break
    ranks += [0] * (d + 2 - len(ranks))
    # number of blocks of size >= p is ranks[p-1] - ranks[p]
    ge = [ranks[p - 1] - ranks[p] for p in range(1, d + 2)]
    sizes = []
    for p in range(1, d + 1):
        sizes += [p] * max(ge[p - 1] - ge[p], 0)
    if sum(sizes) != d:
        raise VerificationFailed(f"inconsistent rank sequence {ranks[:d + 1]}")
    return sorted(sizes, reverse=True)


def jordan_type(c, tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """List of (eigenvalue, block size) for a constant matrix."""
    c = np.atleast_2d(np.asarray(c, dtype=np.complex128))
    d = c.shape[0]
    if d == 0:
        return []
    raw = np.linalg.eigvals(c)
    out = []
    for g in cluster_eigenvalues(raw, tol.eps_cluster):
        beta = np.mean(raw[g])
        mult = len(g)
        if mult == d:
            V = np.eye(d, dtype=np.complex128)
        else:
            V = _generalized_eigenspace(c, beta, mult)
        N = np.linalg.pinv(V) @ (c - beta * np.eye(d)) @ V / beta
        out += [(beta, s) for s in nilpotent_block_sizes(N, tol)]
    out.sort(key=lambda t: (abs(t[0]), np.angle(t[0]), -t[1]))
    return out


def joint_block_decomposition(theta, c, tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """Split by theta-eigenvalue, then Jordan-type c on each eigenspace.

    Returns ``[(zeta, [(beta, size), ...]), ...]``.
    """
    theta = np.atleast_2d(np.asarray(theta, dtype=np.complex128))
    c = np.atleast_2d(np.asarray(c, dtype=np.complex128))
    s = max(1.0, float(np.max(np.abs(theta))) * float(np.max(np.abs(c))))
    if np.max(np.abs(theta @ c - c @ theta)) > tol.eps_eig * s:
        raise NonCommutingPair("theta and c do not commute")
    n = theta.shape[0]
    raw = np.linalg.eigvals(theta)
    result = []
    groups = cluster_eigenvalues(raw, 1e-6)
    for g in groups:
        zeta = np.mean(raw[g])
        zeta = zeta / abs(zeta)
        mult = len(g)
        if mult == n:
            V = np.eye(n, dtype=np.complex128)
        else:
            _, _, vh = np.linalg.svd(theta - zeta * np.eye(n))
            V = _echelon_basis(vh[n - mult:].conj().T)
        C = np.linalg.pinv(V) @ c @ V
        result.append((zeta, jordan_type(C, tol)))
    result.sort(key=lambda t: np.angle(t[0]) % (2 * np.pi))
    return result


def centralizer_dimension(c, tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """dim of {X : X c = c X} from the Jordan type: sum over eigenvalues of
    sum_{i,j} min(a_i, a_j)."""
    jt = jordan_type(c, tol)
    by_eig = []
    for beta, size in jt:
        for grp in by_eig:
            if abs(grp[0] - beta) <= tol.eps_cluster * max(abs(beta), 1e-300):
                grp[1].append(size)
                break
        else:
            by_eig.append([beta, [size]])
    return sum(min(a, b) for _, sizes in by_eig for a in sizes for b in sizes)
