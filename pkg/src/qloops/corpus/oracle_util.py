"""Helpers for the per-case oracle scripts.

Deliberately independent of the qloops package: numpy and fractions only.
Each oracle recomputes its case's expected values from first principles.
"""

import cmath
import json
import math
from pathlib import Path

import numpy as np

TAU = complex(0.3, 1.1)
Q = cmath.exp(2j * math.pi * TAU)


def qpow(r):
    return cmath.exp(2j * math.pi * TAU * r)


def value(t_tau, t_one):
    return cmath.exp(2j * math.pi * (TAU * t_tau + t_one))


def torus(v):
    """(t_tau, t_one) in [0, 1)^2 with v = exp(2 pi i (tau t_tau + t_one))."""
    w = cmath.log(v) / (2j * math.pi)
    t = w.imag / TAU.imag
    u = w.real - t * TAU.real
    return [t % 1.0, u % 1.0]


def load_loop(path):
    """{k: matrix} from a loop document (m_cov must be 1 here)."""
    doc = json.loads(Path(path).read_text())
    assert doc.get("m_cov", 1) == 1
    n = doc["n"]
    out = {}
    for t in doc["terms"]:
        M = np.array([[complex(*e) for e in row] for row in t["matrix"]])
        out[int(t["k"])] = M.reshape(n, n)
    return out


def constant(path):
    terms = load_loop(path)
    assert set(terms) == {0}
    return terms[0]


def nullity(M, rel=1e-9):
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0:
        return M.shape[1]
    return M.shape[1] - int(np.sum(s > rel * max(s[0], 1.0)))


def hom_constants(A, B, kmax=12):
    """dim of Laurent polynomial g with g(qz) A = B g(z), A and B constant.

    Coefficientwise the recurrence decouples: q^k X A = B X for each k.
    """
    n1, n2 = A.shape[0], B.shape[0]
    total = 0
    for k in range(-kmax, kmax + 1):
        qk = Q ** k
        # vec(X A) = (A^T kron I) vec X, vec(B X) = (I kron B) vec X
        M = qk * np.kron(A.T, np.eye(n2)) - np.kron(np.eye(n1), B)
        M = M / max(abs(qk) * np.abs(A).max(), np.abs(B).max())
        total += nullity(M)
    return total


def jordan_sizes(N, tol=1e-9):
    """Jordan block sizes of a nilpotent N from the rank sequence of its powers."""
    n = N.shape[0]
    ranks = [n]
    P = np.eye(n)
    for _ in range(n):
        P = P @ N
        ranks.append(n - nullity(P, tol) if np.abs(P).max() > tol else 0)
    # number of blocks of size >= j is rank(N^{j-1}) - rank(N^j)
    ge = [ranks[j - 1] - ranks[j] for j in range(1, n + 1)] + [0]
    sizes = []
    for j in range(1, n + 1):
        sizes += [j] * (ge[j - 1] - ge[j])
    return sorted(sizes, reverse=True)


def entries(pairs):
    """Invariant entries sorted like the CLI output."""
    ents = [{"t_tau": p[0], "t_one": p[1], "size": s} for p, s in pairs]
    return sorted(ents, key=lambda e: (e["t_tau"], e["t_one"], e["size"]))
