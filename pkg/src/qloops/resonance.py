"""Resonance group recognition, cocharacter extraction and the exact
lattice splitting.

An eigenvalue lies in Gamma = {z : z^k = q^l} exactly when it can be written
as exp(2*pi*i*(tau*r + r1)) with r, r1 rational.  Numeric mode recovers
(r, r1) by rational recognition; exact mode takes them as input together with
an opaque "generic tag" for the non-Gamma part.
"""

from __future__ import annotations

import cmath
import hashlib
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .errors import InconsistentResonanceGraph


@dataclass(frozen=True)
class GammaExponent:
    """lambda = exp(2 pi i (tau r + r1)), r1 in [0, 1)."""

    r: Fraction
    r1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "r1", Fraction(self.r1) % 1)

    def __add__(self, other):
        return GammaExponent(self.r + other.r, self.r1 + other.r1)

    def __sub__(self, other):
        return GammaExponent(self.r - other.r, self.r1 - other.r1)

    def value(self, cfg: ModulusConfig) -> complex:
        return cmath.exp(2j * math.pi * (cfg.tau * float(self.r) + float(self.r1)))


ZERO = GammaExponent(Fraction(0), Fraction(0))


def _recognize_fraction(x, d_max):
    return Fraction(x).limit_denominator(d_max)


def gamma_recognize(lam, cfg: ModulusConfig, tol: ToleranceConfig = DEFAULT_TOLERANCE):
    """Return GammaExponent for lam if it lies in Gamma within tolerance."""
    lam = complex(lam)
    if lam == 0 or not cmath.isfinite(lam):
        return None
    w = cmath.log(lam) / (2j * math.pi)
    r_float = w.imag / cfg.tau.imag
    if abs(r_float) > tol.l_max + 0.5:
        return None
    r = _recognize_fraction(r_float, tol.d_max)
    if abs(r) > tol.l_max:
        return None
    r1_float = (w.real - float(r) * cfg.tau.real) % 1.0
    r1 = _recognize_fraction(r1_float, tol.d_max) % 1
    g = GammaExponent(r, r1)
    if abs(lam / g.value(cfg) - 1.0) < tol.eps_res:
        return g
    return None


@dataclass(frozen=True, eq=False)
class ResonanceData:
    """Per-eigenvalue resonance bookkeeping.

    ``kinds[i]`` is ("recognized", GammaExponent) or
    ("generic", component_id, offset GammaExponent relative to the base).
    ``r[i]`` is the tau-exponent used for the cocharacter (0 at generic bases).
    """

    kinds: tuple
    r: tuple
    m: int
    phi: tuple
    s_red_eigs: np.ndarray
    components: tuple = ()


def _lcd(fracs):
    return reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fracs), 1)


def resonance_analyze(eigs, cfg: ModulusConfig, tol: ToleranceConfig = DEFAULT_TOLERANCE):
    eigs = [complex(x) for x in eigs]
    n = len(eigs)
    own = [gamma_recognize(x, cfg, tol) for x in eigs]
    edge = {}
    for i in range(n):
        for j in range(i + 1, n):
            g = gamma_recognize(eigs[j] / eigs[i], cfg, tol)
            if g is not None:
                edge[(i, j)] = g
                edge[(j, i)] = GammaExponent(-g.r, -g.r1)
    offsets = [None] * n
    comp = [None] * n
    components = []
    for base in range(n):
        if offsets[base] is not None:
            continue
        cid = len(components)
        offsets[base] = own[base] if own[base] is not None else ZERO
        comp[base] = cid
        members = [base]
        todo = deque([base])
        while todo:
            i = todo.popleft()
            for j in range(n):
                if offsets[j] is None and (i, j) in edge:
                    offsets[j] = offsets[i] + edge[(i, j)]
                    comp[j] = cid
                    members.append(j)
                    todo.append(j)
        components.append(tuple(sorted(members)))
    for (i, j), g in edge.items():
        d = offsets[j] - offsets[i]
        if d != g:
            raise InconsistentResonanceGraph(
                f"offsets of eigenvalues {i} and {j} disagree: {d} vs recognized {g}")
    kinds = []
    for i in range(n):
        if own[i] is not None:
            kinds.append(("recognized", offsets[i]))
        else:
            kinds.append(("generic", comp[i], offsets[i]))
    r = tuple(o.r for o in offsets)
    m = _lcd(r)
    phi = tuple(int(x * m) for x in r)
    s_red = np.array([eigs[i] * cfg.q_power(-r[i]) for i in range(n)], dtype=np.complex128)
    return ResonanceData(tuple(kinds), r, m, phi, s_red, tuple(components))


def is_reduced(eigs, cfg: ModulusConfig, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
    """No eigenvalue or eigenvalue ratio satisfies lambda^k = q^l with l != 0.

    Roots of unity are allowed (they satisfy no such relation).
    """
    eigs = [complex(x) for x in eigs]
    vals = eigs + [a / b for a in eigs for b in eigs]
    for v in vals:
        g = gamma_recognize(v, cfg, tol)
        if g is not None and g.r != 0:
            return False
    return True


# -- exact lattice machinery ---------------------------------------------

@dataclass(frozen=True)
class LatticeSplit:
    L_basis: tuple          # tuple of integer tuples
    complement_basis: tuple

    def matrix(self):
        return [list(v) for v in self.L_basis + self.complement_basis]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        t, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    return a, x0, y0


def column_echelon(M, n):
    """Unimodular U with M U in column echelon form.

    Returns (H, U, rank): columns rank.. of H are zero.
    """
    H = [list(row) for row in M]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for X in (H, U):
            for row in X:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    piv = 0
    for i in range(len(H)):
        if piv >= n:
            break
        for k in range(piv + 1, n):
            x, y = H[i][piv], H[i][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            colop(piv, k, s, t, -y // g, x // g)
        if H[i][piv] != 0:
            if H[i][piv] < 0:
                for X in (H, U):
                    for row in X:
                        row[piv] = -row[piv]
            piv += 1
    return H, U, piv


def row_hnf(rows, n):
    """Row Hermite normal form (positive pivots, reduced above)."""
    B = [list(r) for r in rows]
    pr = 0
    pivots = []
    for col in range(n):
        for i in range(pr + 1, len(B)):
            x, y = B[pr][col] if pr < len(B) else 0, B[i][col]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            a, b = B[pr], B[i]
            B[pr] = [s * u + t * v for u, v in zip(a, b)]
            B[i] = [(-y // g) * u + (x // g) * v for u, v in zip(a, b)]
        if pr < len(B) and B[pr][col] != 0:
            if B[pr][col] < 0:
                B[pr] = [-u for u in B[pr]]
            p = B[pr][col]
            for i in range(pr):
                f = B[i][col] // p
                if f:
                    B[i] = [u - f * v for u, v in zip(B[i], B[pr])]
            pivots.append(col)
            pr += 1
            if pr == len(B):
                break
    return [tuple(r) for r in B[:pr]], pivots


def lattice_split(relations, n=None) -> LatticeSplit:
    """Split Z^n = L + L_red with L the (saturated) kernel of ``relations``."""
    relations = [list(map(int, r)) for r in relations]
    if n is None:
        n = len(relations[0]) if relations else 0
    _, U, rank = column_echelon(relations, n)
    Ucols = [tuple(U[i][j] for i in range(n)) for j in range(n)]
    kernel = Ucols[rank:]
    comp = Ucols[:rank]
    if kernel:
        L, pivots = row_hnf(kernel, n)
        if all(L[k][p] == 1 for k, p in enumerate(pivots)):
            comp = [tuple(int(i == j) for i in range(n)) for j in range(n) if j not in pivots]
    else:
        L = []
        comp = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return LatticeSplit(tuple(L), tuple(comp))


def integer_det(rows):
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SymbolicEigenvalue:
    """tag-part * exp(2 pi i (tau r + r1)); tag None means no generic part."""

    r: Fraction
    r1: Fraction
    tag: str | None = None

    @classmethod
    def from_json(cls, doc):
        return cls(Fraction(str(doc["r"])), Fraction(str(doc.get("r1", "0"))) % 1, doc.get("tag"))

    def to_json(self):
        return {"r": str(self.r), "r1": str(self.r1), "tag": self.tag}


def tag_exponents(tag):
    """Deterministic generic exponents (a, b) for a tag, from its sha256."""
    h = hashlib.sha256(tag.encode("utf-8")).digest()
    a = int.from_bytes(h[:8], "big") / 2.0 ** 64
    b = int.from_bytes(h[8:16], "big") / 2.0 ** 64
    # keep the tau-part away from 0 so that tagged values stay far from Gamma
    return 0.1 + 0.8 * a, b


def symbolic_value(e: SymbolicEigenvalue, cfg: ModulusConfig) -> complex:
    val = GammaExponent(e.r, e.r1).value(cfg)
    if e.tag is not None:
        a, b = tag_exponents(e.tag)
        val *= cmath.exp(2j * math.pi * (cfg.tau * a + b))
    return val


def tag_matrix(entries):
    tags = sorted({e.tag for e in entries if e.tag is not None})
    return [[int(e.tag == t) for e in entries] for t in tags], tags


@dataclass(frozen=True)
class ExactResonance:
    r: tuple
    m: int
    phi: tuple
    split: LatticeSplit
    bases: dict


def resonance_exact(entries) -> ExactResonance:
    """Exact cocharacter: tagged eigenvalues are measured relative to the
    smallest-index member of their tag class; untagged ones absolutely."""
    entries = list(entries)
    M, _ = tag_matrix(entries)
    split = lattice_split(M, len(entries))
    bases = {}
    for i, e in enumerate(entries):
        if e.tag is not None:
            bases.setdefault(e.tag, i)
    r = tuple(e.r - (entries[bases[e.tag]].r if e.tag is not None else 0) for e in entries)
    m = _lcd(r)
    phi = tuple(int(x * m) for x in r)
    return ExactResonance(r, m, phi, split, bases)
