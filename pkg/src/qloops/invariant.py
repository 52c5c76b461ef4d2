"""The elliptic invariant: a multiset of (point of E = C*/q^Z, Jordan size).

Points are stored as torus coordinates (t_tau, t_one) in [0, 1)^2 for the
value exp(2 pi i (tau t_tau + t_one)); multiplying by q shifts t_tau by 1, so
equality on E is equality mod 1 in both coordinates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .align import AlignedForm, align
from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .descent import DescentData, descend
from .resonance import ResonanceData, resonance_analyze
from .series import LaurentMatrix
from .spectral import joint_block_decomposition

_SNAP = 1e-12


def _wrap(t):
    t = t % 1.0
    if t > 1.0 - _SNAP:
        t = 0.0
    return t


@dataclass(frozen=True)
class EPoint:
    t_tau: float
    t_one: float

    def __post_init__(self):
        object.__setattr__(self, "t_tau", _wrap(float(self.t_tau)))
        object.__setattr__(self, "t_one", _wrap(float(self.t_one)))

    @classmethod
    def from_value(cls, v, cfg: ModulusConfig):
        w = cmath.log(complex(v)) / (2j * math.pi)
        t = w.imag / cfg.tau.imag
        return cls(t, w.real - t * cfg.tau.real)

    def value(self, cfg: ModulusConfig) -> complex:
        return cfg.elliptic_value(self.t_tau, self.t_one)

    def __add__(self, other):
        return EPoint(self.t_tau + other.t_tau, self.t_one + other.t_one)

    def __neg__(self):
        return EPoint(-self.t_tau, -self.t_one)

    def distance(self, other) -> float:
        d1 = abs(self.t_tau - other.t_tau) % 1.0
        d2 = abs(self.t_one - other.t_one) % 1.0
        return math.hypot(min(d1, 1 - d1), min(d2, 1 - d2))

    def is_zero(self, eps=1e-6):
        return self.distance(ORIGIN) < eps

    def key(self):
        return (self.t_tau, self.t_one)


ORIGIN = EPoint(0.0, 0.0)


@dataclass(frozen=True)
class EllipticInvariant:
    entries: tuple = field(default=())  # sorted tuple of (EPoint, size)

    def __post_init__(self):
        ents = tuple(sorted(((p, int(s)) for p, s in self.entries),
                            key=lambda e: (e[0].t_tau, e[0].t_one, e[1])))
        for _, s in ents:
            if s < 1:
                raise ValueError("sizes must be >= 1")
        object.__setattr__(self, "entries", ents)

    @property
    def rank(self):
        return sum(s for _, s in self.entries)

    def det_point(self) -> EPoint:
        t = ORIGIN
        for p, s in self.entries:
            t = t + EPoint(p.t_tau * s, p.t_one * s)
        return t

    def to_json(self):
        return {"rank": self.rank,
                "entries": [{"t_tau": p.t_tau, "t_one": p.t_one, "size": s}
                            for p, s in self.entries]}

    @classmethod
    def from_json(cls, doc):
        ents = tuple((EPoint(e["t_tau"], e["t_one"]), int(e["size"])) for e in doc["entries"])
        inv = cls(ents)
        if "rank" in doc and int(doc["rank"]) != inv.rank:
            raise ValueError(f"rank {doc['rank']} does not match entry sizes ({inv.rank})")
        return inv


def atiyah_data(dd: DescentData, cfg: ModulusConfig,
                tol: ToleranceConfig = DEFAULT_TOLERANCE) -> EllipticInvariant:
    m = dd.m
    ents = []
    for zeta, blocks in joint_block_decomposition(dd.theta_a, dd.c, tol):
        j = round(m * (cmath.phase(zeta) / (2 * math.pi))) % m
        shift = cfg.q_power(j / m)
        for beta, size in blocks:
            ents.append((EPoint.from_value(beta * shift, cfg), size))
    return EllipticInvariant(tuple(ents))


@dataclass(frozen=True, eq=False)
class Classification:
    invariant: EllipticInvariant
    aligned: AlignedForm
    resonance: ResonanceData
    descent: DescentData


def classify_full(a: LaurentMatrix, cfg: ModulusConfig,
                  tol: ToleranceConfig = DEFAULT_TOLERANCE) -> Classification:
    af, _ = align(a, cfg, tol, full=False)
    rd = resonance_analyze(af.eigs, cfg, tol)
    dd = descend(af, rd, cfg, tol)
    return Classification(atiyah_data(dd, cfg, tol), af, rd, dd)


def classify(a: LaurentMatrix, cfg: ModulusConfig,
             tol: ToleranceConfig = DEFAULT_TOLERANCE) -> EllipticInvariant:
    return classify_full(a, cfg, tol).invariant


def invariants_equal(i1: EllipticInvariant, i2: EllipticInvariant, eps=1e-6) -> bool:
    """Multiset equality: exact sizes, greedy matching of points within eps."""
    if i1.rank != i2.rank or len(i1.entries) != len(i2.entries):
        return False
    pool = list(i2.entries)
    for p, s in i1.entries:
        best, bi = None, None
        for idx, (p2, s2) in enumerate(pool):
            if s2 != s:
                continue
            d = p.distance(p2)
            if d < eps and (best is None or d < best):
                best, bi = d, idx
        if bi is None:
            return False
        pool.pop(bi)
    return True


def equivalent(a, a2, cfg: ModulusConfig, tol: ToleranceConfig = DEFAULT_TOLERANCE) -> bool:
    return invariants_equal(classify(a, cfg, tol), classify(a2, cfg, tol), tol.eps_res)


def jordan_block(lam, size):
    return lam * np.eye(size, dtype=np.complex128) + np.eye(size, k=1) * lam


def unipotent_block(size):
    return np.eye(size, dtype=np.complex128) + np.eye(size, k=1)


def synthesize(inv: EllipticInvariant, cfg: ModulusConfig) -> LaurentMatrix:
    """Constant block-diagonal multiplier sum_i p_i * J(1, size_i)."""
    if inv.rank < 1:
        raise ValueError("rank must be >= 1")
    n = inv.rank
    M = np.zeros((n, n), dtype=np.complex128)
    i = 0
    for p, s in inv.entries:
        M[i:i + s, i:i + s] = p.value(cfg) * unipotent_block(s)
        i += s
    return LaurentMatrix.constant(M)


def clebsch_gordan(a, b):
    """Jordan sizes of J(1, a) (x) J(1, b)."""
    return list(range(a + b - 1, abs(a - b), -2))


def tensor_data(i1: EllipticInvariant, i2: EllipticInvariant) -> EllipticInvariant:
    ents = []
    for p, a in i1.entries:
        for p2, b in i2.entries:
            ents += [(p + p2, s) for s in clebsch_gordan(a, b)]
    return EllipticInvariant(tuple(ents))


def dual_data(inv: EllipticInvariant) -> EllipticInvariant:
    return EllipticInvariant(tuple((-p, s) for p, s in inv.entries))


def sum_data(i1: EllipticInvariant, i2: EllipticInvariant) -> EllipticInvariant:
    return EllipticInvariant(i1.entries + i2.entries)


def hom_dimension_formula(i1: EllipticInvariant, i2: EllipticInvariant, eps=1e-6) -> int:
    """dim Hom(V1, V2) = number of zero-point summands of V1^dual (x) V2.

    Each indecomposable degree-zero summand at the origin contributes exactly
    one section (a constant confirmed by the intertwiner oracle).
    """
    t = tensor_data(dual_data(i1), i2)
    return sum(1 for p, _ in t.entries if p.is_zero(eps))
