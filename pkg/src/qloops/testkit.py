"""Deterministic random generators and the cross-module property harness.

All randomness comes from :class:`Rng`, a splitmix64-seeded xorshift64*
stream, so a seed pins every generated object bit-for-bit on any platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .config import DEFAULT_TOLERANCE, ModulusConfig, ToleranceConfig
from .invariant import EllipticInvariant, EPoint, equivalent, synthesize, unipotent_block
from .series import LaurentMatrix, exp_nilpotent_monomial, multiply, twisted_conjugate

_MASK = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Rng:
    """xorshift64* (Vigna) seeded through splitmix64."""

    def __init__(self, seed: int):
        s = splitmix64(int(seed) & _MASK)
        self.state = s or 0x9E3779B97F4A7C15

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def random(self):
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo, hi):
        return lo + (hi - lo) * self.random()

    def randint(self, lo, hi):
        """Uniform integer in [lo, hi] (inclusive)."""
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def complex_matrix(self, rows, cols, bound):
        """Entries with |re|, |im| <= bound / sqrt(2), so |entry| <= bound."""
        h = bound / np.sqrt(2.0)
        vals = [complex(self.uniform(-h, h), self.uniform(-h, h)) for _ in range(rows * cols)]
        return np.array(vals, dtype=np.complex128).reshape(rows, cols)


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int
    n: int = 2
    deg: int = 2
    coeff_bound: float = 2.0
    resonance_menu: tuple = field(default=(Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)))


def derive_seed(seed, *salt):
    s = int(seed) & _MASK
    for x in salt:
        s = splitmix64(s ^ (int(x) & _MASK))
    return s


def random_polynomial_loop(spec: GeneratorSpec) -> LaurentMatrix:
    """Polynomial loop with constant term I + (small) and bounded coefficients."""
    rng = Rng(spec.seed)
    n = spec.n
    c = np.zeros((spec.deg + 1, n, n), dtype=np.complex128)
    c[0] = np.eye(n) + rng.complex_matrix(n, n, 0.4 / n)
    for k in range(1, spec.deg + 1):
        c[k] = rng.complex_matrix(n, n, spec.coeff_bound)
    return LaurentMatrix(c, 0, 1, True)


def _random_eigen_data(rng: Rng, n, menu, cfg: ModulusConfig):
    """Eigenvalues base * zeta * q^r with planted resonances.

    Returns (eigs, group labels) where group = (component, r, zeta index).
    """
    ncomp = rng.randint(1, n)
    bases = []
    for c in range(ncomp):
        if rng.random() < 0.25:
            bases.append((0.0, 0.0))  # pure Gamma component
        else:
            bases.append((rng.uniform(0.05, 0.45), rng.random()))
    roots = (Fraction(0), Fraction(1, 2), Fraction(1, 3))
    eigs, labels = [], []
    for i in range(n):
        comp = rng.randint(0, ncomp - 1)
        r = rng.choice(menu)
        z = rng.choice(roots) if rng.random() < 0.3 else Fraction(0)
        a, b = bases[comp]
        eigs.append(cfg.elliptic_value(a + float(r), b + float(z)))
        labels.append((comp, r, z))
    # increasing |lambda| keeps the planted x_k strictly upper triangular
    order = sorted(range(n), key=lambda i: (abs(eigs[i]), labels[i]))
    return [eigs[i] for i in order], [labels[i] for i in order]


def random_aligned_parts(spec: GeneratorSpec, cfg: ModulusConfig):
    """(a0, xs) in eigen-coordinates with planted resonances and unipotent part."""
    rng = Rng(derive_seed(spec.seed, 1))
    n = spec.n
    eigs, labels = _random_eigen_data(rng, n, spec.resonance_menu, cfg)
    u = np.eye(n, dtype=np.complex128)
    for r in range(n):
        for c in range(r + 1, n):
            if labels[r] == labels[c] and rng.random() < 0.6:
                u[r, c] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    a0 = np.diag(eigs) @ u
    K = 0
    planted = {}
    for r in range(n):
        for c in range(n):
            (cr, rr, zr), (cc, rc, zc) = labels[r], labels[c]
            d = rr - rc
            if cr == cc and zr == zc and d.denominator == 1 and d >= 1:
                planted.setdefault(int(d), []).append((r, c))
                K = max(K, int(d))
    xs = []
    for k in range(1, K + 1):
        x = np.zeros((n, n), dtype=np.complex128)
        for (r, c) in planted.get(k, []):
            if rng.random() < 0.7:
                x[r, c] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        xs.append(x)
    return a0, xs


def random_aligned_loop(spec: GeneratorSpec, cfg: ModulusConfig, hide_basis=True) -> LaurentMatrix:
    """Expanded aligned polynomial, optionally conjugated by a random constant."""
    a0, xs = random_aligned_parts(spec, cfg)
    n = spec.n
    out = LaurentMatrix.constant(a0)
    for k, x in enumerate(xs, start=1):
        if np.any(x):
            out = multiply(out, exp_nilpotent_monomial(x, k))
    if hide_basis:
        rng = Rng(derive_seed(spec.seed, 2))
        P = np.eye(n) + rng.complex_matrix(n, n, 0.5 / n)
        Pinv = np.linalg.inv(P)
        out = out.map_coeffs(lambda M: P @ M @ Pinv)
    return out.trimmed()


def random_invariant(rng: Rng, rank: int, min_sep: float = 0.02) -> EllipticInvariant:
    """Random multiset of (point, size) of the given rank.

    Distinct points are at torus distance >= min_sep; points repeat with
    some probability so multiplicities and mixed sizes occur.
    """
    pts = []
    ents = []
    left = rank
    while left > 0:
        size = rng.randint(1, min(left, 3))
        if pts and rng.random() < 0.3:
            p = rng.choice(pts)
        elif rng.random() < 0.2:
            p = EPoint(0.0, 0.0)
        else:
            for _ in range(100):
                p = EPoint(rng.random(), rng.random())
                if all(p.distance(o) >= min_sep for o in pts):
                    break
        if all(p.distance(o) >= min_sep or p.distance(o) == 0 for o in pts):
            if p not in pts:
                pts.append(p)
            ents.append((p, size))
            left -= size
    return EllipticInvariant(tuple(ents))


def perturb_invariant(rng: Rng, inv: EllipticInvariant, min_sep=0.02) -> EllipticInvariant:
    """A different invariant of the same rank (split a block or move a point)."""
    ents = list(inv.entries)
    i = rng.randint(0, len(ents) - 1)
    p, s = ents[i]
    if s > 1 and rng.random() < 0.5:
        ents[i:i + 1] = [(p, s - 1), (p, 1)]
    else:
        shift = rng.uniform(min_sep * 2, 0.5)
        ents[i] = (EPoint(p.t_tau, p.t_one + shift), s)
    return EllipticInvariant(tuple(ents))


def random_integral_class_pair(spec: GeneratorSpec, cfg: ModulusConfig):
    """(a, a2, expected_equivalent) with ground truth by construction."""
    rng = Rng(derive_seed(spec.seed, 3))
    kind = rng.randint(0, 2)
    if kind == 0:
        a = random_aligned_loop(spec, cfg)
        g = random_polynomial_loop(replace(spec, seed=derive_seed(spec.seed, 4),
                                           deg=min(spec.deg, 3)))
        return a, twisted_conjugate(g, a, cfg), True
    inv = random_invariant(rng, spec.n)
    if kind == 1:
        other = perturb_invariant(rng, inv)
        return synthesize(inv, cfg), synthesize(other, cfg), False
    # the same points, one of them moved by a lattice unit (multiplied by q)
    a = synthesize(inv, cfg)
    M = a.coeff(0).copy()
    s = inv.entries[0][1]
    M[:s, :s] *= cfg.q
    return a, LaurentMatrix.constant(M), True


def run_harness(seed: int, trials: int, cfg: ModulusConfig,
                tol: ToleranceConfig = DEFAULT_TOLERANCE, max_rank: int = 4):
    """Yield one report record per trial."""
    for t in range(trials):
        s = derive_seed(seed, 100 + t)
        n = 1 + Rng(s).randint(0, max_rank - 1)
        spec = GeneratorSpec(seed=s, n=n, deg=2)
        try:
            a, a2, expected = random_integral_class_pair(spec, cfg)
            got = equivalent(a, a2, cfg, tol)
            ok = got == expected
            detail = f"n={n} expected={expected} got={got}"
        except Exception as exc:  # reported, not raised
            ok = False
            detail = f"{type(exc).__name__}: {exc}"
        yield {"seed": s, "case": f"class_pair[{t}]", "pass": bool(ok), "detail": detail}


def harness_jsonl(records) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


__all__ = ["Rng", "GeneratorSpec", "random_polynomial_loop", "random_aligned_loop",
           "random_aligned_parts", "random_invariant", "random_integral_class_pair",
           "run_harness", "harness_jsonl", "derive_seed", "splitmix64", "unipotent_block"]
