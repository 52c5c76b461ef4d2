"""Windowed arithmetic for matrix Laurent series in z**(1/m).

A :class:`LaurentMatrix` stores the coefficients for exponents
``k_min .. k_max`` (in units of ``1/m_cov``).  Coefficients below
``k_min`` are zero.  Coefficients above ``k_max`` are unknown unless the
matrix is flagged ``exact``, in which case it is a Laurent polynomial and
they vanish.  Every operation returns the largest window its inputs justify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels
from .config import DEFAULT_TOLERANCE, ModulusConfig
from .errors import NonInvertibleLeadingTerm, ShapeMismatch, ValuationError

# relative size below which a leading coefficient counts as structurally zero
_ZERO_REL = 1e-13
_COND_MAX = 1e12


@dataclass(frozen=True, eq=False)
class LaurentMatrix:
    coeffs: np.ndarray
    k_min: int = 0
    m_cov: int = 1
    exact: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 3:
            raise ValueError("coeffs must have shape (terms, rows, cols)")
        if c.shape[1] < 1 or c.shape[2] < 1:
            raise ValueError("matrix size must be >= 1")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if int(self.m_cov) < 1:
            raise ValueError("m_cov must be >= 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "k_min", int(self.k_min))
        object.__setattr__(self, "m_cov", int(self.m_cov))
        object.__setattr__(self, "exact", bool(self.exact))

    # -- construction -------------------------------------------------
    @classmethod
    def constant(cls, M, m_cov=1, exact=True):
        M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
        return cls(M[None], 0, m_cov, exact)

    @classmethod
    def identity(cls, n, m_cov=1):
        return cls.constant(np.eye(n), m_cov)

    @classmethod
    def monomial(cls, M, k, m_cov=1):
        M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
        return cls(M[None], k, m_cov, True)

    @classmethod
    def from_terms(cls, terms, shape, window, m_cov=1, exact=False):
        """Build from ``{exponent: matrix}``; missing exponents are zero."""
        lo, hi = window
        rows, cols = (shape, shape) if isinstance(shape, int) else shape
        c = np.zeros((hi - lo + 1, rows, cols), dtype=np.complex128)
        for k, M in terms.items():
            if not lo <= k <= hi:
                raise ValueError(f"exponent {k} outside window {window}")
            c[k - lo] = M
        return cls(c, lo, m_cov, exact)

    @classmethod
    def diagonal_monomials(cls, exponents, m_cov=1, scale=None):
        """diag(scale_i * z**(e_i/m_cov)) as an exact Laurent polynomial."""
        e = [int(x) for x in exponents]
        n = len(e)
        lo, hi = min(e), max(e)
        c = np.zeros((hi - lo + 1, n, n), dtype=np.complex128)
        for i, k in enumerate(e):
            c[k - lo, i, i] = 1.0 if scale is None else scale[i]
        return cls(c, lo, m_cov, True)

    # -- basic accessors ----------------------------------------------
    @property
    def shape(self):
        return self.coeffs.shape[1:]

    @property
    def n(self):
        if self.shape[0] != self.shape[1]:
            raise ShapeMismatch("matrix is not square")
        return self.shape[0]

    @property
    def k_max(self):
        return self.k_min + self.coeffs.shape[0] - 1

    @property
    def window(self):
        return (self.k_min, self.k_max)

    def coeff(self, k):
        if k < self.k_min:
            return np.zeros(self.shape, dtype=np.complex128)
        if k > self.k_max:
            if self.exact:
                return np.zeros(self.shape, dtype=np.complex128)
            raise ValueError(f"coefficient {k} lies beyond the known window {self.window}")
        return self.coeffs[k - self.k_min]

    def terms(self):
        """Iterate ``(exponent, matrix)`` over the stored window."""
        for i, M in enumerate(self.coeffs):
            yield self.k_min + i, M

    def scale(self):
        return max(1.0, float(np.max(np.abs(self.coeffs)))) if self.coeffs.size else 1.0

    def valuation(self, rel=_ZERO_REL):
        """Smallest stored exponent carrying a non-negligible coefficient.

        Negligible is judged against the first few stored terms only, so a
        fast-growing tail (typical of truncated inverses) cannot hide the
        leading term.
        """
        norms = np.max(np.abs(self.coeffs), axis=(1, 2)) if self.coeffs.size else np.zeros(0)
        cut = rel * (norms[:8].max() if norms.size else 0.0)
        nz = np.nonzero(norms > cut)[0]
        if nz.size == 0:
            return None
        return self.k_min + int(nz[0])

    def is_constant(self, tol=1e-9):
        s = self.scale()
        for k, M in self.terms():
            if k != 0 and np.max(np.abs(M), initial=0.0) > tol * s:
                return False
        return True

    # -- reshaping ----------------------------------------------------
    def truncate(self, k_max):
        """Forget coefficients above ``k_max`` (result is not exact)."""
        k_max = min(k_max, self.k_max) if not self.exact else k_max
        if k_max < self.k_min:
            c = np.zeros((0,) + self.shape, dtype=np.complex128)
            return LaurentMatrix(c, self.k_min, self.m_cov, False)
        if k_max <= self.k_max:
            return LaurentMatrix(self.coeffs[: k_max - self.k_min + 1], self.k_min, self.m_cov, False)
        pad = np.zeros((k_max - self.k_max,) + self.shape, dtype=np.complex128)
        return LaurentMatrix(np.concatenate([self.coeffs, pad]), self.k_min, self.m_cov, False)

    def extend(self, k_max):
        """Zero-pad an exact matrix up to ``k_max`` (stays exact)."""
        if not self.exact:
            raise ValueError("only exact matrices can be extended")
        if k_max <= self.k_max:
            return self
        pad = np.zeros((k_max - self.k_max,) + self.shape, dtype=np.complex128)
        return LaurentMatrix(np.concatenate([self.coeffs, pad]), self.k_min, self.m_cov, True)

    def trimmed(self, rel=0.0):
        """Drop leading (and, for exact matrices, trailing) zero terms."""
        norms = np.max(np.abs(self.coeffs), axis=(1, 2)) if self.coeffs.size else np.zeros(0)
        cut = rel * (norms.max() if norms.size else 0.0)
        nz = np.nonzero(norms > cut)[0]
        if nz.size == 0:
            if self.exact:
                return LaurentMatrix(np.zeros((1,) + self.shape), 0, self.m_cov, True)
            return self
        first = int(nz[0])
        last = int(nz[-1]) if self.exact else self.coeffs.shape[0] - 1
        return LaurentMatrix(self.coeffs[first:last + 1], self.k_min + first, self.m_cov, self.exact)

    def rescale(self, m_new):
        """Re-express in units of ``1/m_new``; ``m_new`` must be a multiple of m_cov."""
        if m_new == self.m_cov:
            return self
        if m_new % self.m_cov:
            raise ShapeMismatch(f"cannot rescale m_cov={self.m_cov} to {m_new}")
        f = m_new // self.m_cov
        L = self.coeffs.shape[0]
        c = np.zeros(((L - 1) * f + 1,) + self.shape, dtype=np.complex128)
        c[::f] = self.coeffs
        return LaurentMatrix(c, self.k_min * f, m_new, self.exact)

    def reduce_covering(self, rel=0.0):
        """Smallest covering denominator that expresses the stored terms."""
        g = self.m_cov
        for k, M in self.terms():
            if np.max(np.abs(M), initial=0.0) > rel * self.scale():
                g = gcd(g, k)
        if g <= 1:
            return self
        lo = -((-self.k_min) // g)  # ceil
        hi = self.k_max // g
        c = np.stack([self.coeff(k * g) for k in range(lo, hi + 1)]) if hi >= lo else \
            np.zeros((0,) + self.shape)
        return LaurentMatrix(c, lo, self.m_cov // g, self.exact)

    # -- arithmetic sugar ---------------------------------------------
    def __matmul__(self, other):
        return multiply(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, other, -1.0)

    def map_coeffs(self, f):
        """Apply a constant-coefficient linear map to every coefficient."""
        return LaurentMatrix(np.stack([f(M) for M in self.coeffs]) if self.coeffs.size else self.coeffs,
                             self.k_min, self.m_cov, self.exact)

    def __repr__(self):
        return (f"LaurentMatrix(shape={self.shape}, window={self.window}, "
                f"m_cov={self.m_cov}, exact={self.exact})")


# -- helpers -----------------------------------------------------------

def common_covering(*mats):
    m = 1
    for A in mats:
        m = m * A.m_cov // gcd(m, A.m_cov)
    return [A.rescale(m) for A in mats]


def _upper(A):
    return math.inf if A.exact else A.k_max


def add(A, B, sign=1.0):
    """A + sign*B on the common window."""
    A, B = common_covering(A, B)
    if A.shape != B.shape:
        raise ShapeMismatch("shapes differ")
    lo = min(A.k_min, B.k_min)
    hi = min(_upper(A), _upper(B))
    exact = A.exact and B.exact
    if exact:
        hi = max(A.k_max, B.k_max)
    c = np.zeros((hi - lo + 1,) + A.shape, dtype=np.complex128)
    for X, s in ((A, 1.0), (B, sign)):
        top = min(X.k_max, hi)
        if top >= X.k_min:
            c[X.k_min - lo: top - lo + 1] += s * X.coeffs[: top - X.k_min + 1]
    return LaurentMatrix(c, lo, A.m_cov, exact)


def multiply(A: LaurentMatrix, B: LaurentMatrix) -> LaurentMatrix:
    """Cauchy product on the largest justified window.

    The coefficient at exponent k is known when every contributing pair is
    known, i.e. ``k <= min(top(A) + val(B), top(B) + val(A))``.
    """
    if A.m_cov != B.m_cov:
        raise ShapeMismatch(f"covering denominators differ ({A.m_cov} vs {B.m_cov})")
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    lo = A.k_min + B.k_min
    exact = A.exact and B.exact
    if exact:
        hi = A.k_max + B.k_max
    else:
        hi = min(_upper(A) + B.k_min, _upper(B) + A.k_min)
    out_len = max(hi - lo + 1, 0)
    shape = (A.shape[0], B.shape[1])
    if out_len == 0 or A.coeffs.shape[0] == 0 or B.coeffs.shape[0] == 0:
        return LaurentMatrix(np.zeros((out_len,) + shape), lo, A.m_cov, exact)
    c = kernels.convolve(A.coeffs, B.coeffs, out_len)
    return LaurentMatrix(c, lo, A.m_cov, exact)


def q_shift(A: LaurentMatrix, cfg: ModulusConfig) -> LaurentMatrix:
    """A(q z): coefficient at k/m scaled by exp(2 pi i tau k/m)."""
    ks = np.arange(A.k_min, A.k_max + 1)
    f = np.exp(2j * np.pi * cfg.tau * ks / A.m_cov)
    return LaurentMatrix(kernels.scale_rows_by_power(A.coeffs, f), A.k_min, A.m_cov, A.exact)


def galois_shift(A: LaurentMatrix) -> LaurentMatrix:
    """A(e^{2 pi i/m} z^{1/m})."""
    ks = np.arange(A.k_min, A.k_max + 1)
    f = np.exp(2j * np.pi * (ks % A.m_cov) / A.m_cov)
    return LaurentMatrix(kernels.scale_rows_by_power(A.coeffs, f), A.k_min, A.m_cov, A.exact)


def _leading_invertible(M):
    try:
        return np.linalg.cond(M) < _COND_MAX
    except np.linalg.LinAlgError:
        return False


def _invert_unit_normalized(A, trunc):
    """Inverse when the lowest nonzero coefficient is invertible."""
    v = A.valuation()
    if v is None:
        raise NonInvertibleLeadingTerm("matrix series is zero on its window")
    M = A.coeff(v)
    if not _leading_invertible(M):
        raise NonInvertibleLeadingTerm(f"leading coefficient at exponent {v} is singular")
    Minv = np.linalg.inv(M)
    if A.exact and not np.any(A.trimmed().coeffs[1:]):
        return LaurentMatrix(Minv[None], -v, A.m_cov, True)  # monomial: inverse is exact
    if A.exact:
        length = trunc + 1
    else:
        length = A.k_max - v + 1
    # B = M^{-1} z^{-v} A = I + N
    raw = A.coeffs[v - A.k_min:]
    N = np.matmul(Minv, raw[:length])
    if N.shape[0] < length:
        N = np.concatenate([N, np.zeros((length - N.shape[0],) + N.shape[1:])])
    N[0] = 0.0
    C = kernels.unit_series_inverse(N, length)
    C = np.matmul(C, Minv)
    return LaurentMatrix(C, -v, A.m_cov, False)


def _row_valuations(A):
    out = []
    for i in range(A.shape[0]):
        row = A.coeffs[:, i, :]
        norms = np.max(np.abs(row), axis=1)
        cut = _ZERO_REL * max(norms.max(initial=0.0), 1e-300)
        nz = np.nonzero(norms > cut)[0]
        if nz.size == 0:
            return None
        out.append(A.k_min + int(nz[0]))
    return out


def _transpose(A):
    return LaurentMatrix(np.transpose(A.coeffs, (0, 2, 1)), A.k_min, A.m_cov, A.exact)


def _invert_row_normalized(A, trunc):
    r = _row_valuations(A)
    if r is None:
        raise NonInvertibleLeadingTerm("a row vanishes on the window")
    D = LaurentMatrix.diagonal_monomials([-x for x in r], A.m_cov)
    B = multiply(D, A)
    lead = np.stack([B.coeff(0)])[0] if B.k_min <= 0 <= B.k_max else None
    if lead is None or not _leading_invertible(lead):
        raise NonInvertibleLeadingTerm("row-normalized leading coefficient is singular")
    Binv = _invert_unit_normalized(B.truncate(B.k_max) if not B.exact else B, trunc)
    return multiply(Binv, D)


def _invert_by_adjugate(A, trunc):
    """A^{-1} = adj(A) det(A)^{-1} for an exact Laurent polynomial matrix."""
    n = A.n
    d = A.k_max - A.k_min
    npts = n * d + 1
    theta0 = 0.3141592653589793
    zs = np.exp(1j * (theta0 + 2 * np.pi * np.arange(npts) / npts))
    powers = zs[:, None] ** np.arange(d + 1)[None, :]
    vals = np.einsum("pk,kij->pij", powers, A.coeffs)
    dets = np.linalg.det(vals)
    adj = np.empty_like(vals)
    idx = np.arange(n)
    for i in range(n):
        for j in range(n):
            minor = vals[:, idx != i][:, :, idx != j]
            adj[:, j, i] = (-1) ** (i + j) * (np.linalg.det(minor) if n > 1 else 1.0)
    # interpolate: f(z_p) = sum_k c_k z_p^k, k = 0..npts-1
    V = zs[:, None] ** np.arange(npts)[None, :]
    det_c = np.linalg.solve(V, dets)
    adj_c = np.linalg.solve(V, adj.reshape(npts, -1)).reshape(npts, n, n)
    det_poly = LaurentMatrix(det_c[:, None, None], n * A.k_min, A.m_cov, True).trimmed(1e-12)
    if det_poly.valuation() is None:
        raise NonInvertibleLeadingTerm("determinant vanishes identically")
    adj_poly = LaurentMatrix(adj_c, (n - 1) * A.k_min, A.m_cov, True).trimmed(1e-12)
    det_inv = _invert_unit_normalized(det_poly, trunc)
    return multiply(adj_poly, LaurentMatrix(det_inv.coeffs * np.eye(n)[None], det_inv.k_min,
                                            A.m_cov, False))


def invert(A: LaurentMatrix, trunc: int | None = None) -> LaurentMatrix:
    """Two-sided inverse on the justified window.

    Tries, in order: a scalar monomial normalization, row or column
    monomial normalizations, and (for exact polynomials) the adjugate
    formula.  Exact inputs produce series truncated ``trunc`` units past
    their valuation.
    """
    trunc = DEFAULT_TOLERANCE.trunc if trunc is None else trunc
    A.n  # square check
    try:
        return _invert_unit_normalized(A, trunc)
    except NonInvertibleLeadingTerm:
        pass
    try:
        return _invert_row_normalized(A, trunc)
    except NonInvertibleLeadingTerm:
        pass
    try:
        return _transpose(_invert_row_normalized(_transpose(A), trunc))
    except NonInvertibleLeadingTerm:
        pass
    if A.exact:
        return _invert_by_adjugate(A, trunc)
    raise NonInvertibleLeadingTerm(
        "no monomial normalization gives an invertible leading coefficient")


def twisted_conjugate(g: LaurentMatrix, a: LaurentMatrix, cfg: ModulusConfig,
                      g_inv: LaurentMatrix | None = None, trunc: int | None = None) -> LaurentMatrix:
    """g(q z) a(z) g(z)^{-1}.

    ``g_inv`` may supply a known inverse of ``g`` (e.g. an exact one).
    """
    if g_inv is None:
        g_inv = invert(g, trunc)
    g, a, g_inv = common_covering(g, a, g_inv)
    return multiply(multiply(q_shift(g, cfg), a), g_inv)


def _check_positive_valuation(X, what):
    for k, M in X.terms():
        if k <= 0 and np.max(np.abs(M), initial=0.0) > _ZERO_REL * X.scale():
            raise ValuationError(f"{what}: nonzero coefficient at exponent {k} <= 0")


def _power_series(X, coefficients, trunc):
    """sum_j coefficients(j) X^j for X of positive valuation."""
    n = X.n
    hi = X.k_max if not X.exact else max(trunc, 0)
    if not X.exact:
        hi = X.k_max
    Xp = X.trimmed()
    v = Xp.valuation()
    total = np.zeros((hi + 1, n, n), dtype=np.complex128)
    total[0] = coefficients(0) * np.eye(n)
    if v is None:
        return LaurentMatrix(total[:1] if X.exact else total, 0, X.m_cov, X.exact)
    # exact power series of X, truncated at hi
    Xc = np.zeros((hi + 1, n, n), dtype=np.complex128)
    for k, M in Xp.terms():
        if 0 < k <= hi:
            Xc[k] = M
    overflow = Xp.exact and Xp.k_max > hi
    power = Xc.copy()
    j = 1
    terminated = False
    while j * v <= hi:
        total += coefficients(j) * power
        j += 1
        if j * v > hi:
            break
        full = kernels.convolve(power, Xc, 2 * hi + 1)
        if np.any(full[hi + 1:] != 0):
            overflow = True
        power = full[: hi + 1]
        if not np.any(power):
            terminated = True
            break
    if X.exact and terminated and not overflow:
        return LaurentMatrix(total, 0, X.m_cov, True).trimmed()
    if X.exact and not overflow and (j * v > hi) and not np.any(power):
        return LaurentMatrix(total, 0, X.m_cov, True).trimmed()
    return LaurentMatrix(total, 0, X.m_cov, False)


def exp_series(X: LaurentMatrix, trunc: int | None = None) -> LaurentMatrix:
    """exp(X) for X of strictly positive valuation."""
    trunc = DEFAULT_TOLERANCE.trunc if trunc is None else trunc
    _check_positive_valuation(X, "exp_series")
    return _power_series(X, lambda j: 1.0 / math.factorial(j), trunc)


def log_series(A: LaurentMatrix, trunc: int | None = None) -> LaurentMatrix:
    """log(A) for A = I + (strictly positive valuation)."""
    trunc = DEFAULT_TOLERANCE.trunc if trunc is None else trunc
    n = A.n
    Y = add(A, LaurentMatrix.identity(n, A.m_cov), -1.0)
    _check_positive_valuation(Y, "log_series")
    return _power_series(Y, lambda j: 0.0 if j == 0 else (-1.0) ** (j + 1) / j, trunc)


def exp_nilpotent_monomial(x, k, m_cov=1):
    """exp(x z^{k/m_cov}) for nilpotent constant x, as an exact polynomial."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    terms = {0: np.eye(n, dtype=np.complex128)}
    p = np.eye(n, dtype=np.complex128)
    for j in range(1, n):
        p = p @ x / j
        if not np.any(p):
            break
        terms[j * k] = terms.get(j * k, 0) + p
    hi = max(terms)
    return LaurentMatrix.from_terms(terms, n, (0, hi), m_cov, exact=True)


def allclose(A: LaurentMatrix, B: LaurentMatrix, tol=1e-9, window=None) -> bool:
    """Coefficientwise agreement on the common known window, relative to scale."""
    A, B = common_covering(A, B)
    lo = min(A.k_min, B.k_min)
    hi = min(_upper(A), _upper(B))
    if hi == math.inf:
        hi = max(A.k_max, B.k_max)
    if window is not None:
        lo, hi = max(lo, window[0]), min(hi, window[1])
    s = max(A.scale(), B.scale())
    for k in range(lo, hi + 1):
        if np.max(np.abs(A.coeff(k) - B.coeff(k)), initial=0.0) > tol * s:
            return False
    return True


# -- JSON interchange ----------------------------------------------------

def _complex_matrix(rows):
    return np.array([[complex(x[0], x[1]) if isinstance(x, (list, tuple)) else complex(x)
                      for x in row] for row in rows], dtype=np.complex128)


def matrix_to_json(M):
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    return [[[float(x.real), float(x.imag)] for x in row] for row in M]


def matrix_from_json(rows):
    return _complex_matrix(rows)


def to_json(A: LaurentMatrix) -> dict:
    doc = {"n": A.shape[0], "m_cov": A.m_cov, "window": [A.k_min, A.k_max], "terms": []}
    if A.shape[0] != A.shape[1]:
        doc["shape"] = list(A.shape)
    for k, M in A.terms():
        if np.any(M):
            doc["terms"].append({"k": k, "matrix": matrix_to_json(M)})
    if A.exact:
        doc["exact"] = True
    return doc


def from_json(doc: dict) -> LaurentMatrix:
    n = int(doc["n"])
    shape = tuple(doc.get("shape", (n, n)))
    lo, hi = (int(x) for x in doc["window"])
    terms = {}
    for t in doc.get("terms", []):
        k = int(t["k"])
        M = _complex_matrix(t["matrix"])
        if M.shape != shape:
            raise ShapeMismatch(f"term at k={k} has shape {M.shape}, expected {shape}")
        terms[k] = terms.get(k, 0) + M
    return LaurentMatrix.from_terms(terms, shape, (lo, hi), int(doc.get("m_cov", 1)),
                                    bool(doc.get("exact", False)))
