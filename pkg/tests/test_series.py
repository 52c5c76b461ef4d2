import numpy as np
import pytest
from hypothesis import given, strategies as st

from qloops.errors import NonInvertibleLeadingTerm, ShapeMismatch, ValuationError
from qloops.series import (LaurentMatrix, add, allclose, exp_nilpotent_monomial, exp_series,
                           from_json, galois_shift, invert, log_series, multiply, q_shift,
                           to_json, twisted_conjugate)

E12 = np.array([[0, 1], [0, 0]], dtype=complex)
UPPER = LaurentMatrix.from_terms({0: np.eye(2), 1: E12}, 2, (0, 1), exact=True)


def rand_poly(seed, n=2, deg=2, k_min=0, unit=True):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((deg + 1, n, n)) + 1j * rng.standard_normal((deg + 1, n, n))
    if unit:
        c[0] = np.eye(n) + 0.3 * c[0] / n
    return LaurentMatrix(c, k_min, 1, True)


# -- named examples --------------------------------------------------------

def test_identity_times_a_keeps_window():
    A = rand_poly(1)
    B = multiply(LaurentMatrix.identity(2), A)
    assert B.window == A.window and allclose(A, B, 1e-15)


def test_monomial_cancellation():
    z = LaurentMatrix.monomial(np.eye(2), 1)
    zi = LaurentMatrix.monomial(np.eye(2), -1)
    assert allclose(multiply(z, zi), LaurentMatrix.identity(2), 0)


def test_upper_unipotent_product():
    lower = LaurentMatrix.from_terms({0: np.eye(2), 1: -E12}, 2, (0, 1), exact=True)
    assert allclose(multiply(UPPER, lower), LaurentMatrix.identity(2), 0)


def test_invert_examples():
    I = LaurentMatrix.identity(2)
    assert allclose(invert(I), I, 0)
    d = LaurentMatrix.diagonal_monomials([1, 0])
    di = invert(d)
    assert allclose(di, LaurentMatrix.diagonal_monomials([-1, 0]), 1e-15)
    inv = invert(UPPER)
    assert np.allclose(inv.coeff(0), np.eye(2)) and np.allclose(inv.coeff(1), -E12)
    assert all(not np.any(inv.coeff(k)) for k in range(2, inv.k_max + 1))


def test_invert_mixed_row_valuations():
    a = LaurentMatrix.diagonal_monomials([0, -1])
    assert allclose(invert(a), LaurentMatrix.diagonal_monomials([0, 1]), 1e-15)


def test_invert_rejects_singular_leading_term():
    A = LaurentMatrix(np.array([[[1, 1], [1, 1]], [[0, 0], [0, 0]]]), 0, 1, False)
    with pytest.raises(NonInvertibleLeadingTerm):
        invert(A)


def test_q_shift_examples(cfg):
    A = rand_poly(2, deg=0)
    assert allclose(q_shift(A, cfg), A, 0)
    z = LaurentMatrix.monomial(np.eye(2), 1)
    assert np.allclose(q_shift(z, cfg).coeff(1), cfg.q * np.eye(2))
    zh = LaurentMatrix.monomial(np.eye(2), 1, m_cov=2)
    assert np.allclose(q_shift(zh, cfg).coeff(1), np.exp(1j * np.pi * cfg.tau) * np.eye(2))


def test_twisted_conjugate_examples(cfg, lam):
    a = rand_poly(3)
    assert allclose(twisted_conjugate(LaurentMatrix.identity(2), a, cfg), a, 1e-14)
    c = LaurentMatrix.constant([[2.5 - 1j]])
    r = twisted_conjugate(LaurentMatrix.monomial([[1.0]], 1), c, cfg)
    assert r.window == (0, 0) and np.isclose(r.coeff(0)[0, 0], cfg.q * (2.5 - 1j))
    g = LaurentMatrix.diagonal_monomials([0, -1])
    a = LaurentMatrix.constant(np.diag([lam, cfg.q * lam]))
    r = twisted_conjugate(g, a, cfg)
    assert r.is_constant(1e-14) and np.allclose(r.coeff(0), lam * np.eye(2), atol=1e-16)


def test_exp_log_examples():
    with pytest.raises(ValuationError):
        exp_series(LaurentMatrix.constant(np.eye(2)))
    assert allclose(exp_series(LaurentMatrix.monomial(np.zeros((2, 2)), 1)),
                    LaurentMatrix.identity(2), 0)
    zN = LaurentMatrix.monomial(E12, 1)
    e = exp_series(zN)
    assert e.exact and allclose(e, UPPER, 0)
    lg = log_series(UPPER)
    assert lg.exact and allclose(lg, zN, 0)


def test_galois_shift_examples():
    A = rand_poly(4)
    assert allclose(galois_shift(A), A, 0)
    zh = LaurentMatrix.monomial(np.eye(2), 1, m_cov=2)
    assert np.allclose(galois_shift(zh).coeff(1), -np.eye(2))
    z3 = LaurentMatrix.monomial(np.eye(2), 1, m_cov=3)
    assert allclose(galois_shift(galois_shift(galois_shift(z3))), z3, 1e-14)


def test_shape_and_covering_errors():
    with pytest.raises(ShapeMismatch):
        multiply(LaurentMatrix.identity(2), LaurentMatrix.identity(3))
    with pytest.raises(ShapeMismatch):
        multiply(LaurentMatrix.identity(2), LaurentMatrix.identity(2, m_cov=2))


def test_truncated_product_window():
    A = rand_poly(5).truncate(3)  # known to order 3
    B = rand_poly(6, k_min=-1)  # exact, valuation -1
    P = multiply(A, B)
    assert P.window == (-1, 2) and not P.exact


def test_exp_nilpotent_monomial_matches_series():
    x = np.triu(np.arange(1, 10).reshape(3, 3), 1).astype(complex)
    a = exp_nilpotent_monomial(x, 2)
    b = exp_series(LaurentMatrix.monomial(x, 2))
    assert allclose(a, b, 1e-15)


# -- properties ------------------------------------------------------------

seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds, seeds, seeds, st.integers(1, 3))
def test_multiply_associative(s1, s2, s3, n):
    A, B, C = rand_poly(s1, n), rand_poly(s2, n, k_min=-1), rand_poly(s3, n)
    assert allclose(multiply(multiply(A, B), C), multiply(A, multiply(B, C)), 1e-12)


@given(seeds, st.integers(1, 4), st.integers(0, 3))
def test_inverse_is_two_sided(seed, n, deg):
    A = rand_poly(seed, n, deg)
    Ai = invert(A, 16)
    # rounding in A A^-1 scales with the (geometrically growing) inverse terms
    bound = 1e-12 * A.scale() * Ai.scale()
    for P in (multiply(A, Ai), multiply(Ai, A)):
        for k, M in P.terms():
            assert np.abs(M - (np.eye(n) if k == 0 else 0)).max() < bound


@given(seeds, seeds)
def test_q_shift_is_multiplicative(s1, s2):
    from qloops.config import DEFAULT_MODULUS as cfg

    A, B = rand_poly(s1), rand_poly(s2, k_min=-2)
    assert allclose(q_shift(multiply(A, B), cfg), multiply(q_shift(A, cfg), q_shift(B, cfg)), 1e-12)


@given(seeds, st.integers(1, 3))
def test_log_exp_round_trip(seed, n):
    rng = np.random.default_rng(seed)
    c = 0.5 * (rng.standard_normal((3, n, n)) + 1j * rng.standard_normal((3, n, n)))
    X = LaurentMatrix(c, 1, 1, False).truncate(10)
    assert allclose(log_series(exp_series(X)), X, 1e-10)


@given(seeds, st.integers(1, 3), st.integers(-2, 2), st.integers(1, 3), st.booleans())
def test_json_round_trip(seed, n, k_min, m, exact):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((3, n, n)) + 1j * rng.standard_normal((3, n, n))
    A = LaurentMatrix(c, k_min, m, exact)
    B = from_json(to_json(A))
    assert B.window == A.window and B.m_cov == m and B.exact == exact
    assert np.array_equal(A.coeffs, B.coeffs)


@given(seeds, seeds, seeds)
def test_twisted_conjugation_is_an_action(s1, s2, s3):
    from qloops.config import DEFAULT_MODULUS as cfg

    a = rand_poly(s1)
    g1, g2 = rand_poly(s2, deg=1), rand_poly(s3, deg=1)
    lhs = twisted_conjugate(g2, twisted_conjugate(g1, a, cfg, trunc=12), cfg, trunc=12)
    rhs = twisted_conjugate(multiply(g2, g1), a, cfg, trunc=12)
    assert allclose(lhs.truncate(6), rhs.truncate(6), 1e-9)


@given(seeds, st.integers(2, 4))
def test_rescale_commutes_with_q_shift(seed, f):
    from qloops.config import DEFAULT_MODULUS as cfg

    A = rand_poly(seed, k_min=-1)
    assert allclose(q_shift(A, cfg).rescale(f), q_shift(A.rescale(f), cfg), 1e-12)
    assert allclose(A.rescale(f).reduce_covering(), A, 0)


def test_add_windows():
    A = rand_poly(7)
    B = rand_poly(8).truncate(1)
    S = add(A, B)
    assert S.window == (0, 1) and not S.exact
