import numpy as np
import pytest
from hypothesis import given, strategies as st

from qloops.align import align, aligned_form_from_parts, check_integral, triangularize
from qloops.errors import NotIntegralRepresentative
from qloops.series import LaurentMatrix, allclose, twisted_conjugate
from qloops.testkit import GeneratorSpec, random_aligned_loop, random_polynomial_loop

E12 = np.array([[0, 1], [0, 0]], dtype=complex)
E21 = E12.T.copy()


def test_rejects_negative_exponents():
    a = LaurentMatrix.diagonal_monomials([1, -1])
    with pytest.raises(NotIntegralRepresentative) as ei:
        check_integral(a)
    assert ei.value.entry["k"] == -1
    b = LaurentMatrix.from_terms({-1: np.array([[0, 1], [0, 1]]), 1: np.diag([1, 0])}, 2, (-1, 1),
                                 exact=True)
    with pytest.raises(NotIntegralRepresentative):
        check_integral(b)


def test_rejects_fractional_exponent_and_singular_constant():
    with pytest.raises(NotIntegralRepresentative):
        check_integral(LaurentMatrix.from_terms({0: np.eye(2), 1: E12}, 2, (0, 1), m_cov=2,
                                                exact=True))
    with pytest.raises(NotIntegralRepresentative):
        check_integral(LaurentMatrix.from_terms({0: E12 + np.diag([1, 0]), 1: np.eye(2)}, 2,
                                                (0, 1), exact=True))


def test_identity_accepted():
    assert allclose(check_integral(LaurentMatrix.identity(3)), LaurentMatrix.identity(3), 0)


def test_constant_is_aligned(cfg):
    a = LaurentMatrix.constant(np.diag([2.0, 3.0 + 1j]))
    af, conj = align(a, cfg)
    assert all(not np.any(x) for x in af.xs)
    assert conj.exact and conj.window == (0, 0)
    assert allclose(af.original_polynomial(), a, 1e-14)


def test_already_aligned_resonant_loop(cfg):
    c = 0.7 - 0.2j
    a0 = np.diag([1.0, cfg.q])
    a = LaurentMatrix.from_terms({0: a0, 1: a0 @ (c * E21)}, 2, (0, 1), exact=True)
    af, conj = align(a, cfg)
    assert af.K == 1
    # stored with increasing modulus: the q-eigenvalue comes first, so x_1
    # is c times the matrix unit that maps the 1-space to the q-space
    assert np.allclose(af.eigs, [cfg.q, 1.0])
    assert np.allclose(af.xs[0], c * E12)
    assert conj.exact and conj.window == (0, 0)
    assert allclose(af.original_polynomial(), a, 1e-12)


def test_nonresonant_term_solved_away(cfg, lam):
    a = LaurentMatrix.from_terms({0: np.diag([lam, cfg.q * lam]), 1: E12}, 2, (0, 1), exact=True)
    af, conj = align(a, cfg)
    assert all(np.abs(x).max() < 1e-12 for x in af.xs)
    assert np.allclose(sorted(af.eigs, key=abs), sorted([lam, cfg.q * lam], key=abs))
    assert allclose(twisted_conjugate(conj, a, cfg), af.polynomial(), 1e-9)


def test_triangularize():
    from qloops.config import DEFAULT_MODULUS as cfg

    q = cfg.q
    af = aligned_form_from_parts(np.diag([q, 1.0]), [np.array([[0, 0.5], [0, 0]])], cfg)
    assert triangularize(af) is af
    af2 = aligned_form_from_parts(np.diag([1.0, q]), [np.array([[0, 0], [0.5, 0]])], cfg)
    t = triangularize(af2)
    assert np.allclose(t.a0, np.diag([q, 1.0])) and np.allclose(t.xs[0], [[0, 0.5], [0, 0]])
    I = aligned_form_from_parts(np.eye(2), [], cfg)
    assert triangularize(I) is I


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_postconditions_and_idempotence(seed, n):
    from qloops.config import DEFAULT_MODULUS as cfg

    a = random_aligned_loop(GeneratorSpec(seed=seed, n=n, deg=2), cfg)
    g = random_polynomial_loop(GeneratorSpec(seed=seed + 1, n=n, deg=2))
    b = twisted_conjugate(g, a, cfg).truncate(10)
    af, conj = align(b, cfg)
    assert max(af.postcondition_residuals(cfg), default=0.0) < 1e-9
    assert allclose(twisted_conjugate(conj, b, cfg), af.polynomial(), 1e-9)
    af2, conj2 = align(af.polynomial(), cfg)
    assert allclose(conj2, LaurentMatrix.identity(n), 1e-9)
    assert np.allclose(af2.a0, af.a0, atol=1e-9)
    for x, y in zip(af.xs, af2.xs):
        assert np.allclose(x, y, atol=1e-9)
