import numpy as np
import pytest
from hypothesis import given, strategies as st

from qloops.align import align, aligned_form_from_parts
from qloops.descent import cocharacter_loop, descend, galois_cocycle
from qloops.errors import NotConstantCocycle, ResonanceMismatch
from qloops.resonance import is_reduced, resonance_analyze
from qloops.series import LaurentMatrix
from qloops.testkit import GeneratorSpec, random_aligned_loop


def _descend(a, cfg):
    af, _ = align(a, cfg, full=False)
    return descend(af, resonance_analyze(af.eigs, cfg), cfg)


def test_q_half(cfg):
    dd = _descend(LaurentMatrix.constant([[cfg.q_power(0.5)]]), cfg)
    assert dd.m == 2 and dd.phi == (1,)
    assert np.allclose(dd.c, [[1.0]]) and np.allclose(dd.theta_a, [[-1.0]])


def test_generic_constant(cfg):
    A = np.array([[2.0, 1.0], [0.0, -1.5 + 0.5j]])
    dd = _descend(LaurentMatrix.constant(A), cfg)
    assert dd.m == 1 and dd.phi == (0, 0) and np.allclose(dd.theta_a, np.eye(2))
    c, _ = dd.in_original_basis()
    assert np.allclose(c, A)


def test_lambda_q_lambda(cfg, lam):
    # the first member of a resonance component is its base
    af = aligned_form_from_parts(np.diag([lam, cfg.q * lam]), [np.zeros((2, 2))], cfg)
    dd = descend(af, None, cfg)
    assert dd.m == 1 and dd.phi == (0, 1)
    assert np.allclose(dd.c, lam * np.eye(2)) and np.allclose(dd.theta_a, np.eye(2))


def test_mismatched_x_rejected(cfg, lam):
    af = aligned_form_from_parts(np.diag([cfg.q * lam, lam]), [np.array([[0, 0], [1.0, 0]])], cfg)
    with pytest.raises(ResonanceMismatch):
        descend(af, None, cfg)


def test_galois_cocycle_examples():
    assert np.allclose(galois_cocycle(LaurentMatrix.identity(2)), np.eye(2))
    th = galois_cocycle(cocharacter_loop([1], 2, -1), 2)
    assert np.allclose(th, [[-1.0]]) and np.allclose(th @ th, [[1.0]])
    g = LaurentMatrix.diagonal_monomials([1, 0], 3)
    assert np.allclose(galois_cocycle(g, 3), np.diag([np.exp(2j * np.pi / 3), 1]))


def test_nonconstant_cocycle_rejected():
    g = LaurentMatrix.from_terms({0: np.eye(2), 1: np.array([[0, 1], [0, 0]])}, 2, (0, 1),
                                 m_cov=2, exact=True)
    with pytest.raises(NotConstantCocycle):
        galois_cocycle(g)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_witness_holds_on_random_aligned(seed, n):
    from qloops.config import DEFAULT_MODULUS as cfg

    dd = _descend(random_aligned_loop(GeneratorSpec(seed=seed, n=n, deg=2), cfg), cfg)
    assert dd.residual < 1e-9 * max(1.0, np.abs(dd.c).max())
    assert np.allclose(np.linalg.matrix_power(dd.theta_a, dd.m), np.eye(n), atol=1e-9)
    assert np.abs(dd.theta_a @ dd.c - dd.c @ dd.theta_a).max() < 1e-9
    assert is_reduced(dd.s_red, cfg)
