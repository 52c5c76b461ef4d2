import numpy as np
from hypothesis import given, settings, strategies as st

from qloops.intertwiner import (certificate_conjugator, hom_dimension_measured,
                                intertwining_residual, solve_intertwiners, support_bound)
from qloops.invariant import hom_dimension_formula, synthesize
from qloops.series import LaurentMatrix
from qloops.testkit import Rng, random_invariant

J2 = LaurentMatrix.constant([[1, 1], [0, 1]])
ONE = LaurentMatrix.identity(1)


def test_support_bound_examples(cfg, lam):
    s = LaurentMatrix.constant(np.diag([lam, 0.3 + 0.9j]))
    assert support_bound(s, s, cfg) == (0, 0)
    assert support_bound(LaurentMatrix.identity(2), LaurentMatrix.identity(2), cfg) == (0, 0)
    a = LaurentMatrix.constant(np.diag([lam, cfg.q * lam]))
    lo, hi = support_bound(a, LaurentMatrix.constant(lam * np.eye(2)), cfg)
    assert lo <= -1 <= hi


def test_solution_examples(cfg, lam):
    d = LaurentMatrix.constant(np.diag([2.0, 3.0 - 1j]))
    assert solve_intertwiners(d, d, (0, 0), cfg).dim == 2
    a = LaurentMatrix.constant(np.diag([lam, cfg.q * lam]))
    a2 = LaurentMatrix.constant(lam * np.eye(2))
    sp = solve_intertwiners(a, a2, (-1, 0), cfg)
    assert sp.dim >= 1
    g = LaurentMatrix.diagonal_monomials([0, -1])
    assert intertwining_residual(g, a, a2, cfg) < 1e-12
    assert solve_intertwiners(ONE, J2, (0, 0), cfg).dim == 1


def test_hom_examples(cfg):
    assert hom_dimension_measured(ONE, ONE, cfg) == 1
    assert hom_dimension_measured(ONE, J2, cfg) == 1
    assert hom_dimension_measured(J2, J2, cfg) == 2


def test_certificates(cfg, lam):
    a = LaurentMatrix.constant(np.diag([lam, cfg.q * lam]))
    assert np.allclose(certificate_conjugator(a, a, cfg).coeff(0), np.eye(2))
    a2 = LaurentMatrix.constant(lam * np.eye(2))
    g = certificate_conjugator(a, a2, cfg)
    assert g is not None and intertwining_residual(g, a, a2, cfg) < 1e-9
    assert certificate_conjugator(a2, LaurentMatrix.constant(lam * J2.coeff(0)), cfg) is None


def test_lc_lqc_monomial(cfg, lam):
    a, a2 = LaurentMatrix.constant([[lam]]), LaurentMatrix.constant([[cfg.q * lam]])
    assert hom_dimension_measured(a, a2, cfg) == 1
    g = certificate_conjugator(a, a2, cfg)
    assert g.window == (1, 1)


@settings(max_examples=25)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(1, 3))
def test_formula_matches_oracle(seed, r1, r2):
    from qloops.config import DEFAULT_MODULUS as cfg

    rng = Rng(seed)
    i1, i2 = random_invariant(rng, r1), random_invariant(rng, r2)
    got = hom_dimension_measured(synthesize(i1, cfg), synthesize(i2, cfg), cfg)
    assert got == hom_dimension_formula(i1, i2)


def test_non_polynomial_rejected(cfg):
    import pytest
    from qloops.errors import NotPolynomial

    with pytest.raises(NotPolynomial):
        support_bound(ONE.truncate(3), ONE, cfg)
