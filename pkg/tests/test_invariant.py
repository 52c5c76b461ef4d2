import numpy as np
from hypothesis import given, strategies as st

from qloops.invariant import (EllipticInvariant, EPoint, classify, clebsch_gordan, dual_data,
                              equivalent, hom_dimension_formula, sum_data, synthesize,
                              tensor_data, invariants_equal)
from qloops.series import LaurentMatrix
from qloops.testkit import Rng, random_invariant

O = EllipticInvariant(((EPoint(0, 0), 1),))
F2 = EllipticInvariant(((EPoint(0, 0), 2),))


def _pt(lam, cfg):
    return EPoint.from_value(lam, cfg)


def test_classify_examples(cfg, lam):
    assert classify(LaurentMatrix.identity(2), cfg) == EllipticInvariant(((EPoint(0, 0), 1),) * 2)
    assert classify(LaurentMatrix.constant([[1, 1], [0, 1]]), cfg) == F2
    inv = classify(LaurentMatrix.constant([[cfg.q_power(0.5)]]), cfg)
    assert invariants_equal(inv, EllipticInvariant(((EPoint(0.5, 0), 1),)), 1e-9)
    a = LaurentMatrix.from_terms({0: np.diag([lam, cfg.q * lam]), 1: [[0, 1], [0, 0]]}, 2, (0, 1),
                                 exact=True)
    p = _pt(lam, cfg)
    assert abs(p.t_tau - 1 / np.pi) < 1e-12 and abs(p.t_one - np.e / 10) < 1e-12
    assert invariants_equal(classify(a, cfg), EllipticInvariant(((p, 1), (p, 1))), 1e-9)
    inv = classify(LaurentMatrix.constant(lam * np.array([[1, 1], [0, 1]])), cfg)
    assert invariants_equal(inv, EllipticInvariant(((p, 2),)), 1e-9)


def test_equivalent_examples(cfg, lam):
    a = LaurentMatrix.constant(np.diag([lam, cfg.q * lam]))
    assert equivalent(a, a, cfg)
    assert equivalent(a, LaurentMatrix.constant(lam * np.eye(2)), cfg)
    assert not equivalent(LaurentMatrix.constant(lam * np.eye(2)),
                          LaurentMatrix.constant(lam * np.array([[1, 1], [0, 1]])), cfg)


def test_synthesize_examples(cfg):
    assert np.allclose(synthesize(O, cfg).coeff(0), [[1]])
    assert np.allclose(synthesize(F2, cfg).coeff(0), [[1, 1], [0, 1]])
    half = EllipticInvariant(((EPoint(0.5, 0), 1),))
    assert np.isclose(synthesize(half, cfg).coeff(0)[0, 0], cfg.q_power(0.5))


def test_tensor_dual_sum_examples():
    p, p2 = EPoint(0.2, 0.3), EPoint(0.9, 0.8)
    t = tensor_data(EllipticInvariant(((p, 1),)), EllipticInvariant(((p2, 1),)))
    assert invariants_equal(t, EllipticInvariant(((EPoint(0.1, 0.1), 1),)), 1e-12)
    assert tensor_data(F2, F2) == EllipticInvariant(((EPoint(0, 0), 3), (EPoint(0, 0), 1)))
    d = dual_data(EllipticInvariant(((p, 2),)))
    assert invariants_equal(d, EllipticInvariant(((EPoint(0.8, 0.7), 2),)), 1e-12)
    assert sum_data(O, F2).rank == 3
    assert clebsch_gordan(2, 3) == [4, 2]


def test_hom_formula_examples():
    assert hom_dimension_formula(O, O) == 1
    assert hom_dimension_formula(O, F2) == 1
    assert hom_dimension_formula(F2, F2) == 2


def test_epoint_wraps():
    assert EPoint(1.0 - 1e-15, -1.0).key() == (0.0, 0.0)
    assert EPoint(0.25, 0.75).distance(EPoint(0.75, 0.25)) == np.hypot(0.5, 0.5)


def test_json_rank_check():
    import pytest

    doc = F2.to_json()
    assert EllipticInvariant.from_json(doc) == F2
    doc["rank"] = 3
    with pytest.raises(ValueError):
        EllipticInvariant.from_json(doc)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_round_trip(seed, rank):
    from qloops.config import DEFAULT_MODULUS as cfg

    inv = random_invariant(Rng(seed), rank)
    assert invariants_equal(classify(synthesize(inv, cfg), cfg), inv, 1e-9)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3), st.integers(1, 3))
def test_dual_is_involution_and_tensor_rank(seed, r1, r2):
    rng = Rng(seed)
    a, b = random_invariant(rng, r1), random_invariant(rng, r2)
    assert invariants_equal(dual_data(dual_data(a)), a, 1e-12)
    assert tensor_data(a, b).rank == r1 * r2
    assert hom_dimension_formula(a, b) == hom_dimension_formula(dual_data(b), dual_data(a))
