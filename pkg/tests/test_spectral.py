import numpy as np
import pytest
from hypothesis import given, strategies as st

from qloops.errors import NonCommutingPair, SingularMatrix
from qloops.spectral import (centralizer_dimension, joint_block_decomposition,
                             jordan_decomposition, jordan_type, nilpotent_block_sizes,
                             weight_decomposition)

J2 = np.array([[1.0, 1.0], [0.0, 1.0]])


def test_unipotent_input():
    jd = jordan_decomposition(J2)
    assert np.allclose(jd.S, np.eye(2)) and np.allclose(jd.U, J2)


def test_semisimple_input():
    jd = jordan_decomposition(np.diag([2.0, 3.0]))
    assert np.allclose(jd.S, np.diag([2.0, 3.0])) and np.allclose(jd.U, np.eye(2))


def test_scaled_jordan_block():
    A = np.array([[2.0, 1.0], [0.0, 2.0]])
    jd = jordan_decomposition(A)
    assert np.allclose(jd.S, 2 * np.eye(2))
    assert np.allclose(jd.U, [[1, 0.5], [0, 1]])
    assert np.allclose(jd.S @ jd.U, A) and np.allclose(jd.S @ jd.U, jd.U @ jd.S)


def test_singular_rejected():
    with pytest.raises(SingularMatrix):
        jordan_decomposition(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_weights(cfg, lam):
    q = cfg.q
    assert weight_decomposition(jordan_decomposition(np.eye(2)), cfg).K == 0
    wd = weight_decomposition(jordan_decomposition(np.diag([lam, q * lam])), cfg)
    assert wd.resonant_exponents == (1,) and wd.K == 1
    # increasing modulus puts q lam first, so lam / (q lam) sits below... the
    # q-weight lives at (row of q lam, column of lam)
    assert wd.mask(1).sum() == 1
    wd2 = weight_decomposition(jordan_decomposition(np.diag([lam, q * q * lam])), cfg)
    assert wd2.resonant_exponents == (2,) and wd2.K == 2


def test_joint_blocks():
    out = joint_block_decomposition(np.eye(2), J2)
    assert len(out) == 1 and np.isclose(out[0][0], 1)
    assert [(round(b.real, 12), s) for b, s in out[0][1]] == [(1.0, 2)]
    out = joint_block_decomposition(np.diag([1.0, -1.0]), np.diag([5.0, 7.0]))
    got = {round(z.real): [(round(b.real, 9), s) for b, s in blk] for z, blk in out}
    assert got == {1: [(5.0, 1)], -1: [(7.0, 1)]}
    out = joint_block_decomposition(np.array([[-1.0]]), np.array([[1.0]]))
    assert np.isclose(out[0][0], -1) and out[0][1][0][1] == 1


def test_noncommuting_rejected():
    with pytest.raises(NonCommutingPair):
        joint_block_decomposition(np.diag([1.0, -1.0]), J2)


def _block_diag_jordan(eigs_sizes):
    n = sum(s for _, s in eigs_sizes)
    M = np.zeros((n, n), dtype=complex)
    i = 0
    for lam, s in eigs_sizes:
        M[i:i + s, i:i + s] = lam * (np.eye(s) + np.eye(s, k=1))
        i += s
    return M


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(1, 3)), min_size=1, max_size=3),
       st.integers(0, 2 ** 32 - 1))
def test_jordan_type_survives_similarity(blocks, seed):
    vals = [1.0, 2.0 - 1.0j, 0.05 + 0.02j]
    spec = [(vals[i], s) for i, s in blocks]
    M = _block_diag_jordan(spec)
    n = M.shape[0]
    rng = np.random.default_rng(seed)
    P = np.eye(n) + 0.3 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / n
    got = jordan_type(P @ M @ np.linalg.inv(P))
    want = sorted(spec, key=lambda t: (abs(t[0]), np.angle(t[0]), -t[1]))
    assert sorted(s for _, s in got) == sorted(s for _, s in want)
    for v in vals:
        assert sorted(s for b, s in got if abs(b - v) < 1e-6) == \
            sorted(s for b, s in spec if b == v)
    # centralizer dimension = sum over eigenvalues of sum min(a_i, a_j)
    cd = sum(min(a, b) for v in vals for a in [s for x, s in spec if x == v]
             for b in [s for x, s in spec if x == v])
    assert centralizer_dimension(P @ M @ np.linalg.inv(P)) == cd


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_decomposition_reconstructs(seed, n):
    rng = np.random.default_rng(seed)
    A = np.eye(n) + 0.5 * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    jd = jordan_decomposition(A)
    assert np.allclose(jd.S @ jd.U, A, atol=1e-9)
    assert np.allclose(jd.S @ jd.U, jd.U @ jd.S, atol=1e-8)
    T = np.linalg.inv(jd.P) @ A @ jd.P
    assert np.allclose(np.tril(T, -1), 0, atol=1e-8)


def test_nilpotent_sizes():
    N = np.zeros((4, 4))
    N[0, 1] = N[1, 2] = 1
    assert nilpotent_block_sizes(N) == [3, 1]
