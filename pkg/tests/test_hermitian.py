import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irspower.numerics import HermitianMatrix, eigh_hermitian, hermitian_part, psd_sqrt_factor


def random_hermitian(dim, rng):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitian_part(a)


def test_construction_symmetrizes():
    a = np.array([[1.0, 2.0 + 1j], [0.0, 3.0]])
    m = HermitianMatrix(a)
    assert np.array_equal(m.entries, m.entries.conj().T)
    assert m.dim == 2


def test_non_square_rejected():
    with pytest.raises(ValueError):
        HermitianMatrix(np.zeros((2, 3)))


def test_eigendecomposition_round_trip():
    rng = np.random.default_rng(1234)
    for _ in range(100):
        dim = int(rng.integers(1, 65))
        m = random_hermitian(dim, rng)
        w, u = eigh_hermitian(m)
        assert np.isrealobj(w)
        recon = (u * w) @ u.conj().T
        assert np.linalg.norm(recon - m) <= 1e-9 * max(np.linalg.norm(m), 1e-30)


def test_sqrt_factor_identity():
    f = psd_sqrt_factor(np.eye(3, dtype=complex))
    assert np.allclose(f @ f.conj().T, np.eye(3), atol=1e-12)


def test_sqrt_factor_diagonal():
    m = np.diag([2.0, 0.0]).astype(complex)
    f = psd_sqrt_factor(m)
    assert np.linalg.norm(f @ f.conj().T - m) <= 1e-10


def test_sqrt_factor_random_psd():
    rng = np.random.default_rng(7)
    g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    m = g.conj().T @ g
    f = psd_sqrt_factor(m)
    assert np.linalg.norm(f @ f.conj().T - m) <= 1e-10 * (1 + np.linalg.norm(m))


def test_sqrt_factor_clips_small_negatives():
    m = np.diag([1.0, -5e-9]).astype(complex)
    f = psd_sqrt_factor(m)
    assert np.allclose(f @ f.conj().T, np.diag([1.0, 0.0]), atol=1e-12)


def test_sqrt_factor_rejects_indefinite():
    with pytest.raises(ValueError):
        psd_sqrt_factor(np.diag([1.0, -1.0]).astype(complex))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=24), st.integers(min_value=0, max_value=2**32 - 1))
def test_sqrt_factor_reconstructs(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    f = psd_sqrt_factor(m)
    assert np.linalg.norm(f @ f.conj().T - m) <= 1e-10 * (1 + np.linalg.norm(m))
