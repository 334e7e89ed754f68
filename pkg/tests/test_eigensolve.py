import numpy as np
import pytest

import spinrelax as sr
from spinrelax.errors import NotHermitian, TooLarge

from conftest import random_model


def test_fig1_spectrum_and_classes(fig1_system):
    _, h = fig1_system
    spectrum = sr.eig_dense(h.build_dense())
    expected = [-2.0] + [-1.0] * 3 + [0.0] * 7 + [1.0] * 5
    assert np.abs(spectrum.eigenvalues - expected).max() < 1e-12
    assert [len(c) for c in spectrum.classes] == [1, 3, 7, 5]


def test_zero_matrix():
    spectrum = sr.eig_dense(np.zeros((2, 2)))
    assert np.array_equal(spectrum.eigenvalues, [0.0, 0.0])
    assert len(spectrum.classes) == 1


def test_reconstruction_random_hermitian():
    rng = np.random.default_rng(0)
    mat = rng.standard_normal((32, 32)) + 1j * rng.standard_normal((32, 32))
    mat = (mat + mat.conj().T) / 2
    s = sr.eig_dense(mat)
    recon = s.vectors @ np.diag(s.eigenvalues) @ s.vectors.conj().T
    assert np.abs(mat - recon).max() <= 1e-11
    assert np.abs(s.vectors.conj().T @ s.vectors - np.eye(32)).max() <= 1e-12


def test_phase_convention_deterministic():
    rng = np.random.default_rng(1)
    mat = rng.standard_normal((16, 16)) + 1j * rng.standard_normal((16, 16))
    mat = (mat + mat.conj().T) / 2
    a, b = sr.eig_dense(mat), sr.eig_dense(mat.copy())
    assert np.array_equal(a.vectors, b.vectors)
    for j in range(16):
        i = int(np.argmax(np.abs(a.vectors[:, j])))
        assert a.vectors[i, j].real > 0
        assert abs(a.vectors[i, j].imag) < 1e-13


def test_not_hermitian_rejected():
    with pytest.raises(NotHermitian):
        sr.eig_dense(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_too_large_rejected():
    with pytest.raises(TooLarge):
        sr.eig_dense(np.zeros((2 ** 12 + 1, 2 ** 12 + 1)))


def test_lanczos_diagonal_matrix():
    diag = np.array([0.0, 1.0, 2.0, 3.0])
    result = sr.lanczos_ground(lambda v: diag * v, 4, seed=0)
    assert result.energy == pytest.approx(0.0, abs=1e-10)
    assert abs(result.vector[0]) == pytest.approx(1.0, abs=1e-8)
    assert result.multiplicity == 1


def test_lanczos_fig1_ground(fig1_system):
    p, h = fig1_system
    result = sr.lanczos_ground(lambda v: h.apply_array(v), p.dim, seed=1)
    assert result.energy == pytest.approx(-2.0, abs=1e-9)
    assert result.multiplicity == 1
    residual = np.linalg.norm(h.apply_array(result.vector) - result.energy * result.vector)
    assert residual <= 1e-9


def test_lanczos_matches_dense_spin_glass():
    p, table = random_model(5, 5, seed=77, omega=1.0, delta=0.3)
    h = sr.HamiltonianHandle(p, table)
    dense_e0 = np.linalg.eigvalsh(h.build_dense())[0]
    result = sr.lanczos_ground(lambda v: h.apply_array(v), p.dim, seed=2)
    assert result.energy == pytest.approx(dense_e0, abs=1e-9)


def test_lanczos_degenerate_multiplet_deterministic():
    """Two-fold degenerate ground space: seeded combination is reproducible
    and variational."""
    diag = np.array([-1.0, -1.0, 0.5, 1.0, 2.0, 3.0])
    a = sr.lanczos_ground(lambda v: diag * v, 6, seed=5)
    b = sr.lanczos_ground(lambda v: diag * v, 6, seed=5)
    assert a.multiplicity == 2
    assert np.array_equal(a.vector, b.vector)
    rayleigh = np.vdot(a.vector, diag * a.vector).real
    assert rayleigh <= -1.0 + 1e-9
    assert np.abs(a.vector[2:]).max() < 1e-7
