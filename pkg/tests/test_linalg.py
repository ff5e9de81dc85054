import numpy as np
import pytest

from spinqrc.errors import ValidationError
from spinqrc.linalg import (MAX_DIM, hermitian_eigen, kron, matmul,
                            trace_distance, unitary_exp)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


def test_matmul_pauli_algebra():
    assert np.allclose(matmul(X, Y), 1j * Z)
    assert np.allclose(matmul(X, X), np.eye(2))


def test_matmul_rejects_mismatched_dims():
    with pytest.raises(ValidationError):
        matmul(X, np.eye(3))


def test_matmul_rejects_nonsquare():
    with pytest.raises(ValidationError):
        matmul(np.ones((2, 3)), np.ones((3, 2)))


def test_matmul_rejects_nonfinite():
    bad = np.array([[np.nan, 0], [0, 1]])
    with pytest.raises(ValidationError):
        matmul(bad, X)


def test_kron_block_structure():
    k = kron(X, Z)
    # top-right block is 1 * Z, top-left is 0 * Z
    assert np.allclose(k[:2, 2:], Z)
    assert np.allclose(k[:2, :2], 0)
    assert tuple(k[0].real) == (0, 0, 1, 0)


def test_kron_with_identity_is_block_diagonal():
    k = kron(np.eye(2), X)
    assert np.allclose(k[:2, :2], X)
    assert np.allclose(k[2:, 2:], X)
    assert np.allclose(k[:2, 2:], 0)


def test_kron_dimension_guard():
    a = np.eye(64)
    b = np.eye(MAX_DIM // 32)
    with pytest.raises(ValidationError):
        kron(a, b)


def test_hermitian_eigen_reconstructs():
    h = random_hermitian(8, seed=3)
    w, v = hermitian_eigen(h)
    assert np.all(np.diff(w) >= 0)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) < 1e-10
    assert np.linalg.norm(v.conj().T @ v - np.eye(8)) < 1e-12


def test_hermitian_eigen_rejects_nonhermitian():
    with pytest.raises(ValidationError):
        hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))


def test_unitary_exp_pauli_x_quarter_turn():
    # exp(-i (pi/2) X) = cos(pi/2) I - i sin(pi/2) X = -iX
    u = unitary_exp(X, np.pi / 2)
    assert np.allclose(u, -1j * X, atol=1e-12)


def test_unitary_exp_pauli_z_quarter_turn():
    u = unitary_exp(Z, np.pi / 2)
    assert np.allclose(u, np.diag([-1j, 1j]), atol=1e-12)


def test_unitary_exp_is_unitary():
    h = random_hermitian(16, seed=11)
    u = unitary_exp(h, 0.7)
    assert np.linalg.norm(u.conj().T @ u - np.eye(16)) < 1e-12


def test_unitary_exp_zero_time_is_identity():
    h = random_hermitian(4, seed=2)
    assert np.allclose(unitary_exp(h, 0.0), np.eye(4), atol=1e-14)


def test_trace_distance_orthogonal_pure_states():
    rho = np.diag([1.0, 0.0]).astype(complex)
    sigma = np.diag([0.0, 1.0]).astype(complex)
    assert trace_distance(rho, sigma) == pytest.approx(1.0)
    assert trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-15)


def test_trace_distance_ground_vs_plus():
    plus = 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)
    ground = np.diag([1.0, 0.0]).astype(complex)
    # eigenvalues of the difference are +-1/sqrt(2)
    assert trace_distance(ground, plus) == pytest.approx(1 / np.sqrt(2))


def test_trace_distance_shape_mismatch():
    with pytest.raises(ValidationError):
        trace_distance(np.eye(2), np.eye(4))
