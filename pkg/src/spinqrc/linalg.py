"""Dense complex matrix helpers for operators up to a few hundred rows.

Thin, validated wrappers around numpy's linear algebra. Everything here is
a pure function of its arguments; matrices are returned as fresh
``complex128`` arrays and never aliased to the inputs.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ValidationError

# Largest operator dimension the helpers will build. The simulator targets
# arrays of at most ten qubits (dim 1024); the guard only exists to turn a
# runaway Kronecker chain into a clear error instead of an allocation storm.
MAX_DIM = 4096

HERMITICITY_RTOL = 1e-10


class HermitianEigen(NamedTuple):
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(a: np.ndarray, name: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise ValidationError(f"{name} contains non-finite entries")
    return a


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two square matrices of equal dimension."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; block (i, j) of the result equals a[i, j] * b."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_DIM:
        raise ValidationError(f"kron result dimension {dim} exceeds limit {MAX_DIM}")
    return np.kron(a, b)


def hermitian_eigen(h: np.ndarray) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues ascend; eigenvector columns are orthonormal and satisfy
    ``h = V diag(w) V†`` to machine precision.
    """
    h = _as_square(h, "h")
    scale = np.linalg.norm(h)
    if scale > 0 and np.linalg.norm(h - h.conj().T) > HERMITICITY_RTOL * scale:
        raise ValidationError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(h)
    return HermitianEigen(w, v)


def unitary_exp(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t h) for Hermitian h, via eigendecomposition.

    The eigendecomposition route is exact in spirit for Hermitian input and
    lets callers reuse one decomposition across many times t.
    """
    w, v = hermitian_eigen(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of (a - b), for Hermitian a, b."""
    a = _as_square(a, "a")
    b = _as_square(b, "b")
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    diff = a - b
    return 0.5 * float(np.abs(np.linalg.eigvalsh(diff)).sum())
