"""Small numerical helpers shared by every module."""

from __future__ import annotations

import numpy as np
import scipy.linalg
from scipy.stats import ortho_group, unitary_group

from .errors import DimensionError, NumericalError, StructureError

TOL_STRUCT = 1e-9
TOL_CLUSTER = 1e-8
TOL_RANK = 1e-8  # relative to the largest singular value


def as_cmatrix(m, name="matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise StructureError(f"{name} has non-finite entries")
    return a


def same_dim(*mats) -> int:
    n = mats[0].shape[0]
    for m in mats[1:]:
        if m.shape != (n, n):
            raise DimensionError(f"dimension mismatch: {mats[0].shape} vs {m.shape}")
    return n


def sym_unitary(m, name="x", tol=TOL_STRUCT) -> np.ndarray:
    """Symmetrize ``m`` and check that it is a symmetric unitary matrix."""
    a = as_cmatrix(m, name)
    asym = np.linalg.norm(a - a.T)
    if asym > tol:
        raise StructureError(f"{name} is not symmetric (|m - m^T|_F = {asym:.3g})")
    a = (a + a.T) / 2
    defect = np.linalg.norm(a @ a.conj() - np.eye(a.shape[0]))
    if defect > tol:
        raise StructureError(f"{name} is not unitary (|m conj(m) - I|_F = {defect:.3g})")
    return a


def check_unitary(u, name="u", tol=TOL_STRUCT) -> np.ndarray:
    a = as_cmatrix(u, name)
    defect = np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0]))
    if defect > tol:
        raise StructureError(f"{name} is not unitary (|u* u - I|_F = {defect:.3g})")
    return a


def op_norm(m: np.ndarray) -> float:
    # square root of the top eigenvalue of the Gram matrix
    gram = m.conj().T @ m
    return float(np.sqrt(max(np.linalg.eigvalsh(gram)[-1], 0.0)))


def wrap_angle(theta):
    """Map angles to (-pi, pi]."""
    w = np.mod(np.asarray(theta, dtype=float) + np.pi, 2 * np.pi) - np.pi
    w = np.where(w <= -np.pi, w + 2 * np.pi, w)
    return float(w) if np.ndim(w) == 0 else w


def chord(a: float, b: float) -> float:
    """Distance |e^{ia} - e^{ib}|."""
    return float(2 * abs(np.sin((a - b) / 2)))


def unitary_eig(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and orthonormal eigenvectors of a unitary matrix.

    Uses the complex Schur form; for a normal matrix the triangular factor is
    diagonal, so the Schur vectors are eigenvectors.
    """
    try:
        t, z = scipy.linalg.schur(u, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"eigen kernel failed: {exc}") from exc
    off = np.linalg.norm(np.triu(t, 1))
    if off > 1e-6 * max(1.0, np.linalg.norm(t)):
        raise NumericalError(f"matrix is not normal (Schur off-diagonal {off:.3g})")
    lam = np.diag(t).copy()
    return lam, z


def random_sym_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed point of Sigma: u u^T for a Haar unitary u."""
    u = unitary_group.rvs(n, random_state=rng) if n > 1 else np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return u @ u.T


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.ones((1, 1))
    return ortho_group.rvs(n, random_state=rng)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return unitary_group.rvs(n, random_state=rng)


def random_symmetric(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    a = (a + a.T) / 2
    return scale * a / op_norm(a)

