"""Real Lagrangian subspaces of R^2n and units of Sym(C^n).

Points of R^2n = R^n + R^n are written eta + xi with the symplectic form
``omega(eta + xi, eta' + xi') = <eta, xi'> - <xi, eta'>``. A unit ``x`` is sent
to the real Lagrangian whose complexification, pushed through the Cayley
transform ``C(eta + xi) = ((eta + i xi) + (i eta + xi)) / sqrt2``, is the
graph ``{x xi + xi}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import TOL_RANK, TOL_STRUCT, as_cmatrix, check_unitary, same_dim, sym_unitary
from .errors import DimensionError, StructureError


def omega_matrix(n: int) -> np.ndarray:
    """Gram matrix of the symplectic form: ``omega(a, b) = a^T W b``."""
    eye, zero = np.eye(n), np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def j_matrix(n: int) -> np.ndarray:
    """``J(eta + xi) = (-xi) + eta``."""
    return omega_matrix(n).T


def canonical_frame(frame: np.ndarray) -> np.ndarray:
    """Orthonormalize columns by QR and make the diagonal of R positive."""
    q, r = np.linalg.qr(frame)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs[None, :]


def check_lagrangian_frame(frame, tol: float = TOL_STRUCT) -> np.ndarray:
    f = np.asarray(frame, dtype=float)
    if f.ndim != 2 or f.shape[0] != 2 * f.shape[1] or f.shape[1] == 0:
        raise DimensionError(f"a Lagrangian frame must be 2n x n, got shape {f.shape}")
    n = f.shape[1]
    ortho = np.linalg.norm(f.T @ f - np.eye(n))
    if ortho > tol:
        raise StructureError(f"frame columns are not orthonormal (defect {ortho:.3g})")
    iso = np.linalg.norm(f.T @ omega_matrix(n) @ f)
    if iso > tol:
        raise StructureError(f"frame does not span an isotropic subspace (|F^T W F| = {iso:.3g})")
    return f


def lagrangian_frame(vectors) -> np.ndarray:
    """Canonical orthonormal frame of the span of ``vectors`` (columns), checked to be Lagrangian."""
    v = np.asarray(vectors, dtype=float)
    return check_lagrangian_frame(canonical_frame(v))


def lagrangian_to_tripotent(frame) -> np.ndarray:
    f = check_lagrangian_frame(frame)
    n = f.shape[1]
    top, bottom = f[:n], f[n:]
    # C(frame) = [(A + iB); (iA + B)] / sqrt2 spans the graph of x
    upper = top + 1j * bottom
    lower = 1j * top + bottom
    x = np.linalg.solve(lower.T, upper.T).T
    x = (x + x.T) / 2
    return sym_unitary(x, "image of the frame", tol=1e-7)


def tripotent_to_lagrangian(x) -> np.ndarray:
    x = sym_unitary(x, "x")
    n = x.shape[0]
    eye = np.eye(n)
    # C^{-1}(G(x)) is spanned by the columns of [(x - i); (1 - i x)]
    m = np.vstack([x - 1j * eye, eye - 1j * x])
    real_span = np.hstack([m.real, m.imag])
    u, _, _ = np.linalg.svd(real_span)
    return check_lagrangian_frame(canonical_frame(u[:, :n]), tol=1e-7)


def intersection_dim(frame_a, frame_b, tol: float = TOL_RANK) -> int:
    """dim(A cap B) from the rank of the stacked frames."""
    a, b = np.asarray(frame_a, float), np.asarray(frame_b, float)
    s = np.linalg.svd(np.hstack([a, b]), compute_uv=False)
    rank = int(np.sum(s > tol * max(s[0], 1.0)))
    return a.shape[0] - rank


def principal_angles(frame_a, frame_b) -> np.ndarray:
    s = np.linalg.svd(np.asarray(frame_a).T @ np.asarray(frame_b), compute_uv=False)
    return np.arccos(np.clip(s, -1.0, 1.0))


@dataclass(frozen=True)
class PairReport:
    dim_intersection: int
    transverse: bool
    fredholm: bool = True


def pair_report(x, y, tol_rank: float = TOL_RANK) -> PairReport:
    """Intersection data of the Lagrangians of two units, computed from ``y - x``."""
    x, y = sym_unitary(x, "x"), sym_unitary(y, "y")
    same_dim(x, y)
    s = np.linalg.svd(y - x, compute_uv=False)
    # units have unit scale, so floor the reference at 1
    deficiency = int(np.sum(s <= tol_rank * max(s[0], 1.0)))
    return PairReport(dim_intersection=deficiency, transverse=deficiency == 0)


def unitary_act(u, z) -> np.ndarray:
    """``u z u^T``: the action of U(n) on Sym(C^n) by triple automorphisms."""
    u = check_unitary(u, "u")
    z = as_cmatrix(z, "z")
    same_dim(u, z)
    return u @ z @ u.T
