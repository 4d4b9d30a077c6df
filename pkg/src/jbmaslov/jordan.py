"""The JB*-triple Sym(C^n) of complex symmetric matrices.

The conjugation on C^n is entrywise, so the bar of a matrix is its entrywise
conjugate and the invertible tripotents are the symmetric unitary matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import as_cmatrix, op_norm, same_dim, sym_unitary


def triple_product(x, y, z) -> np.ndarray:
    """``{x, y, z} = (x conj(y) z + z conj(y) x) / 2``."""
    x, y, z = as_cmatrix(x, "x"), as_cmatrix(y, "y"), as_cmatrix(z, "z")
    same_dim(x, y, z)
    yb = y.conj()
    return 0.5 * (x @ yb @ z + z @ yb @ x)


def quadratic(x, y) -> np.ndarray:
    """``Q(x) y = x conj(y) x``."""
    return triple_product(x, y, x)


def sym_basis(n: int) -> list[np.ndarray]:
    """Frobenius-orthonormal basis of Sym(C^n): E_jj, then (E_jk + E_kj)/sqrt2 for j < k."""
    basis = []
    for j in range(n):
        b = np.zeros((n, n), dtype=complex)
        b[j, j] = 1.0
        basis.append(b)
    s = 1 / np.sqrt(2)
    for j in range(n):
        for k in range(j + 1, n):
            b = np.zeros((n, n), dtype=complex)
            b[j, k] = b[k, j] = s
            basis.append(b)
    return basis


@dataclass(frozen=True)
class BergmanOperator:
    """``B(x, y) z = (1 - x conj(y)) z (1 - conj(y) x)`` on Sym(C^n)."""

    x: np.ndarray
    y: np.ndarray

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def __call__(self, z) -> np.ndarray:
        z = as_cmatrix(z, "z")
        same_dim(self.x, z)
        eye = np.eye(self.n)
        yb = self.y.conj()
        return (eye - self.x @ yb) @ z @ (eye - yb @ self.x)

    def matrix(self) -> np.ndarray:
        basis = sym_basis(self.n)
        # basis is real, so the Frobenius pairing needs no conjugation
        cols = [self(b) for b in basis]
        return np.array([[np.sum(bi * c) for c in cols] for bi in basis])


def bergman(x, y) -> BergmanOperator:
    x, y = as_cmatrix(x, "x"), as_cmatrix(y, "y")
    same_dim(x, y)
    return BergmanOperator(x, y)


def jordan_inverse(x, e) -> np.ndarray:
    """Inverse of ``x`` in the Jordan algebra with unit ``e``.

    For units this is ``x* = Q(e) x = e conj(x) e``.
    """
    x = sym_unitary(x, "x")
    e = sym_unitary(e, "e")
    same_dim(x, e)
    return e @ x.conj() @ e


def jordan_product(x, y, e) -> np.ndarray:
    """``x o y = {x, e, y}``."""
    return triple_product(x, e, y)


def is_tripotent(x, tol: float = 1e-9) -> bool:
    x = as_cmatrix(x, "x")
    return bool(np.linalg.norm(triple_product(x, x, x) - x) <= tol)


def in_sigma(x, tol: float = 1e-9) -> bool:
    """Membership in Sigma: symmetric, tripotent, and invertible."""
    x = as_cmatrix(x, "x")
    if np.linalg.norm(x - x.T) > tol or not is_tripotent(x, tol):
        return False
    return bool(np.linalg.svd(x, compute_uv=False)[-1] > 1 - np.sqrt(tol))


@dataclass(frozen=True)
class AxiomReport:
    triple_identity_residual: float
    norm_axiom_error: float


def validate_axioms(x, y, z, u, v) -> AxiomReport:
    """Residuals of the Jordan triple identity and of the cubic norm axiom.

    The identity residual is the Frobenius norm of

        {u,v,{x,y,z}} - {{u,v,x},y,z} + {x,{v,u,y},z} - {x,y,{u,v,z}}

    and the norm error is ``| |{x,x,x}| - |x|^3 | / |x|^3`` in operator norm
    (zero when x = 0).
    """
    x, y, z, u, v = (as_cmatrix(m, name) for m, name in zip((x, y, z, u, v), "xyzuv"))
    same_dim(x, y, z, u, v)
    tp = triple_product
    lhs = tp(u, v, tp(x, y, z))
    rhs = tp(tp(u, v, x), y, z) - tp(x, tp(v, u, y), z) + tp(x, y, tp(u, v, z))
    residual = float(np.linalg.norm(lhs - rhs))
    nx = op_norm(x)
    cube = op_norm(tp(x, x, x))
    err = 0.0 if nx == 0 else abs(cube - nx**3) / nx**3
    return AxiomReport(residual, float(err))
