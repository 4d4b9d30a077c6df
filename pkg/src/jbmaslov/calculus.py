"""Index identities on the universal cover of Sigma (finite dimension).

A point of the cover is a unit together with a real lift angle whose
exponential is ``det(x conj(e_ref))``. The two-point index is the Maslov
index of any path whose lift joins the two points; the Souriau-type index
``m`` is recovered from the two-point index taken relative to the first
point, and the triple index is the Kashiwara signature.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg

from ._linalg import TOL_CLUSTER, TOL_RANK, same_dim, sym_unitary, unitary_eig
from .errors import InputError, NumericalError
from .lagrangian import check_lagrangian_frame, omega_matrix, tripotent_to_lagrangian
from .maslov import det_argument_change, maslov_index
from .paths import FrameDiagonalPath, FrameRotationPath, TripotentPath, concatenate
from .spectral import cluster_angles, mu

LIFT_TOL = 1e-8


@dataclass(frozen=True)
class JordanDecomposition:
    """``x = W O diag(exp(i angles)) O^T W^T`` with O real orthogonal.

    ``transport`` is W, a unitary with ``e = W W^T`` (the identity when
    e = I). Columns of O are grouped by cluster.
    """

    frame: np.ndarray
    angles: np.ndarray
    transport: np.ndarray

    def reconstruct(self) -> np.ndarray:
        w = self.transport @ self.frame
        return (w * np.exp(1j * self.angles)[None, :]) @ w.T

    def idempotents(self, tol_cluster: float = TOL_CLUSTER) -> list[np.ndarray]:
        w = self.transport @ self.frame
        out = []
        for group in cluster_angles(self.angles, tol_cluster):
            v = w[:, group]
            out.append(v @ v.T)
        return out


def _decompose_at_identity(x: np.ndarray, tol_cluster: float) -> tuple[np.ndarray, np.ndarray]:
    lam, vecs = unitary_eig(x)
    angles = np.angle(lam)
    cols = []
    for group in cluster_angles(angles, tol_cluster):
        v = vecs[:, group]
        # each eigenspace is stable under conjugation, so it has a real basis
        u, _, _ = np.linalg.svd(np.hstack([v.real, v.imag]))
        cols.append(u[:, : len(group)])
    o = np.hstack(cols)
    u, _, vt = np.linalg.svd(o)
    o = u @ vt
    phi = np.angle(np.einsum("ij,jk,ki->i", o.T, x, o))
    return o, phi


def jordan_decompose(x, e, tol_cluster: float = TOL_CLUSTER) -> JordanDecomposition:
    x, e = sym_unitary(x, "x"), sym_unitary(e, "e")
    n = same_dim(x, e)
    if np.linalg.norm(e - np.eye(n)) <= 1e-14:
        o, phi = _decompose_at_identity(x, tol_cluster)
        return JordanDecomposition(o, phi, np.eye(n))
    w = takagi_sqrt(e)
    o, phi = _decompose_at_identity(w.conj().T @ x @ w.conj(), tol_cluster)
    return JordanDecomposition(o, phi, w)


def takagi_sqrt(e) -> np.ndarray:
    """Unitary ``w`` with ``e = w w^T`` (Takagi factor of a symmetric unitary)."""
    e = sym_unitary(e, "e")
    o, phi = _decompose_at_identity(e, TOL_CLUSTER)
    return o * np.exp(0.5j * phi)[None, :]


def real_log_rotation(r: np.ndarray) -> np.ndarray:
    """Real skew-symmetric ``A`` with ``expm(A) = r`` for ``r`` in SO(n)."""
    r = np.asarray(r, dtype=float)
    if np.linalg.det(r) < 0:
        raise InputError("rotation has determinant -1")
    t, z = scipy.linalg.schur(r, output="real")
    n = r.shape[0]
    log = np.zeros((n, n))
    minus_one = []
    i = 0
    while i < n:
        if i + 1 < n and abs(t[i + 1, i]) > 1e-12:
            b = t[i : i + 2, i : i + 2]
            theta = np.arctan2((b[1, 0] - b[0, 1]) / 2, (b[0, 0] + b[1, 1]) / 2)
            log[i, i + 1], log[i + 1, i] = -theta, theta
            i += 2
            continue
        if t[i, i] < 0:
            minus_one.append(i)
        i += 1
    # -1 eigenvalues pair up into half turns
    for a, b in zip(minus_one[::2], minus_one[1::2]):
        log[a, b], log[b, a] = -np.pi, np.pi
    a = z @ log @ z.T
    a = (a - a.T) / 2
    if np.linalg.norm(scipy.linalg.expm(a) - r) > 1e-8:
        raise NumericalError("real logarithm of the rotation did not converge")
    return a


@dataclass(frozen=True)
class LiftedPoint:
    """Point of the universal cover: a unit and a lift of arg det(x conj(e_ref))."""

    x: np.ndarray
    lift: float
    e_ref: np.ndarray = field(default=None)

    def __post_init__(self):
        x = sym_unitary(self.x, "x")
        e_ref = np.eye(x.shape[0]) if self.e_ref is None else sym_unitary(self.e_ref, "e_ref")
        same_dim(x, e_ref)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "e_ref", e_ref)
        d = np.linalg.det(x @ e_ref.conj())
        if abs(np.exp(1j * self.lift) - d) > LIFT_TOL:
            raise InputError(f"lift {self.lift:.6g} does not match arg det = {np.angle(d):.6g}")

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @classmethod
    def from_angles(cls, frame, angles, deck: int = 0, e_ref=None) -> LiftedPoint:
        """``x = W O diag(exp(i angles)) O^T W^T`` with lift ``sum(angles) + 2 pi deck``.

        W is the Takagi factor of ``e_ref`` (identity by default).
        """
        o = np.asarray(frame)
        angles = np.asarray(angles, dtype=float)
        w = np.eye(o.shape[0]) if e_ref is None else takagi_sqrt(e_ref)
        v = w @ o
        x = (v * np.exp(1j * angles)[None, :]) @ v.T
        return cls((x + x.T) / 2, float(np.sum(angles) + 2 * np.pi * deck), e_ref)

    @classmethod
    def principal(cls, x, e_ref=None, deck: int = 0) -> LiftedPoint:
        x = sym_unitary(x, "x")
        e = np.eye(x.shape[0]) if e_ref is None else sym_unitary(e_ref, "e_ref")
        d = np.linalg.det(x @ e.conj())
        return cls(x, float(np.angle(d) + 2 * np.pi * deck), e_ref)

    def shifted(self, turns: int) -> LiftedPoint:
        """Deck transformation by ``turns`` full turns."""
        return LiftedPoint(self.x, self.lift + 2 * np.pi * turns, self.e_ref)


def lift_path(path: TripotentPath, e_ref, lift0: float, samples: int | None = None) -> float:
    """Final lift of ``path`` starting from the lift ``lift0``."""
    e_ref = sym_unitary(e_ref, "e_ref")
    d0 = np.linalg.det(path.start @ e_ref.conj())
    if abs(np.exp(1j * lift0) - d0) > LIFT_TOL:
        raise InputError(f"lift {lift0:.6g} does not match arg det = {np.angle(d0):.6g} at t = 0")
    return float(lift0 + det_argument_change(path, e_ref, samples))


CONSTRUCTIONS = ("through_unit", "rotate_first")


def connecting_path(sigma: LiftedPoint, tau: LiftedPoint, construction: str = "through_unit") -> TripotentPath:
    """Path from ``sigma`` to ``tau`` whose lift ends at ``tau.lift``.

    The path is written in coordinates where the cover base is the identity:
    the returned path ``y`` corresponds to ``W y W^T`` with ``e_ref = W W^T``.

    ``through_unit`` shrinks the angles of sigma to zero and grows those of
    tau; ``rotate_first`` rotates the frame of sigma onto that of tau and then
    moves the angles in the shared frame. Either way a final twist of one
    eigenvalue by whole turns fixes the lift.
    """
    if construction not in CONSTRUCTIONS:
        raise InputError(f"unknown construction {construction!r}")
    if np.linalg.norm(sigma.e_ref - tau.e_ref) > 1e-9:
        raise InputError("lifted points live over different cover bases")
    n = sigma.n
    ds = jordan_decompose(sigma.x, sigma.e_ref)
    dt = jordan_decompose(tau.x, tau.e_ref)
    os_, phi = ds.frame, ds.angles
    ot, psi = dt.frame, dt.angles
    if construction == "through_unit":
        legs = [FrameDiagonalPath.linear(os_, phi, np.zeros(n)), FrameDiagonalPath.linear(ot, np.zeros(n), psi)]
    else:
        ot2 = ot.copy()
        if np.linalg.det(ot2 @ os_.T) < 0:
            ot2[:, 0] *= -1
        gen = real_log_rotation(ot2 @ os_.T)
        y0 = (os_ * np.exp(1j * phi)[None, :]) @ os_.T
        legs = [FrameRotationPath(gen, y0), FrameDiagonalPath.linear(ot2, phi, psi)]
    turns = (tau.lift - sigma.lift - (np.sum(psi) - np.sum(phi))) / (2 * np.pi)
    k = int(round(turns))
    if abs(turns - k) > 1e-6:
        raise InputError(f"lift difference is not reachable: {turns:.6g} turns")
    if k:
        end = psi.copy()
        end[0] += 2 * np.pi * k
        legs.append(FrameDiagonalPath.linear(ot, psi, end))
    path = legs[0]
    for leg in legs[1:]:
        path = concatenate(path, leg, tol=1e-8)
    return path


def _base_in_cover_coordinates(e, e_ref) -> np.ndarray:
    n = e_ref.shape[0]
    if np.linalg.norm(e_ref - np.eye(n)) <= 1e-14:
        return e
    w = takagi_sqrt(e_ref)
    return w.conj().T @ e @ w.conj()


def mas_two_points(
    sigma: LiftedPoint, tau: LiftedPoint, e, construction: str = "through_unit", samples: int | None = None
) -> int:
    """Maslov index, relative to ``e``, of any path whose lift joins sigma to tau."""
    e = sym_unitary(e, "e")
    same_dim(sigma.x, e)
    path = connecting_path(sigma, tau, construction)
    return maslov_index(path, _base_in_cover_coordinates(e, sigma.e_ref), samples=samples).value


def kashiwara_index(frame1, frame2, frame3, tol_rank: float = TOL_RANK) -> int:
    """Signature of ``omega(v1, v2) + omega(v2, v3) + omega(v3, v1)`` on L1 + L2 + L3."""
    fs = [check_lagrangian_frame(f, tol=1e-7) for f in (frame1, frame2, frame3)]
    n = fs[0].shape[1]
    if any(f.shape != fs[0].shape for f in fs):
        raise InputError("frames live in different dimensions")
    w = omega_matrix(n)
    q = np.zeros((3 * n, 3 * n))
    for a, b in ((0, 1), (1, 2), (2, 0)):
        block = fs[a].T @ w @ fs[b]
        q[a * n : (a + 1) * n, b * n : (b + 1) * n] += block / 2
        q[b * n : (b + 1) * n, a * n : (a + 1) * n] += block.T / 2
    ev = np.linalg.eigvalsh(q)
    cut = tol_rank * max(np.max(np.abs(ev)), 1.0)
    return int(np.sum(ev > cut) - np.sum(ev < -cut))


def triple_index(x1, x2, x3) -> int:
    """Kashiwara index of the Lagrangians of three units."""
    return kashiwara_index(*(tripotent_to_lagrangian(x) for x in (x1, x2, x3)))


def souriau_m(sigma: LiftedPoint, tau: LiftedPoint, construction: str = "through_unit") -> int:
    """``m = 2 Mas(sigma~, tau~, sigma) - mu(tau, sigma) + n``."""
    two_point = mas_two_points(sigma, tau, sigma.x, construction)
    return 2 * two_point - mu(tau.x, sigma.x) + sigma.n


@dataclass(frozen=True)
class FormulaEReport:
    lhs: int
    rhs: Fraction
    equal: bool
    m: int
    iota: int
    mu_tau: int
    mu_sigma: int


def check_formula_E(sigma: LiftedPoint, tau: LiftedPoint, e, construction: str = "through_unit") -> FormulaEReport:
    """Compare ``Mas(sigma~, tau~, e)`` with ``(m + iota(e, tau, sigma) + mu(tau, e) - mu(sigma, e)) / 2``."""
    e = sym_unitary(e, "e")
    lhs = mas_two_points(sigma, tau, e, construction)
    m = souriau_m(sigma, tau, construction)
    iota = triple_index(e, tau.x, sigma.x)
    mt, ms = mu(tau.x, e), mu(sigma.x, e)
    rhs = Fraction(m + iota + mt - ms, 2)
    return FormulaEReport(lhs, rhs, rhs == lhs, m, iota, mt, ms)


@dataclass(frozen=True)
class LerayReport:
    lhs: int
    rhs: int
    holds: bool


def check_leray(tau: LiftedPoint, tau2: LiftedPoint, e_tilde: LiftedPoint, transversality_terms: bool = False) -> LerayReport:
    """Check ``m(tau~, tau~') + iota(e, tau', tau) = m(e~, tau~') - m(e~, tau~)``.

    With ``transversality_terms`` the left side also carries
    ``mu(tau', e) - mu(tau, e)``; the two forms agree whenever those
    multiplicities are equal, in particular for pairwise transverse points.
    """
    e = e_tilde.x
    lhs = souriau_m(tau, tau2) + triple_index(e, tau2.x, tau.x)
    if transversality_terms:
        lhs += mu(tau2.x, e) - mu(tau.x, e)
    rhs = souriau_m(e_tilde, tau2) - souriau_m(e_tilde, tau)
    return LerayReport(lhs, rhs, lhs == rhs)
