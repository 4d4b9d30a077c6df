"""Relative spectra of units.

The spectrum of x in the Jordan algebra with unit e is the eigenvalue set of
the unitary matrix ``x conj(e)``; every quantity here is read off from its
eigen-decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._linalg import TOL_CLUSTER, chord, same_dim, sym_unitary, unitary_eig, wrap_angle
from .errors import AdmissibilityError
from .jordan import triple_product


def arc_distance(a: float, b: float) -> float:
    return abs(wrap_angle(a - b))


def cluster_angles(angles, tol: float = TOL_CLUSTER) -> list[list[int]]:
    """Group indices of ``angles`` whose arc gaps are at most ``tol``.

    Clusters are single-linkage on the circle, so a chain straddling the
    branch cut at pi becomes one cluster.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        return []
    order = np.argsort(angles)
    groups = [[int(order[0])]]
    for prev, cur in zip(order[:-1], order[1:]):
        if angles[cur] - angles[prev] <= tol:
            groups[-1].append(int(cur))
        else:
            groups.append([int(cur)])
    if len(groups) > 1 and angles[order[0]] + 2 * np.pi - angles[order[-1]] <= tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def _circular_mean(angles) -> float:
    return wrap_angle(np.angle(np.mean(np.exp(1j * np.asarray(angles)))))


@dataclass(frozen=True)
class RelativeSpectrum:
    """Clustered spectrum of ``x`` relative to ``e``.

    ``clusters`` holds ``(angle, multiplicity)`` pairs sorted by angle, with
    angles in (-pi, pi]. ``vectors[i]`` is an orthonormal basis of the
    eigenspace of ``x conj(e)`` for cluster ``i``.
    """

    n: int
    clusters: tuple[tuple[float, int], ...]
    vectors: tuple[np.ndarray, ...] = field(repr=False, compare=False, default=())
    tol_cluster: float = field(default=TOL_CLUSTER, repr=False, compare=False)

    @property
    def angles(self) -> np.ndarray:
        return np.array([a for a, _ in self.clusters])

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.clusters], dtype=int)

    def multiplicity(self, theta: float) -> int:
        for a, m in self.clusters:
            if arc_distance(a, theta) <= self.tol_cluster:
                return m
        return 0

    def index_of(self, theta: float) -> int | None:
        for i, (a, _) in enumerate(self.clusters):
            if arc_distance(a, theta) <= self.tol_cluster:
                return i
        return None

    def conjugate(self) -> list[tuple[float, int]]:
        return sorted((wrap_angle(-a), m) for a, m in self.clusters)

    def matches(self, other: list[tuple[float, int]] | RelativeSpectrum, tol: float | None = None) -> bool:
        tol = self.tol_cluster if tol is None else tol
        theirs = other.clusters if isinstance(other, RelativeSpectrum) else other
        if len(theirs) != len(self.clusters):
            return False
        remaining = list(theirs)
        for a, m in self.clusters:
            hit = next((j for j, (b, k) in enumerate(remaining) if k == m and arc_distance(a, b) <= tol), None)
            if hit is None:
                return False
            remaining.pop(hit)
        return True


def spectrum_of_unitary(u: np.ndarray, tol_cluster: float = TOL_CLUSTER) -> RelativeSpectrum:
    lam, vecs = unitary_eig(u)
    angles = np.angle(lam)
    clusters, vectors = [], []
    for group in cluster_angles(angles, tol_cluster):
        theta = _circular_mean(angles[group])
        # a cluster sitting within tolerance of 1 is 1
        if abs(theta) <= tol_cluster:
            theta = 0.0
        clusters.append((theta, len(group)))
        vectors.append(vecs[:, group])
    order = np.argsort([c[0] for c in clusters])
    return RelativeSpectrum(
        n=u.shape[0],
        clusters=tuple(clusters[i] for i in order),
        vectors=tuple(vectors[i] for i in order),
        tol_cluster=tol_cluster,
    )


def relative_spectrum(x, e, tol_cluster: float = TOL_CLUSTER) -> RelativeSpectrum:
    x, e = sym_unitary(x, "x"), sym_unitary(e, "e")
    same_dim(x, e)
    return spectrum_of_unitary(x @ e.conj(), tol_cluster)


def mu(x, e, theta: float = 0.0, tol_cluster: float = TOL_CLUSTER) -> int:
    """Transversality index of ``x`` against ``e^{i theta} e``: the multiplicity of ``theta``."""
    return relative_spectrum(x, e, tol_cluster).multiplicity(theta)


def conjugate_spectrum_check(x, e, tol_cluster: float = TOL_CLUSTER) -> bool:
    """Check that the spectrum of e relative to x is the conjugate of that of x relative to e."""
    forward = relative_spectrum(x, e, tol_cluster)
    backward = relative_spectrum(e, x, tol_cluster)
    return backward.matches(forward.conjugate())


@dataclass(frozen=True)
class SpectralIdempotent:
    p: np.ndarray
    arc: tuple[float, ...]
    x: np.ndarray = field(repr=False)
    e: np.ndarray = field(repr=False)

    def peirce_projector(self) -> np.ndarray:
        """Orthogonal projector ``p conj(p)`` onto the range of the Peirce space P(p)E."""
        return self.p @ self.p.conj()

    def restricted_spectrum(self, tol_cluster: float = TOL_CLUSTER) -> RelativeSpectrum:
        """Spectrum of ``P(p) x`` relative to ``p`` inside the Peirce space."""
        px = triple_product(self.p, triple_product(self.e, self.x, self.e), self.p)
        w = px @ self.p.conj()
        evals, evecs = np.linalg.eigh(self.peirce_projector())
        basis = evecs[:, evals > 0.5]
        if basis.shape[1] == 0:
            return RelativeSpectrum(n=0, clusters=(), tol_cluster=tol_cluster)
        return spectrum_of_unitary(basis.conj().T @ w @ basis, tol_cluster)


def spectral_idempotent(x, e, arc, tol_cluster: float = TOL_CLUSTER) -> SpectralIdempotent:
    """Idempotent of ``E^(e)`` selecting the clusters listed in ``arc``.

    Every angle of ``arc`` must name a cluster of the relative spectrum;
    anything else cuts through the spectrum and is rejected.
    """
    x, e = sym_unitary(x, "x"), sym_unitary(e, "e")
    n = same_dim(x, e)
    spec = relative_spectrum(x, e, tol_cluster)
    chosen = set()
    for theta in arc:
        i = spec.index_of(theta)
        if i is None:
            raise AdmissibilityError(f"angle {theta:.6g} is not a cluster of the relative spectrum")
        chosen.add(i)
    proj = np.zeros((n, n), dtype=complex)
    for i in sorted(chosen):
        v = spec.vectors[i]
        proj += v @ v.conj().T
    p = proj @ e
    p = (p + p.T) / 2
    arc_angles = tuple(spec.clusters[i][0] for i in sorted(chosen))
    return SpectralIdempotent(p=p, arc=arc_angles, x=x, e=e)


def crossing_budget(angles, eps: float) -> float:
    """Smallest chordal distance from eigenvalue angles to ``e^{+-i eps}``."""
    angles = np.asarray(angles, dtype=float)
    if angles.size == 0:
        return np.inf
    return float(2 * np.sin(np.min(np.abs(np.abs(angles) - eps)) / 2))


def perturbation_budget(x, e, eps: float, tol_cluster: float = TOL_CLUSTER) -> float:
    """Frobenius radius around ``x conj(e)`` inside which the count near 1 is stable.

    Requires that no cluster lies in ``0 < |theta| <= eps``. Any unit ``y`` with
    ``|y conj(e) - x conj(e)|_F`` below the returned radius keeps its spectrum
    off ``e^{+-i eps}`` and has ``mu(x, e)`` eigenvalues (with multiplicity)
    in the arc ``|theta| <= eps`` (Hoffman-Wielandt for normal matrices).
    """
    if not 0 < eps < np.pi:
        raise AdmissibilityError(f"eps must lie in (0, pi), got {eps}")
    spec = relative_spectrum(x, e, tol_cluster)
    for a, _ in spec.clusters:
        if tol_cluster < abs(a) <= eps + tol_cluster:
            raise AdmissibilityError(f"cluster at {a:.6g} lies in the punctured arc 0 < |theta| <= {eps:.6g}")
    return min(chord(abs(a), eps) for a in spec.angles)


__all__ = [
    "RelativeSpectrum",
    "SpectralIdempotent",
    "arc_distance",
    "cluster_angles",
    "conjugate_spectrum_check",
    "crossing_budget",
    "mu",
    "perturbation_budget",
    "relative_spectrum",
    "spectral_idempotent",
    "spectrum_of_unitary",
]
