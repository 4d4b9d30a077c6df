"""Maslov index of a path of units relative to a fixed unit.

The index is the sum over an admissible subdivision of k(t_j, eps_j) -
k(t_{j-1}, eps_j), where k(t, eps) counts eigenvalues of ``x(t) conj(e)`` in
the closed arc of angles [0, eps]. A subdivision is admissible when no
eigenvalue reaches ``e^{+-i eps_j}`` on the j-th segment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._linalg import TOL_CLUSTER, sym_unitary
from .errors import AdmissibilityError, InputError, NumericalError, UncertifiedError
from .paths import TripotentPath
from .spectral import relative_spectrum

MAX_REFINE = 20


def k_count(x, e, eps: float, tol_cluster: float = TOL_CLUSTER) -> int:
    """Number of eigenvalues (with multiplicity) of x relative to e with angle in [0, eps]."""
    if not 0 < eps < np.pi:
        raise AdmissibilityError(f"eps must lie in (0, pi), got {eps}")
    spec = relative_spectrum(x, e, tol_cluster)
    total = 0
    for a, m in spec.clusters:
        if abs(abs(a) - eps) <= tol_cluster:
            raise AdmissibilityError(f"cluster at {a:.6g} sits on the arc endpoint {eps:.6g}")
        if 0 <= a <= eps:
            total += m
    return total


def _k_from_angles(angles: np.ndarray, eps: float, tol: float) -> int:
    return int(np.sum((angles >= -tol) & (angles <= eps)))


def _angles_of(u: np.ndarray) -> np.ndarray:
    return np.angle(np.linalg.eigvals(u))


def _step_radius(step: float) -> float:
    """Angular radius equivalent to a chordal displacement ``step``."""
    return 2 * np.arcsin(min(step, 2.0) / 2)


def _remove(intervals, centers, radius):
    out = intervals
    for c in centers:
        lo, hi = c - radius, c + radius
        nxt = []
        for a, b in out:
            if hi <= a or lo >= b:
                nxt.append((a, b))
                continue
            if a < lo:
                nxt.append((a, lo))
            if hi < b:
                nxt.append((hi, b))
        out = nxt
    return out


@dataclass(frozen=True)
class Segment:
    t_start: float
    t_end: float
    eps: float
    k_start: int
    k_end: int


@dataclass(frozen=True)
class IndexReport:
    value: int
    segments: tuple[Segment, ...]
    certified: bool
    refinements: int
    params: np.ndarray = field(repr=False, compare=False, default=None)


@dataclass
class Subdivision:
    """Samples of a path and a grouping of them into admissible segments.

    ``segments`` holds ``(i_start, i_end, eps)`` with sample indices.
    """

    params: np.ndarray
    angles: list[np.ndarray]
    segments: list[tuple[int, int, float]]
    certified: bool
    refinements: int


class _Sampler:
    def __init__(self, path: TripotentPath, ebar: np.ndarray):
        self.path, self.ebar = path, ebar

    def relative(self, t: float) -> np.ndarray:
        return self.path.at(t) @ self.ebar


def _step_length(path, t0, t1, u0, u1) -> float:
    """Distance that bounds how far any point of the step lies from an endpoint.

    Without a speed bound only the endpoint gap is known; with one, every
    intermediate point is within ``L (t1 - t0) / 2`` of the nearer endpoint,
    which rules out eigenvalues that wrap around between samples.
    """
    gap = float(np.linalg.norm(u1 - u0))
    speed = path.speed_bound(t0, t1)
    if speed is None:
        return gap
    return max(gap, 0.5 * speed * (t1 - t0))


def _refine(path, ebar, samples, max_refine, step_ok):
    """Sample the path and bisect intervals whose step fails ``step_ok``.

    Returns parameters, relative unitaries, eigenvalue angles, step lengths,
    per-step certification flags and the number of bisections performed.
    """
    sampler = _Sampler(path, ebar)
    ts = [float(t) for t in path.knots(samples)]
    us = [sampler.relative(t) for t in ts]
    angles = [_angles_of(u) for u in us]
    level = [0] * len(ts)  # level[i] belongs to the interval (i-1, i)
    ok = [True] * len(ts)
    refinements = 0
    i = 1
    while i < len(ts):
        step = _step_length(path, ts[i - 1], ts[i], us[i - 1], us[i])
        if step_ok(step, angles[i - 1], angles[i]):
            i += 1
            continue
        if path.refinable and level[i] < max_refine:
            mid = 0.5 * (ts[i - 1] + ts[i])
            u = sampler.relative(mid)
            ts.insert(i, mid)
            us.insert(i, u)
            angles.insert(i, _angles_of(u))
            level[i] += 1
            level.insert(i, level[i])
            ok.insert(i, True)
            refinements += 1
            continue
        ok[i] = False
        i += 1
    steps = [0.0] + [_step_length(path, ts[i - 1], ts[i], us[i - 1], us[i]) for i in range(1, len(ts))]
    return np.array(ts), us, angles, steps, ok, refinements


def _pick(intervals, rng=None) -> float:
    lo, hi = max(intervals, key=lambda iv: iv[1] - iv[0])
    if rng is None:
        return 0.5 * (lo + hi)
    w = hi - lo
    return float(lo + w * (0.1 + 0.8 * rng.random()))


def choose_admissible_subdivision(
    path: TripotentPath,
    e,
    samples: int | None = None,
    max_refine: int = MAX_REFINE,
    tol_cluster: float = TOL_CLUSTER,
    rng: np.random.Generator | None = None,
) -> Subdivision:
    """Group path samples into segments that share an admissible arc endpoint.

    A step between consecutive samples is certified for ``eps`` when its
    length (the Frobenius gap, enlarged by the path's speed bound when it
    has one) is below the chordal distance from both endpoint spectra to
    ``e^{+-i eps}``; eigenvalue motion is then bounded by Hoffman-Wielandt. Segments are grown greedily while a common ``eps``
    survives; ``eps`` is the midpoint of the widest surviving gap (or a
    random point inside it when ``rng`` is given). Refinable paths are
    bisected wherever a single step admits no ``eps``.
    """
    e = sym_unitary(e, "e")
    if path.n != e.shape[0]:
        raise InputError(f"path has size {path.n} but the base unit has size {e.shape[0]}")
    ebar = e.conj()
    guard = 2 * tol_cluster
    full = [(0.0, np.pi)]

    def step_window(a0, a1, step):
        r = _step_radius(step) + guard
        return _remove(_remove(full, np.abs(a0), r), np.abs(a1), r)

    def usable(intervals):
        return [iv for iv in intervals if iv[1] - iv[0] > 2 * guard]

    def step_ok(step, a0, a1):
        return bool(usable(step_window(a0, a1, step)))

    ts, us, angles, steps, ok, refinements = _refine(path, ebar, samples, max_refine, step_ok)

    segments: list[tuple[int, int, float]] = []
    certified = all(ok)
    m = len(ts) - 1
    start = 0
    window = usable(_remove(full, np.abs(angles[0]), guard))
    for i in range(1, m + 1):
        if not ok[i]:
            if i - 1 > start:
                segments.append((start, i - 1, _pick(window, rng)))
            best = usable(_remove(_remove(full, np.abs(angles[i - 1]), guard), np.abs(angles[i]), guard))
            if not best:
                raise NumericalError(f"no admissible arc between t = {ts[i - 1]:.6g} and {ts[i]:.6g}")
            segments.append((i - 1, i, _pick(best, rng)))
            start = i
            window = usable(_remove(full, np.abs(angles[i]), guard))
            continue
        step = steps[i]
        r = _step_radius(step) + guard
        grown = usable(_remove(_remove(window, np.abs(angles[i - 1]), r), np.abs(angles[i]), r))
        if grown:
            window = grown
            continue
        segments.append((start, i - 1, _pick(window, rng)))
        start = i - 1
        window = usable(step_window(angles[i - 1], angles[i], step))
    if m > start:
        segments.append((start, m, _pick(window, rng)))
    return Subdivision(params=ts, angles=angles, segments=segments, certified=certified, refinements=refinements)


def maslov_index(
    path: TripotentPath,
    e,
    samples: int | None = None,
    max_refine: int = MAX_REFINE,
    tol_cluster: float = TOL_CLUSTER,
    require_certified: bool = False,
    rng: np.random.Generator | None = None,
) -> IndexReport:
    """Maslov index of ``path`` relative to the unit ``e``.

    Uncertified subdivisions still produce a value, flagged
    ``certified=False``; with ``require_certified`` they raise
    :class:`UncertifiedError` carrying the report.
    """
    sub = choose_admissible_subdivision(path, e, samples, max_refine, tol_cluster, rng)
    segs = []
    for a, b, eps in sub.segments:
        ka = _k_from_angles(sub.angles[a], eps, tol_cluster)
        kb = _k_from_angles(sub.angles[b], eps, tol_cluster)
        segs.append(Segment(float(sub.params[a]), float(sub.params[b]), float(eps), ka, kb))
    value = sum(s.k_end - s.k_start for s in segs)
    report = IndexReport(value, tuple(segs), sub.certified, sub.refinements, params=sub.params)
    if require_certified and not report.certified:
        err = UncertifiedError("the subdivision could not be certified")
        err.report = report
        raise err
    return report


def det_argument_change(
    path: TripotentPath, e, samples: int | None = None, max_refine: int = MAX_REFINE
) -> float:
    """Total change of arg det(x(t) conj(e)) by continuous tracking.

    A step is accepted when ``sqrt(n) |du|_F < 2``, which bounds the summed
    eigenvalue motion, and hence the change of argument, below pi.
    """
    e = sym_unitary(e, "e")
    if path.n != e.shape[0]:
        raise InputError(f"path has size {path.n} but the base unit has size {e.shape[0]}")
    root_n = np.sqrt(path.n)

    def step_ok(step, a0, a1):
        return root_n * step < 2

    ts, us, _, _, ok, _ = _refine(path, e.conj(), samples, max_refine, step_ok)
    if not all(ok):
        bad = ok.index(False)
        raise NumericalError(f"samples too coarse to track the determinant near t = {ts[bad]:.6g}")
    dets = np.array([np.linalg.det(u) for u in us])
    return float(np.sum(np.angle(dets[1:] / dets[:-1])))


def winding_number_det(path: TripotentPath, e, samples: int | None = None, max_refine: int = MAX_REFINE) -> int:
    """Winding number of t -> det(x(t) conj(e)) around 0 for a closed path."""
    if not path.is_closed():
        raise InputError("winding number needs a closed path")
    return int(round(det_argument_change(path, e, samples, max_refine) / (2 * np.pi)))




FLOW_STEP = 0.2


def eigenvalue_flow(
    path: TripotentPath, e, samples: int | None = None, max_refine: int = MAX_REFINE
) -> tuple[np.ndarray, np.ndarray]:
    """Continuously tracked eigenvalue angles of ``x(t) conj(e)`` at the path's knots.

    Consecutive eigenvalues are matched by minimal total arc distance to a
    linear prediction from the previous step, then unwrapped. Steps are refined until the path moves by less than
    ``FLOW_STEP`` in Frobenius norm, so no eigenvalue can move far enough to
    be confused with a neighbour's image across the wrap.
    Returns ``(t, angles)`` with ``angles`` of shape ``(len(t), n)``.
    """
    e = sym_unitary(e, "e")
    if path.n != e.shape[0]:
        raise InputError(f"path has size {path.n} but the base unit has size {e.shape[0]}")
    grid = set(float(t) for t in path.knots(samples))

    def step_ok(step, a0, a1):
        return step < FLOW_STEP

    ts, _, angles, _, ok, _ = _refine(path, e.conj(), samples, max_refine, step_ok)
    if not all(ok):
        bad = ok.index(False)
        raise NumericalError(f"samples too coarse to track eigenvalues near t = {ts[bad]:.6g}")
    current = np.sort(angles[0])
    velocity = np.zeros_like(current)
    rows = [current.copy()]
    for a in angles[1:]:
        # match against a linear prediction so transversal crossings pass through
        predicted = current + velocity
        miss = np.angle(np.exp(1j * (a[None, :] - predicted[:, None])))
        r, c = linear_sum_assignment(np.abs(miss))
        nxt = predicted[r] + miss[r, c]
        velocity = nxt - current
        current = nxt
        rows.append(current.copy())
    keep = [i for i, t in enumerate(ts) if float(t) in grid]
    return ts[keep], np.array(rows)[keep]
