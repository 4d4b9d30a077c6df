"""Paths t -> x(t) in Sigma over the parameter interval [0, 1]."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from ._linalg import TOL_STRUCT, check_unitary, sym_unitary
from .errors import DimensionError, InputError, NumericalError, StructureError

DEFAULT_SAMPLES = 65


def _check_params(params) -> np.ndarray:
    t = np.asarray(params, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise InputError("a path needs at least two parameter values")
    if abs(t[0]) > 1e-12 or abs(t[-1] - 1) > 1e-12:
        raise InputError(f"parameters must run from 0 to 1, got {t[0]} .. {t[-1]}")
    if np.any(np.diff(t) <= 0):
        raise InputError("parameters must be strictly increasing")
    t = t.copy()
    t[0], t[-1] = 0.0, 1.0
    return t


class TripotentPath:
    """Base class. Subclasses provide ``at`` and ``knots``.

    ``refinable`` paths can be evaluated at any parameter; sampled paths only
    at their own parameters.
    """

    n: int
    refinable: bool = True
    base_hint: np.ndarray | None = None

    def at(self, t: float) -> np.ndarray:
        raise NotImplementedError

    def knots(self, samples: int | None = None) -> np.ndarray:
        raise NotImplementedError

    def speed_bound(self, t0: float, t1: float) -> float | None:
        """Upper bound on ``|x'(t)|_F`` over ``[t0, t1]``, or None when unknown."""
        return None

    @property
    def start(self) -> np.ndarray:
        return self.at(0.0)

    @property
    def end(self) -> np.ndarray:
        return self.at(1.0)

    def is_closed(self, tol: float = TOL_STRUCT) -> bool:
        return bool(np.linalg.norm(self.start - self.end) <= tol)

    def realize(self, samples: int | None = None) -> tuple[np.ndarray, list[np.ndarray]]:
        ts = self.knots(samples)
        return ts, [self.at(t) for t in ts]


class SampledPath(TripotentPath):
    refinable = False

    def __init__(self, params, samples, base_hint=None):
        self.params = _check_params(params)
        if len(samples) != self.params.size:
            raise InputError(f"{len(samples)} samples for {self.params.size} parameters")
        self.samples = [sym_unitary(s, f"sample {i}") for i, s in enumerate(samples)]
        self.n = self.samples[0].shape[0]
        if any(s.shape != (self.n, self.n) for s in self.samples):
            raise DimensionError("samples have different sizes")
        self.base_hint = base_hint

    def at(self, t: float) -> np.ndarray:
        i = int(np.searchsorted(self.params, t))
        for j in (i - 1, i):
            if 0 <= j < self.params.size and abs(self.params[j] - t) <= 1e-12:
                return self.samples[j]
        raise NumericalError(f"sampled path has no sample at t = {t}")

    def knots(self, samples: int | None = None) -> np.ndarray:
        return self.params.copy()


class FrameDiagonalPath(TripotentPath):
    """``x(t) = O diag(exp(i phi_j(t))) O^T`` with piecewise-linear angles.

    ``frame`` is normally real orthogonal; any unitary frame is accepted and
    simply transports the path by the action of U(n).
    ``angles[k, j]`` is the value of ``phi_j`` at ``breakpoints[k]``.
    """

    def __init__(self, frame, breakpoints, angles, base_hint=None):
        self.frame = check_unitary(frame, "frame")
        if np.allclose(self.frame.imag, 0):
            self.frame = self.frame.real
        self.n = self.frame.shape[0]
        self.breakpoints = _check_params(breakpoints)
        self.angles = np.asarray(angles, dtype=float)
        if self.angles.shape != (self.breakpoints.size, self.n):
            raise DimensionError(f"angles must have shape {(self.breakpoints.size, self.n)}, got {self.angles.shape}")
        if not np.all(np.isfinite(self.angles)):
            raise InputError("angles must be finite")
        self.base_hint = base_hint

    @classmethod
    def linear(cls, frame, start_angles, end_angles, **kw) -> FrameDiagonalPath:
        return cls(frame, [0.0, 1.0], [start_angles, end_angles], **kw)

    def speed_bound(self, t0: float, t1: float) -> float:
        slopes = np.diff(self.angles, axis=0) / np.diff(self.breakpoints)[:, None]
        hit = (self.breakpoints[1:] > t0) & (self.breakpoints[:-1] < t1)
        return float(np.max(np.linalg.norm(slopes[hit], axis=1), initial=0.0))

    def phases(self, t: float) -> np.ndarray:
        return np.array([np.interp(t, self.breakpoints, self.angles[:, j]) for j in range(self.n)])

    def at(self, t: float) -> np.ndarray:
        o = self.frame
        x = (o * np.exp(1j * self.phases(t))[None, :]) @ o.T
        return (x + x.T) / 2

    def knots(self, samples: int | None = None) -> np.ndarray:
        grid = np.linspace(0.0, 1.0, samples or DEFAULT_SAMPLES)
        return np.unique(np.concatenate([grid, self.breakpoints]))


class FrameRotationPath(TripotentPath):
    """``x(t) = exp(tA) x0 exp(tA)^T`` for a real skew-symmetric generator ``A``."""

    def __init__(self, generator, start, base_hint=None):
        a = np.asarray(generator, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionError(f"generator must be square, got {a.shape}")
        if np.linalg.norm(a.imag) > TOL_STRUCT:
            raise StructureError("generator must be real")
        a = a.real
        if np.linalg.norm(a + a.T) > TOL_STRUCT:
            raise StructureError("generator must be skew-symmetric")
        self.generator = (a - a.T) / 2
        self.x0 = sym_unitary(start, "start")
        self.n = self.x0.shape[0]
        if self.generator.shape != (self.n, self.n):
            raise DimensionError("generator and start point differ in size")
        self.base_hint = base_hint

    def speed_bound(self, t0: float, t1: float) -> float:
        return float(2 * np.sqrt(self.n) * np.linalg.norm(self.generator, 2))

    def rotation(self, t: float) -> np.ndarray:
        return scipy.linalg.expm(t * self.generator)

    def at(self, t: float) -> np.ndarray:
        r = self.rotation(t)
        x = r @ self.x0 @ r.T
        return (x + x.T) / 2

    def knots(self, samples: int | None = None) -> np.ndarray:
        return np.linspace(0.0, 1.0, samples or DEFAULT_SAMPLES)


class ConcatenatedPath(TripotentPath):
    def __init__(self, first: TripotentPath, second: TripotentPath):
        self.first, self.second = first, second
        self.n = first.n
        self.refinable = first.refinable and second.refinable
        self.base_hint = first.base_hint

    def at(self, t: float) -> np.ndarray:
        if t <= 0.5:
            return self.first.at(min(2 * t, 1.0))
        return self.second.at(max(2 * t - 1, 0.0))

    def speed_bound(self, t0: float, t1: float) -> float | None:
        bounds = []
        if t0 < 0.5:
            bounds.append(self.first.speed_bound(2 * t0, min(2 * t1, 1.0)))
        if t1 > 0.5:
            bounds.append(self.second.speed_bound(max(2 * t0 - 1, 0.0), 2 * t1 - 1))
        if any(b is None for b in bounds):
            return None
        return 2 * max(bounds)

    def knots(self, samples: int | None = None) -> np.ndarray:
        a = self.first.knots(samples) / 2
        b = 0.5 + self.second.knots(samples) / 2
        return np.unique(np.concatenate([a, b]))


class ReversedPath(TripotentPath):
    def __init__(self, inner: TripotentPath):
        self.inner = inner
        self.n = inner.n
        self.refinable = inner.refinable
        self.base_hint = inner.base_hint

    def at(self, t: float) -> np.ndarray:
        return self.inner.at(1.0 - t)

    def speed_bound(self, t0: float, t1: float) -> float | None:
        return self.inner.speed_bound(1.0 - t1, 1.0 - t0)

    def knots(self, samples: int | None = None) -> np.ndarray:
        return np.sort(1.0 - self.inner.knots(samples))


def concatenate(p: TripotentPath, q: TripotentPath, tol: float = TOL_STRUCT) -> TripotentPath:
    """Run ``p`` on [0, 1/2] and ``q`` on [1/2, 1]."""
    if p.n != q.n:
        raise DimensionError(f"cannot concatenate paths of sizes {p.n} and {q.n}")
    gap = np.linalg.norm(p.end - q.start)
    if gap > tol:
        raise InputError(f"end of the first path differs from start of the second by {gap:.3g}")
    if isinstance(p, SampledPath) and isinstance(q, SampledPath):
        params = np.concatenate([p.params / 2, 0.5 + q.params[1:] / 2])
        return SampledPath(params, p.samples + q.samples[1:], base_hint=p.base_hint)
    return ConcatenatedPath(p, q)


def reverse(p: TripotentPath) -> TripotentPath:
    if isinstance(p, ReversedPath):
        return p.inner
    if isinstance(p, SampledPath):
        return SampledPath(1.0 - p.params[::-1], p.samples[::-1], base_hint=p.base_hint)
    return ReversedPath(p)


def constant_path(x) -> SampledPath:
    x = sym_unitary(x)
    return SampledPath([0.0, 1.0], [x, x])


def sampled_from(path: TripotentPath, params) -> SampledPath:
    params = _check_params(params)
    return SampledPath(params, [path.at(t) for t in params], base_hint=path.base_hint)


