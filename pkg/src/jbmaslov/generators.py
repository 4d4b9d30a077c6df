"""Random test objects: units, pairs with prescribed intersection, paths, loops."""

from __future__ import annotations

import numpy as np

from ._linalg import random_orthogonal, random_sym_unitary, random_unitary
from .calculus import LiftedPoint, takagi_sqrt
from .paths import FrameDiagonalPath, FrameRotationPath, TripotentPath, concatenate, reverse

__all__ = [
    "random_sym_unitary",
    "random_orthogonal",
    "random_unitary",
    "random_pair",
    "random_frame_diagonal_path",
    "random_rotation_generator",
    "random_loop",
    "random_lifted_configuration",
    "small_unitary",
]


def random_pair(n: int, rng: np.random.Generator, shared: int | None = None, gap: float = 0.0):
    """Random ``(x, e)`` in Sigma with ``dim ker(x - e) = shared``.

    The remaining relative angles are uniform with ``|theta| > gap``.
    """
    e = random_sym_unitary(n, rng)
    shared = int(rng.integers(0, n + 1)) if shared is None else shared
    phi = rng.uniform(gap, 2 * np.pi - gap, n)
    phi = np.where(phi > np.pi, phi - 2 * np.pi, phi)
    phi[:shared] = 0.0
    w = takagi_sqrt(e) @ random_orthogonal(n, rng)
    x = (w * np.exp(1j * phi)[None, :]) @ w.T
    return (x + x.T) / 2, e


def random_frame_diagonal_path(
    n: int, rng: np.random.Generator, pieces: int | None = None, spread: float = 3 * np.pi, frame=None
) -> FrameDiagonalPath:
    pieces = int(rng.integers(1, 5)) if pieces is None else pieces
    inner = np.sort(rng.uniform(0.05, 0.95, pieces - 1))
    breakpoints = np.concatenate([[0.0], inner, [1.0]])
    angles = rng.uniform(-spread, spread, (pieces + 1, n))
    o = random_orthogonal(n, rng) if frame is None else frame
    return FrameDiagonalPath(o, breakpoints, angles)


def random_rotation_generator(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(n, n))
    return scale * (a - a.T) / 2


def random_loop(n: int, rng: np.random.Generator, max_turns: int = 2) -> TripotentPath:
    """A closed path: a frame-diagonal loop, a rotation, a second loop, the rotation back."""
    o = random_orthogonal(n, rng)
    start = rng.uniform(-np.pi, np.pi, n)
    turns = rng.integers(-max_turns, max_turns + 1, n)
    mid = start + rng.uniform(-2, 2, n)
    first = FrameDiagonalPath(o, [0.0, 0.5, 1.0], [start, mid, start + 2 * np.pi * turns])
    if n == 1:
        return first
    gen = random_rotation_generator(n, rng)
    rot = FrameRotationPath(gen, first.end)
    r = rot.rotation(1.0)
    turns2 = rng.integers(-max_turns, max_turns + 1, n)
    second = FrameDiagonalPath(r @ o, [0.0, 1.0], [start, start + 2 * np.pi * turns2])
    loop = concatenate(first, rot, tol=1e-8)
    loop = concatenate(loop, second, tol=1e-8)
    return concatenate(loop, reverse(rot), tol=1e-8)


def random_lifted_configuration(n: int, rng: np.random.Generator, mode: int | None = None):
    """Random ``(sigma~, tau~, e)`` mixing shared and rotated frames, deck twists and degenerate bases.

    ``mode`` selects the base: 0 random, 1 ``e = sigma``, 2 ``e = tau``,
    3 ``e`` sharing one eigenvector and eigenvalue with ``tau``.
    """
    mode = int(rng.integers(0, 4)) if mode is None else mode
    os_ = random_orthogonal(n, rng)
    ot = os_ if rng.random() < 0.5 else random_orthogonal(n, rng)
    phi = rng.uniform(-np.pi, np.pi, n)
    psi = rng.uniform(-np.pi, np.pi, n)
    if rng.random() < 0.3:
        psi[0] = phi[0]
    sigma = LiftedPoint.from_angles(os_, phi, deck=int(rng.integers(-2, 3)))
    tau = LiftedPoint.from_angles(ot, psi, deck=int(rng.integers(-2, 3)))
    if mode == 0:
        e = random_sym_unitary(n, rng)
    elif mode == 1:
        e = sigma.x
    elif mode == 2:
        e = tau.x
    else:
        alpha = rng.uniform(-np.pi, np.pi, n)
        alpha[0] = psi[0]
        e = (ot * np.exp(1j * alpha)[None, :]) @ ot.T
        e = (e + e.T) / 2
    return sigma, tau, e


def small_unitary(n: int, rng: np.random.Generator, size: float) -> np.ndarray:
    """``expm(i H)`` for a random Hermitian ``H`` of Frobenius norm ``size``."""
    h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (h + h.conj().T) / 2
    h *= size / np.linalg.norm(h)
    lam, v = np.linalg.eigh(h)
    return (v * np.exp(1j * lam)[None, :]) @ v.conj().T

