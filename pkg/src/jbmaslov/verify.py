"""Randomized verification suites.

Each suite draws ``count`` cases from a generator seeded with ``seed`` and
returns a :class:`SuiteResult`. Results are deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .calculus import CONSTRUCTIONS, LiftedPoint, check_formula_E, check_leray
from .errors import InputError
from .generators import (
    random_frame_diagonal_path,
    random_lifted_configuration,
    random_loop,
    random_orthogonal,
    random_pair,
    random_rotation_generator,
    random_sym_unitary,
    small_unitary,
)
from ._linalg import random_symmetric
from .jordan import bergman, validate_axioms
from .lagrangian import (
    check_lagrangian_frame,
    intersection_dim,
    lagrangian_to_tripotent,
    pair_report,
    tripotent_to_lagrangian,
    unitary_act,
)
from .maslov import maslov_index, winding_number_det
from .paths import FrameDiagonalPath, FrameRotationPath, SampledPath, concatenate, reverse
from .spectral import conjugate_spectrum_check, mu, perturbation_budget, relative_spectrum

AXIOM_RESIDUAL = 1e-10
NORM_AXIOM_ERROR = 1e-8
INCLUSION_TOL = 1e-7


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, case: int, message: str) -> None:
        self.failures.append(f"case {case}: {message}")

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases - len(self.failures)}/{self.cases} cases"


def _n(rng, top: int) -> int:
    return int(rng.integers(1, top + 1))


def analytic_frame_diagonal_index(path: FrameDiagonalPath) -> int:
    """Index of a frame-diagonal path relative to the identity, read off its angle polylines."""
    start, end = path.angles[0], path.angles[-1]
    return int(np.sum(np.floor(end / (2 * np.pi)) - np.floor(start / (2 * np.pi))))


def suite_axioms(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("axioms")
    for c in range(count):
        n = _n(rng, 6)
        mats = [random_symmetric(n, rng, scale=rng.uniform(0.2, 3.0)) for _ in range(5)]
        rep = validate_axioms(*mats)
        res.cases += 1
        if rep.triple_identity_residual > AXIOM_RESIDUAL or rep.norm_axiom_error > NORM_AXIOM_ERROR:
            res.fail(c, f"n={n} residual={rep.triple_identity_residual:.3g} norm_error={rep.norm_axiom_error:.3g}")
    return res


def bergman_inclusion_gap(x, e) -> float:
    """Largest distance from an eigenvalue of B(x, e) to the products (1 - lambda)(1 - mu)."""
    lam = np.exp(1j * relative_spectrum(x, e).angles)
    targets = ((1 - lam)[:, None] * (1 - lam)[None, :]).ravel()
    ev = np.linalg.eigvals(bergman(x, e).matrix())
    return float(max(np.min(np.abs(targets - v)) for v in ev))


def suite_spectra(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("spectra")
    for c in range(count):
        n = _n(rng, 6)
        x, e = random_pair(n, rng)
        res.cases += 1
        m0 = mu(x, e, 0.0)
        rank = np.linalg.matrix_rank(x - e, tol=1e-8)
        if m0 != n - rank:
            res.fail(c, f"mu={m0} but n - rank(x - e) = {n - rank}")
        if not conjugate_spectrum_check(x, e):
            res.fail(c, "spectrum of e relative to x is not the conjugate")
        if n <= 4:
            gap = bergman_inclusion_gap(x, e)
            if gap > INCLUSION_TOL:
                res.fail(c, f"Bergman eigenvalue off the product set by {gap:.3g}")
    return res


def suite_bridge(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("bridge")
    for c in range(count):
        n = _n(rng, 6)
        x, e = random_pair(n, rng)
        res.cases += 1
        fx, fe = tripotent_to_lagrangian(x), tripotent_to_lagrangian(e)
        try:
            check_lagrangian_frame(fx)
        except InputError as exc:
            res.fail(c, f"image is not Lagrangian: {exc}")
            continue
        back = lagrangian_to_tripotent(fx)
        if np.linalg.norm(back - x) > 1e-8:
            res.fail(c, f"round trip error {np.linalg.norm(back - x):.3g}")
        dim = intersection_dim(fx, fe)
        if dim != mu(x, e, 0.0) or pair_report(x, e).dim_intersection != dim:
            res.fail(c, f"intersection dimension {dim} differs from mu={mu(x, e, 0.0)}")
        w = random_orthogonal(n, rng)
        if mu(unitary_act(w, x), unitary_act(w, e), 0.0) != mu(x, e, 0.0):
            res.fail(c, "mu is not invariant under the orthogonal action")
    return res


def _perturb_within(x, e, radius, rng):
    """A unit ``y = V x V^T`` with ``|(y - x) conj(e)|_F < radius``."""
    size = 0.45 * radius
    for _ in range(60):
        v = small_unitary(x.shape[0], rng, size)
        y = v @ x @ v.T
        y = (y + y.T) / 2
        if np.linalg.norm((y - x) @ e.conj()) < radius:
            return y
        size /= 2
    return x


def suite_perturbation(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("perturbation")
    for c in range(count):
        n = _n(rng, 6)
        gap = rng.uniform(0.2, 1.5)
        x, e = random_pair(n, rng, gap=gap)
        eps = rng.uniform(0.1, 0.9) * gap
        res.cases += 1
        radius = perturbation_budget(x, e, eps)
        y = _perturb_within(x, e, radius, rng)
        near = sum(m for a, m in relative_spectrum(y, e).clusters if abs(a) <= eps)
        if near != mu(x, e, 0.0):
            res.fail(c, f"n={n} eps={eps:.4g}: {near} eigenvalues near 1 after perturbation, expected {mu(x, e, 0.0)}")
    return res


def suite_subdivision(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("subdivision")
    for c in range(count):
        n = _n(rng, 6)
        path = random_frame_diagonal_path(n, rng)
        e = np.eye(n, dtype=complex)
        res.cases += 1
        coarse = maslov_index(path, e, samples=65)
        fine = maslov_index(path, e, samples=129, rng=rng)
        expected = analytic_frame_diagonal_index(path)
        if not (coarse.value == fine.value == expected):
            res.fail(c, f"n={n}: coarse={coarse.value} fine={fine.value} analytic={expected}")
        if not (coarse.certified and fine.certified):
            res.fail(c, "subdivision was not certified")
    return res


def perturbed_interior(report, path, e, rng) -> SampledPath:
    """Resample ``path`` and move interior samples within their budgets.

    The report's parameters are densified so that no step moves the path by
    more than half a radian; a sampled path cannot then hide a full turn
    between samples.
    """
    ts = [0.0]
    for a, b in zip(report.params[:-1], report.params[1:]):
        parts = max(1, int(np.ceil(2 * path.speed_bound(a, b) * (b - a))))
        ts.extend(np.linspace(a, b, parts + 1)[1:])
    ts = np.array(ts)
    xs = [path.at(t) for t in ts]
    margins = np.full(len(ts), np.inf)
    bar = e.conj()
    for seg in report.segments:
        inside = (ts >= seg.t_start - 1e-15) & (ts <= seg.t_end + 1e-15)
        for i in np.flatnonzero(inside):
            ang = np.angle(np.linalg.eigvals(xs[i] @ bar))
            margins[i] = min(margins[i], 2 * np.sin(np.min(np.abs(np.abs(ang) - seg.eps)) / 2))
    steps = [np.linalg.norm((xs[i] - xs[i - 1]) @ bar) for i in range(1, len(ts))]
    out = [xs[0]]
    for i in range(1, len(ts) - 1):
        # small relative to both the crossing margin and the neighbouring steps
        radius = 0.25 * min(margins[i], steps[i - 1], steps[i])
        out.append(_perturb_within(xs[i], e, radius, rng))
    out.append(xs[-1])
    return SampledPath(ts, out)


def suite_homotopy(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("homotopy")
    for c in range(count):
        n = _n(rng, 6)
        path = random_frame_diagonal_path(n, rng)
        e = random_sym_unitary(n, rng)
        res.cases += 1
        rep = maslov_index(path, e)
        moved = perturbed_interior(rep, path, e, rng)
        other = maslov_index(moved, e)
        if other.value != rep.value:
            res.fail(c, f"n={n}: index {rep.value} became {other.value} after interior perturbation")
    return res


def _continuation(p: FrameDiagonalPath, rng):
    """A refinable path starting where ``p`` ends."""
    n = p.n
    if n > 1 and rng.random() < 0.4:
        return FrameRotationPath(random_rotation_generator(n, rng), p.end)
    o = p.frame
    start = p.angles[-1]
    return FrameDiagonalPath(o, [0.0, 1.0], [start, start + rng.uniform(-3 * np.pi, 3 * np.pi, n)])


def suite_additivity(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("additivity")
    for c in range(count):
        n = _n(rng, 6)
        p = random_frame_diagonal_path(n, rng)
        q = _continuation(p, rng)
        e = random_sym_unitary(n, rng)
        res.cases += 1
        a, b = maslov_index(p, e).value, maslov_index(q, e).value
        ab = maslov_index(concatenate(p, q, tol=1e-8), e).value
        back = maslov_index(reverse(p), e).value
        if ab != a + b:
            res.fail(c, f"n={n}: Mas(p*q)={ab} but Mas(p)+Mas(q)={a + b}")
        if back != -a:
            res.fail(c, f"n={n}: Mas(reverse p)={back} but Mas(p)={a}")
    return res


def suite_loops(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("loops")
    for c in range(count):
        n = _n(rng, 4)
        loop = random_loop(n, rng)
        res.cases += 1
        values = [maslov_index(loop, random_sym_unitary(n, rng)).value for _ in range(3)]
        wind = winding_number_det(loop, np.eye(n))
        if len(set(values)) != 1 or values[0] != wind:
            res.fail(c, f"n={n}: indices {values} over three bases, winding {wind}")
    return res


def suite_formula_e(seed: int, count: int) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult("formula-e")
    for c in range(count):
        n = _n(rng, 4)
        sigma, tau, e = random_lifted_configuration(n, rng, mode=c % 4)
        res.cases += 1
        reports = [check_formula_E(sigma, tau, e, k) for k in CONSTRUCTIONS]
        for k, rep in zip(CONSTRUCTIONS, reports):
            if not rep.equal or rep.rhs.denominator != 1:
                res.fail(c, f"n={n} {k}: lhs={rep.lhs} rhs={rep.rhs}")
        if reports[0].lhs != reports[1].lhs:
            res.fail(c, f"constructions disagree: {reports[0].lhs} vs {reports[1].lhs}")
    return res


def suite_leray(seed: int, count: int) -> SuiteResult:
    """Cocycle relation on mixed triples, and the form with multiplicity terms on transverse ones."""
    rng = np.random.default_rng(seed)
    res = SuiteResult("leray")
    for c in range(count):
        n = _n(rng, 4)
        res.cases += 1
        if c % 2 == 0:
            tau, tau2, e = random_lifted_configuration(n, rng)
            base = LiftedPoint.principal(e, deck=int(rng.integers(-2, 3)))
            rep = check_leray(tau, tau2, base)
            if not rep.holds:
                res.fail(c, f"n={n} mixed: lhs={rep.lhs} rhs={rep.rhs}")
        else:
            pts = [
                LiftedPoint.from_angles(random_orthogonal(n, rng), rng.uniform(-np.pi, np.pi, n), int(rng.integers(-2, 3)))
                for _ in range(3)
            ]
            for flag in (False, True):
                rep = check_leray(pts[0], pts[1], pts[2], transversality_terms=flag)
                if not rep.holds:
                    res.fail(c, f"n={n} generic (terms={flag}): lhs={rep.lhs} rhs={rep.rhs}")
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "axioms": suite_axioms,
    "spectra": suite_spectra,
    "perturbation": suite_perturbation,
    "subdivision": suite_subdivision,
    "homotopy": suite_homotopy,
    "additivity": suite_additivity,
    "loops": suite_loops,
    "formula-e": suite_formula_e,
    "leray": suite_leray,
    "bridge": suite_bridge,
}


def run_suite(name: str, seed: int = 0, count: int = 100) -> SuiteResult:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if count < 1:
        raise InputError("count must be positive")
    return SUITES[name](seed, count)
