import numpy as np
import pytest
from hypothesis import given, settings

from jbmaslov import (
    FrameDiagonalPath,
    LiftedPoint,
    check_formula_E,
    check_leray,
    connecting_path,
    constant_path,
    jordan_decompose,
    mas_two_points,
    mu,
    souriau_m,
    takagi_sqrt,
    triple_index,
)
from jbmaslov.calculus import CONSTRUCTIONS, lift_path, real_log_rotation
from jbmaslov.errors import InputError
from jbmaslov.generators import random_lifted_configuration, random_orthogonal, random_sym_unitary
from jbmaslov.jordan import triple_product
from jbmaslov.maslov import det_argument_change

from .strategies import dims, generators, small_dims

ONE = np.eye(1)


def unit(phi):
    return np.exp(1j * phi) * ONE


def test_decompose_examples():
    d = jordan_decompose(np.eye(3), np.eye(3))
    assert np.allclose(d.angles, 0) and np.allclose(np.abs(d.frame.T @ d.frame), np.eye(3))
    d = jordan_decompose(np.diag(np.exp(1j * np.array([0.3, -1.2]))), np.eye(2))
    # the identity frame up to the order and signs of its columns
    perm = np.argmax(np.abs(d.frame), axis=0)
    assert np.allclose(np.abs(d.frame), np.eye(2)[:, perm])
    assert np.allclose(d.angles, np.array([0.3, -1.2])[perm])


@given(generators(), dims)
def test_decompose_round_trip_and_idempotents(rng, n):
    x, e = random_sym_unitary(n, rng), random_sym_unitary(n, rng)
    d = jordan_decompose(x, e)
    assert np.isrealobj(d.frame) and np.allclose(d.frame @ d.frame.T, np.eye(n))
    assert np.linalg.norm(d.reconstruct() - x) <= 1e-8
    cs = d.idempotents()
    assert np.allclose(sum(cs), e)
    for j, c in enumerate(cs):
        for k, c2 in enumerate(cs):
            expected = c if j == k else np.zeros_like(c)
            assert np.allclose(triple_product(c, e, c2), expected, atol=1e-9)


@given(generators(), dims)
def test_takagi_factor(rng, n):
    e = random_sym_unitary(n, rng)
    w = takagi_sqrt(e)
    assert np.allclose(w @ w.T, e) and np.allclose(w.conj().T @ w, np.eye(n))


@given(generators(), dims)
def test_real_log_rotation(rng, n):
    o = random_orthogonal(n, rng)
    if np.linalg.det(o) < 0:
        o[:, 0] *= -1
    a = real_log_rotation(o)
    assert np.allclose(a, -a.T)
    assert np.allclose(real_log_rotation(np.diag([-1.0, -1.0, 1.0])), -real_log_rotation(np.diag([-1.0, -1.0, 1.0])).T)


def test_real_log_rejects_reflections():
    with pytest.raises(InputError):
        real_log_rotation(np.diag([1.0, -1.0]))


def test_lifted_point_validation():
    LiftedPoint(unit(1.0), 1.0 + 2 * np.pi)
    with pytest.raises(InputError):
        LiftedPoint(unit(1.0), 1.5)
    p = LiftedPoint.principal(unit(3.0), deck=-1)
    assert p.lift == pytest.approx(3.0 - 2 * np.pi)
    assert p.shifted(2).lift == pytest.approx(3.0 + 2 * np.pi)


def test_lift_path_examples(rng):
    x = random_sym_unitary(2, rng)
    lift0 = float(np.angle(np.linalg.det(x)))
    assert lift_path(constant_path(x), np.eye(2), lift0) == pytest.approx(lift0)
    circle = FrameDiagonalPath.linear(ONE, [0.0], [2 * np.pi])
    assert lift_path(circle, ONE, 0.0) == pytest.approx(2 * np.pi)
    with pytest.raises(InputError):
        lift_path(circle, ONE, 1.0)


@given(generators(), dims)
def test_lift_of_polylines(rng, n):
    o = random_orthogonal(n, rng)
    a0, a1 = rng.uniform(-9, 9, n), rng.uniform(-9, 9, n)
    path = FrameDiagonalPath.linear(o, a0, a1)
    assert lift_path(path, np.eye(n), float(a0.sum())) == pytest.approx(a1.sum(), abs=1e-8)


@settings(max_examples=15)
@given(generators(), small_dims)
def test_connecting_path_reaches_the_lift(rng, n):
    sigma, tau, _ = random_lifted_configuration(n, rng)
    for construction in CONSTRUCTIONS:
        path = connecting_path(sigma, tau, construction)
        assert np.allclose(path.start, sigma.x, atol=1e-8) and np.allclose(path.end, tau.x, atol=1e-8)
        assert sigma.lift + det_argument_change(path, np.eye(n)) == pytest.approx(tau.lift, abs=1e-7)


def test_connecting_path_rejects_mixed_cover_bases(rng):
    a = LiftedPoint.principal(random_sym_unitary(2, rng))
    b = LiftedPoint.principal(random_sym_unitary(2, rng), e_ref=random_sym_unitary(2, rng))
    with pytest.raises(InputError):
        connecting_path(a, b)
    with pytest.raises(InputError):
        connecting_path(a, a, "sideways")


def test_two_point_examples():
    s = LiftedPoint(ONE, 0.0)
    assert mas_two_points(s, s, ONE) == 0
    assert mas_two_points(s, LiftedPoint(unit(1.0), 1.0), ONE) == 0
    for k in (-2, 1, 3):
        assert mas_two_points(s, LiftedPoint(ONE, 2 * np.pi * k), ONE) == k


@settings(max_examples=15)
@given(generators(), small_dims)
def test_two_point_index_is_path_independent(rng, n):
    sigma, tau, e = random_lifted_configuration(n, rng)
    values = {mas_two_points(sigma, tau, e, c) for c in CONSTRUCTIONS}
    assert len(values) == 1


def test_souriau_examples(rng):
    s = LiftedPoint(ONE, 0.0)
    assert souriau_m(s, s) == 0
    assert souriau_m(s, LiftedPoint(unit(1.0), 1.0)) == 1
    for k in (-1, 2):
        assert souriau_m(s, LiftedPoint(ONE, 2 * np.pi * k)) == 2 * k
    x = LiftedPoint.principal(random_sym_unitary(3, rng))
    assert souriau_m(x, x) == 0


@settings(max_examples=15)
@given(generators(), small_dims)
def test_souriau_jumps_by_two_under_deck(rng, n):
    sigma, tau, _ = random_lifted_configuration(n, rng)
    assert souriau_m(sigma, tau.shifted(1)) - souriau_m(sigma, tau) == 2


def test_formula_e_worked_case():
    rep = check_formula_E(LiftedPoint(ONE, 0.0), LiftedPoint(unit(1.0), 1.0), ONE)
    assert (rep.lhs, rep.rhs, rep.equal) == (0, 0, True)
    assert (rep.m, rep.iota, rep.mu_tau, rep.mu_sigma) == (1, 0, 0, 1)


def test_formula_e_repeated_point(rng):
    s = LiftedPoint.principal(random_sym_unitary(2, rng))
    rep = check_formula_E(s, s, random_sym_unitary(2, rng))
    assert rep.lhs == 0 and rep.rhs == 0 and rep.iota == 0


@pytest.mark.parametrize("mode", range(4))
@settings(max_examples=15)
@given(rng=generators(), n=small_dims)
def test_formula_e_sweep(mode, rng, n):
    sigma, tau, e = random_lifted_configuration(n, rng, mode=mode)
    for construction in CONSTRUCTIONS:
        rep = check_formula_E(sigma, tau, e, construction)
        assert rep.rhs.denominator == 1
        assert rep.equal, rep


@settings(max_examples=15)
@given(generators(), small_dims)
def test_formula_e_over_a_non_identity_cover_base(rng, n):
    e_ref = random_sym_unitary(n, rng)
    o1, o2 = random_orthogonal(n, rng), random_orthogonal(n, rng)
    sigma = LiftedPoint.from_angles(o1, rng.uniform(-3, 3, n), deck=1, e_ref=e_ref)
    tau = LiftedPoint.from_angles(o2, rng.uniform(-3, 3, n), deck=-1, e_ref=e_ref)
    for e in (random_sym_unitary(n, rng), sigma.x, tau.x):
        assert check_formula_E(sigma, tau, e).equal


def test_leray_trivial_and_circle_grid():
    t = LiftedPoint(unit(0.4), 0.4)
    base = LiftedPoint(unit(-1.0), -1.0)
    assert check_leray(t, t, base).holds
    grid = np.linspace(-3, 3, 5)
    for a in grid:
        for b in grid:
            for c in grid:
                if len({a, b, c}) < 3:
                    continue
                pts = [LiftedPoint(unit(v), v) for v in (a, b, c)]
                assert check_leray(*pts).holds
                assert check_leray(*pts, transversality_terms=True).holds


@settings(max_examples=15)
@given(generators(), small_dims)
def test_leray_on_generic_triples(rng, n):
    pts = [LiftedPoint.from_angles(random_orthogonal(n, rng), rng.uniform(-3, 3, n), int(rng.integers(-2, 3))) for _ in range(3)]
    assert check_leray(*pts).holds
    assert check_leray(*pts, transversality_terms=True).holds


@settings(max_examples=15)
@given(generators(), small_dims)
def test_leray_on_degenerate_triples(rng, n):
    tau, tau2, e = random_lifted_configuration(n, rng)
    assert check_leray(tau, tau2, LiftedPoint.principal(e)).holds


def test_leray_multiplicity_terms_fail_off_transversality():
    # base equal to tau': mu(tau', e) = 1 but mu(tau, e) = 0
    tau, tau2 = LiftedPoint(unit(0.5), 0.5), LiftedPoint(unit(2.0), 2.0)
    base = LiftedPoint(unit(2.0), 2.0)
    assert mu(tau2.x, base.x) - mu(tau.x, base.x) == 1
    assert check_leray(tau, tau2, base).holds
    assert not check_leray(tau, tau2, base, transversality_terms=True).holds


@given(generators(), small_dims)
def test_triple_index_invariant_under_action(rng, n):
    xs = [random_sym_unitary(n, rng) for _ in range(3)]
    o = random_orthogonal(n, rng)
    moved = [o @ x @ o.T for x in xs]
    assert triple_index(*moved) == triple_index(*xs)
