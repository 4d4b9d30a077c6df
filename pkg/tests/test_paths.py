import numpy as np
import pytest
from hypothesis import given

from jbmaslov import FrameDiagonalPath, FrameRotationPath, SampledPath, concatenate, constant_path, reverse
from jbmaslov.errors import DimensionError, InputError, NumericalError, StructureError
from jbmaslov.generators import random_frame_diagonal_path, random_loop, random_rotation_generator, random_sym_unitary
from jbmaslov.paths import sampled_from

from .strategies import generators, small_dims


def test_frame_diagonal_values():
    p = FrameDiagonalPath(np.eye(2), [0, 0.5, 1], [[0, 0], [1, 2], [1, 4]])
    assert np.allclose(p.at(0.25), np.diag(np.exp(1j * np.array([0.5, 1.0]))))
    assert np.allclose(p.phases(0.75), [1, 3])
    assert set(p.knots(5)) >= {0.0, 0.5, 1.0}


def test_rotation_path_stays_in_sigma(rng):
    x0 = random_sym_unitary(3, rng)
    p = FrameRotationPath(random_rotation_generator(3, rng), x0)
    assert np.allclose(p.start, x0)
    y = p.at(0.7)
    assert np.allclose(y, y.T) and np.allclose(y @ y.conj(), np.eye(3))


def test_constructor_errors(rng):
    with pytest.raises(InputError):
        SampledPath([0.0, 0.5], [np.eye(1), np.eye(1)])
    with pytest.raises(InputError):
        SampledPath([0.0, 0.6, 0.5, 1.0], [np.eye(1)] * 4)
    with pytest.raises(InputError):
        SampledPath([0.0, 1.0], [np.eye(1)])
    with pytest.raises(DimensionError):
        SampledPath([0.0, 1.0], [np.eye(1), np.eye(2)])
    with pytest.raises(StructureError):
        SampledPath([0.0, 1.0], [np.eye(1), 2 * np.eye(1)])
    with pytest.raises(DimensionError):
        FrameDiagonalPath(np.eye(2), [0, 1], [[0, 0, 0], [1, 1, 1]])
    with pytest.raises(InputError):
        FrameDiagonalPath(np.eye(1), [0, 1], [[0], [np.inf]])
    with pytest.raises(StructureError):
        FrameDiagonalPath(2 * np.eye(2), [0, 1], [[0, 0], [1, 1]])
    with pytest.raises(StructureError):
        FrameRotationPath(np.eye(2), np.eye(2))
    with pytest.raises(StructureError):
        FrameRotationPath(1j * np.array([[0, 1], [-1, 0]]), np.eye(2))
    with pytest.raises(DimensionError):
        FrameRotationPath(np.zeros((3, 3)), np.eye(2))


def test_sampled_path_only_evaluates_at_samples():
    p = SampledPath([0, 0.5, 1], [np.eye(1), 1j * np.eye(1), -np.eye(1)])
    assert np.allclose(p.at(0.5), 1j)
    with pytest.raises(NumericalError):
        p.at(0.25)
    assert not p.refinable


def test_concatenate_and_reverse(rng):
    p = random_frame_diagonal_path(2, rng)
    q = FrameRotationPath(random_rotation_generator(2, rng), p.end)
    pq = concatenate(p, q)
    assert np.allclose(pq.at(0.25), p.at(0.5))
    assert np.allclose(pq.at(0.75), q.at(0.5))
    assert np.allclose(reverse(pq).at(0.1), pq.at(0.9))
    assert reverse(reverse(pq)) is pq
    with pytest.raises(InputError):
        concatenate(q, p)
    with pytest.raises(DimensionError):
        concatenate(p, constant_path(np.eye(3)))


def test_sampled_concatenation_merges(rng):
    p = sampled_from(random_frame_diagonal_path(2, rng), np.linspace(0, 1, 5))
    q = sampled_from(FrameRotationPath(random_rotation_generator(2, rng), p.end), np.linspace(0, 1, 3))
    pq = concatenate(p, q)
    assert isinstance(pq, SampledPath) and len(pq.samples) == 7
    r = reverse(pq)
    assert isinstance(r, SampledPath) and np.allclose(r.samples[0], pq.samples[-1])


def test_loops_close(rng):
    for n in (1, 2, 3):
        assert random_loop(n, rng).is_closed(1e-8)


@given(generators(), small_dims)
def test_speed_bound_dominates_finite_differences(rng, n):
    path = random_loop(n, rng)
    ts = np.linspace(0, 1, 401)
    xs = [path.at(t) for t in ts]
    for i in range(1, len(ts)):
        bound = path.speed_bound(ts[i - 1], ts[i])
        assert np.linalg.norm(xs[i] - xs[i - 1]) <= bound * (ts[i] - ts[i - 1]) * (1 + 1e-9) + 1e-12


def test_sampled_paths_have_no_speed_bound():
    assert constant_path(np.eye(2)).speed_bound(0, 1) is None
