import json

import numpy as np
import pytest
from hypothesis import given

from jbmaslov import FrameDiagonalPath, FrameRotationPath, LiftedPoint, concatenate
from jbmaslov.documents import (
    FormulaEDocument,
    PathDocument,
    PointDocument,
    decode_matrix,
    dump,
    encode_matrix,
    formula_e_document,
    load,
    parse,
    path_document,
    point_document,
)
from jbmaslov.errors import InputError
from jbmaslov.generators import (
    random_frame_diagonal_path,
    random_lifted_configuration,
    random_rotation_generator,
    random_sym_unitary,
)

from .strategies import generators, small_dims


def same_samples(p, q, samples=17):
    tp, xp = p.realize(samples)
    tq, xq = q.realize(samples)
    return np.allclose(tp, tq, atol=1e-12) and all(np.max(np.abs(a - b)) <= 1e-12 for a, b in zip(xp, xq))


def test_matrix_encoding():
    m = np.array([[1 + 2j, 3], [3, -1j]])
    assert np.array_equal(decode_matrix(encode_matrix(m)), m)
    assert np.array_equal(decode_matrix([[1, [0, 1]], [[0, 1], 2.5]]), np.array([[1, 1j], [1j, 2.5]]))
    with pytest.raises(InputError):
        decode_matrix([[1, 2]], n=2)
    with pytest.raises(InputError):
        decode_matrix([[[1, 2, 3]]])


@given(generators(), small_dims)
def test_frame_diagonal_round_trip(rng, n):
    p = random_frame_diagonal_path(n, rng)
    q = parse(PathDocument, dump(path_document(p))).to_path()
    assert isinstance(q, FrameDiagonalPath)
    assert same_samples(p, q)


@given(generators(), small_dims)
def test_rotation_round_trip(rng, n):
    p = FrameRotationPath(random_rotation_generator(n, rng), random_sym_unitary(n, rng))
    q = parse(PathDocument, dump(path_document(p))).to_path()
    assert same_samples(p, q)


def test_composite_paths_are_sampled(rng):
    p = random_frame_diagonal_path(2, rng)
    q = FrameRotationPath(random_rotation_generator(2, rng), p.end)
    doc = path_document(concatenate(p, q), base=random_sym_unitary(2, rng), samples=9)
    assert doc.kind == "sampled"
    back = parse(PathDocument, dump(doc))
    assert back.to_path().n == 2 and back.base_matrix().shape == (2, 2)
    again = parse(PathDocument, dump(path_document(back.to_path(), base=back.base_matrix())))
    assert same_samples(back.to_path(), again.to_path())


def test_point_and_formula_documents(rng):
    x = random_sym_unitary(3, rng)
    doc = parse(PointDocument, dump(point_document(x, metadata="hi")))
    assert np.allclose(doc.to_matrix(), x)
    sigma, tau, e = random_lifted_configuration(2, rng)
    s2, t2, e2 = parse(FormulaEDocument, dump(formula_e_document(sigma, tau, e))).to_objects()
    assert s2.lift == sigma.lift and np.allclose(t2.x, tau.x) and np.allclose(e2, e)
    e_ref = random_sym_unitary(1, rng)
    s = LiftedPoint.principal(random_sym_unitary(1, rng), e_ref=e_ref)
    s3, _, _ = parse(FormulaEDocument, dump(formula_e_document(s, s, e_ref))).to_objects()
    assert np.allclose(s3.e_ref, e_ref)


def base_doc(**extra):
    doc = {"schema_version": 1, "n": 1, "kind": "frame_diagonal", "frame": [[1]], "breakpoints": [0, 1], "angles": [[0], [1]]}
    doc.update(extra)
    return json.dumps(doc)


def test_valid_minimal_document():
    assert parse(PathDocument, base_doc()).to_path().n == 1


@pytest.mark.parametrize(
    "text,needle",
    [
        (base_doc(colour="red"), "colour"),
        (base_doc(schema_version=2), "schema_version"),
        (base_doc(kind="spiral"), "kind"),
        (base_doc(n=0), "n"),
        (base_doc(frame=None), "frame"),
        (base_doc(generator=[[0]]), "generator"),
        (base_doc()[:40], "JSON"),
    ],
)
def test_errors_name_the_field(text, needle):
    with pytest.raises(InputError, match=needle):
        parse(PathDocument, text)


def test_structural_errors_surface_as_input_errors():
    with pytest.raises(InputError):
        parse(PathDocument, base_doc(frame=[[2]])).to_path()
    with pytest.raises(InputError):
        parse(PathDocument, base_doc(angles=[[0], [1], [2]])).to_path()
    with pytest.raises(InputError, match="lift"):
        text = json.dumps({"schema_version": 1, "n": 1, "sigma": {"matrix": [[1]], "lift": 1.0},
                           "tau": {"matrix": [[1]], "lift": 0.0}, "base": [[1]]})
        parse(FormulaEDocument, text).to_objects()


def test_load_missing_file(tmp_path):
    with pytest.raises(InputError):
        load(PathDocument, tmp_path / "nope.json")
    f = tmp_path / "p.json"
    f.write_text(base_doc(), encoding="utf-8")
    assert load(PathDocument, f).n == 1
