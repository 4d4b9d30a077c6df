"""JSON documents for points, paths and (E) configurations.

Complex matrices are row-major lists of ``[re, im]`` pairs; plain numbers are
accepted for real entries. Unknown fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .calculus import LiftedPoint
from .errors import InputError
from .paths import FrameDiagonalPath, FrameRotationPath, SampledPath, TripotentPath

SCHEMA_VERSION = 1

Entry = Union[float, tuple[float, float]]
Matrix = list[list[Entry]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


def decode_matrix(rows, n: int | None = None, name: str = "matrix") -> np.ndarray:
    try:
        m = np.array([[complex(*v) if isinstance(v, (tuple, list)) else complex(v) for v in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: {exc}") from exc
    if m.ndim != 2 or (n is not None and m.shape != (n, n)):
        raise InputError(f"{name}: expected a {n}x{n} matrix, got shape {m.shape}")
    return m


def encode_matrix(m, real: bool = False) -> list:
    m = np.asarray(m)
    if real:
        return [[float(v.real) for v in row] for row in m]
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


class PathDocument(_Strict):
    schema_version: Literal[1]
    n: int = Field(gt=0)
    kind: Literal["sampled", "frame_diagonal", "frame_rotation"]
    base: Optional[Matrix] = None
    metadata: str = ""
    # sampled
    parameters: Optional[list[float]] = None
    samples: Optional[list[Matrix]] = None
    # frame_diagonal
    frame: Optional[Matrix] = None
    breakpoints: Optional[list[float]] = None
    angles: Optional[list[list[float]]] = None
    # frame_rotation
    generator: Optional[Matrix] = None
    start: Optional[Matrix] = None

    @model_validator(mode="after")
    def _payload_matches_kind(self):
        needed = {
            "sampled": ("parameters", "samples"),
            "frame_diagonal": ("frame", "breakpoints", "angles"),
            "frame_rotation": ("generator", "start"),
        }
        for field_name in needed[self.kind]:
            if getattr(self, field_name) is None:
                raise ValueError(f"kind {self.kind!r} requires field {field_name!r}")
        for kind, fields in needed.items():
            if kind == self.kind:
                continue
            for field_name in fields:
                if field_name not in needed[self.kind] and getattr(self, field_name) is not None:
                    raise ValueError(f"field {field_name!r} does not belong to kind {self.kind!r}")
        return self

    def to_path(self) -> TripotentPath:
        n = self.n
        if self.kind == "sampled":
            mats = [decode_matrix(s, n, f"samples[{i}]") for i, s in enumerate(self.samples)]
            return SampledPath(self.parameters, mats)
        if self.kind == "frame_diagonal":
            return FrameDiagonalPath(decode_matrix(self.frame, n, "frame"), self.breakpoints, self.angles)
        return FrameRotationPath(decode_matrix(self.generator, n, "generator"), decode_matrix(self.start, n, "start"))

    def base_matrix(self) -> np.ndarray:
        return np.eye(self.n, dtype=complex) if self.base is None else decode_matrix(self.base, self.n, "base")


class PointDocument(_Strict):
    schema_version: Literal[1]
    n: int = Field(gt=0)
    matrix: Matrix
    lift: Optional[float] = None
    metadata: str = ""

    def to_matrix(self) -> np.ndarray:
        return decode_matrix(self.matrix, self.n, "matrix")


class LiftedEntry(_Strict):
    matrix: Matrix
    lift: float


class FormulaEDocument(_Strict):
    schema_version: Literal[1]
    n: int = Field(gt=0)
    sigma: LiftedEntry
    tau: LiftedEntry
    base: Matrix
    cover_base: Optional[Matrix] = None
    metadata: str = ""

    def to_objects(self) -> tuple[LiftedPoint, LiftedPoint, np.ndarray]:
        e_ref = None if self.cover_base is None else decode_matrix(self.cover_base, self.n, "cover_base")
        s = LiftedPoint(decode_matrix(self.sigma.matrix, self.n, "sigma.matrix"), self.sigma.lift, e_ref)
        t = LiftedPoint(decode_matrix(self.tau.matrix, self.n, "tau.matrix"), self.tau.lift, e_ref)
        return s, t, decode_matrix(self.base, self.n, "base")


def _format_validation(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "<document>"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def parse(model: type[BaseModel], text: str, source: str = "<input>"):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: not valid JSON ({exc})") from exc
    try:
        return model.model_validate(raw)
    except ValidationError as exc:
        raise InputError(f"{source}: {_format_validation(exc)}") from exc


def load(model: type[BaseModel], path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse(model, text, str(path))


def path_document(path: TripotentPath, base=None, metadata: str = "", samples: int | None = None) -> PathDocument:
    """Document for ``path``; composite paths are stored as samples."""
    common = dict(
        schema_version=SCHEMA_VERSION,
        n=path.n,
        base=None if base is None else encode_matrix(base),
        metadata=metadata,
    )
    if isinstance(path, FrameDiagonalPath):
        real = not np.iscomplexobj(path.frame)
        return PathDocument(
            kind="frame_diagonal",
            frame=encode_matrix(path.frame, real=real),
            breakpoints=path.breakpoints.tolist(),
            angles=path.angles.tolist(),
            **common,
        )
    if isinstance(path, FrameRotationPath):
        return PathDocument(
            kind="frame_rotation", generator=encode_matrix(path.generator, real=True), start=encode_matrix(path.x0), **common
        )
    ts, xs = path.realize(samples)
    return PathDocument(kind="sampled", parameters=list(map(float, ts)), samples=[encode_matrix(x) for x in xs], **common)


def point_document(x, lift: float | None = None, metadata: str = "") -> PointDocument:
    x = np.asarray(x)
    return PointDocument(schema_version=SCHEMA_VERSION, n=x.shape[0], matrix=encode_matrix(x), lift=lift, metadata=metadata)


def formula_e_document(sigma: LiftedPoint, tau: LiftedPoint, e, metadata: str = "") -> FormulaEDocument:
    n = sigma.n
    cover = None if np.allclose(sigma.e_ref, np.eye(n)) else encode_matrix(sigma.e_ref)
    return FormulaEDocument(
        schema_version=SCHEMA_VERSION,
        n=n,
        sigma=LiftedEntry(matrix=encode_matrix(sigma.x), lift=sigma.lift),
        tau=LiftedEntry(matrix=encode_matrix(tau.x), lift=tau.lift),
        base=encode_matrix(e),
        cover_base=cover,
        metadata=metadata,
    )


def dump(doc: BaseModel) -> str:
    return doc.model_dump_json(indent=2, exclude_none=True)
