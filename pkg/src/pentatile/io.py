"""JSON tiling documents.

Two kinds share one envelope: ``tiling`` (placed pentagons) and ``patch``
(placed rhombi).  Floats are written with Python's shortest round-trip
representation, so reading a written document gives back the same bits.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import DocumentError, DomainError, SchemaVersionError
from .geometry import LABELS, PentagonParams
from .model import ASSEMBLY_TOL, PentagonTiling, PlacedRhombus, Prototype, RhombicPatch, Tile
from .rhombus import RhombusProto

SCHEMA = "pentatile-document"
VERSION = 1


def _pts(a):
    return None if a is None else [[float(x), float(y)] for x, y in np.asarray(a, dtype=float)]


def _params_dict(p):
    if p is None:
        return None
    return {"alpha": float(p.alpha), "theta": float(p.theta), "n": p.n}


def to_dict(doc) -> dict:
    if isinstance(doc, RhombicPatch):
        return {
            "schema": SCHEMA,
            "version": VERSION,
            "kind": "patch",
            "generator": doc.generator,
            "rhombi": [
                {
                    "id": r.id,
                    "angle_at_A": float(r.proto.angle_at_A),
                    "side": float(r.proto.side),
                    "rotation": float(r.rotation),
                    "translation": [float(r.translation[0]), float(r.translation[1])],
                }
                for r in doc.rhombi
            ],
            "hole": _pts(doc.hole),
        }
    if isinstance(doc, PentagonTiling):
        return {
            "schema": SCHEMA,
            "version": VERSION,
            "kind": "tiling",
            "tolerance": float(doc.tolerance),
            "parameters": [_params_dict(p.params) for p in doc.prototypes],
            "prototypes": [{"vertices": _pts(p.vertices), "labels": p.labels} for p in doc.prototypes],
            "tiles": [
                {
                    "id": t.id,
                    "proto": t.proto,
                    "rotation": float(t.rotation),
                    "translation": [float(t.translation[0]), float(t.translation[1])],
                    "reflected": bool(t.reflected),
                    "chirality": t.chirality,
                }
                for t in doc.tiles
            ],
            "declared_hole": _pts(doc.declared_hole),
            "rhombi": None if doc.rhombi is None else [_pts(c) for c in doc.rhombi],
            "metadata": doc.metadata,
        }
    raise TypeError(f"cannot serialize {type(doc).__name__}")


def dumps(doc) -> str:
    return json.dumps(to_dict(doc), indent=1) + "\n"


def write_document(doc, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"missing field {key!r} in {where}")
    return obj[key]


def _array(value, where, shape=None):
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{where}: expected numbers ({exc})") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DocumentError(f"{where}: expected a list of [x, y] points")
    if shape is not None and arr.shape[0] != shape:
        raise DocumentError(f"{where}: expected {shape} points, got {arr.shape[0]}")
    return arr


def from_dict(data: dict):
    if not isinstance(data, dict):
        raise DocumentError("document root must be an object")
    if data.get("schema") != SCHEMA:
        raise SchemaVersionError(f"unknown schema {data.get('schema')!r}")
    if data.get("version") != VERSION:
        raise SchemaVersionError(f"unsupported version {data.get('version')!r} (this build reads {VERSION})")
    kind = _need(data, "kind", "document")
    try:
        if kind == "patch":
            return _patch(data)
        if kind == "tiling":
            return _tiling(data)
    except DomainError as exc:
        raise DocumentError(f"invalid parameters: {exc}") from None
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        raise DocumentError(f"malformed {kind} document: {exc}") from None
    raise DocumentError(f"unknown document kind {kind!r}")


def _patch(data):
    rhombi = []
    for i, r in enumerate(_need(data, "rhombi", "patch")):
        where = f"rhombi[{i}]"
        angle = float(_need(r, "angle_at_A", where))
        proto = RhombusProto(angle, 180.0 - angle, float(_need(r, "side", where)))
        tx, ty = _need(r, "translation", where)
        rhombi.append(PlacedRhombus(proto, float(_need(r, "rotation", where)), (float(tx), float(ty)), int(r.get("id", i))))
    if len({r.id for r in rhombi}) != len(rhombi):
        raise DocumentError("rhombus ids are not unique")
    hole = data.get("hole")
    hole = None if hole is None else _array(hole, "hole")
    return RhombicPatch.from_rhombi(rhombi, hole=hole, generator=str(data.get("generator", "")))


def _tiling(data):
    params = data.get("parameters") or []
    raw = _need(data, "prototypes", "tiling")
    protos = []
    for i, p in enumerate(raw):
        par = params[i] if i < len(params) else None
        par = None if par is None else PentagonParams(float(par["alpha"]), float(par["theta"]), par.get("n"))
        verts = p.get("vertices") if isinstance(p, dict) else None
        if verts is None:
            if par is None:
                raise DocumentError(f"prototypes[{i}] has neither vertices nor parameters")
            protos.append(Prototype.from_params(par))
            continue
        labels = p.get("labels", LABELS if par is not None else "")
        protos.append(Prototype(_array(verts, f"prototypes[{i}].vertices"), par, labels or ""))
    if not raw and params:
        protos = [Prototype.from_params(PentagonParams(float(p["alpha"]), float(p["theta"]), p.get("n"))) for p in params]

    tiles = []
    for i, t in enumerate(_need(data, "tiles", "tiling")):
        where = f"tiles[{i}]"
        proto = int(_need(t, "proto", where))
        if not 0 <= proto < len(protos):
            raise DocumentError(f"{where}: prototype index {proto} out of range")
        tx, ty = _need(t, "translation", where)
        tiles.append(
            Tile(
                proto,
                float(t.get("rotation", 0.0)),
                (float(tx), float(ty)),
                bool(t.get("reflected", False)),
                str(t.get("chirality", "")),
                int(t.get("id", i)),
            )
        )
    if len({t.id for t in tiles}) != len(tiles):
        raise DocumentError("tile ids are not unique")
    hole = data.get("declared_hole")
    rhombi = data.get("rhombi")
    return PentagonTiling(
        prototypes=protos,
        tiles=tiles,
        declared_hole=None if hole is None else _array(hole, "declared_hole"),
        tolerance=float(data.get("tolerance", ASSEMBLY_TOL)),
        rhombi=None if rhombi is None else [_array(c, f"rhombi[{i}]", 4) for i, c in enumerate(rhombi)],
        metadata=dict(data.get("metadata") or {}),
    )


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"parse error: {exc.msg}", exc.lineno, exc.colno) from None
    return from_dict(data)


def read_document(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def realize_prototypes(doc: PentagonTiling) -> PentagonTiling:
    """Recompute prototype vertices from their parameters."""
    protos = [Prototype.from_params(p.params) if p.params is not None else p for p in doc.prototypes]
    return PentagonTiling(protos, doc.tiles, doc.declared_hole, doc.tolerance, doc.rhombi, doc.metadata)


__all__ = [
    "SCHEMA",
    "VERSION",
    "dumps",
    "from_dict",
    "loads",
    "read_document",
    "realize_prototypes",
    "to_dict",
    "write_document",
]
