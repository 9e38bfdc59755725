"""Placed rhombi, rhombic patches and pentagon tilings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .geometry import LABELS, PentagonParams, realize
from .planar import compose, rot
from .rhombus import RhombusProto

ASSEMBLY_TOL = 1e-6


@dataclass(frozen=True)
class PlacedRhombus:
    proto: RhombusProto
    rotation: float
    translation: tuple
    id: int

    def corners(self) -> np.ndarray:
        """World corners, counterclockwise from an A corner."""
        return self.proto.corners() @ rot(self.rotation).T + np.asarray(self.translation)

    @classmethod
    def from_corners(cls, corners, id: int) -> "PlacedRhombus":
        """Build from four counterclockwise corners, the first one an A corner."""
        c = np.asarray(corners, dtype=float)
        u, v = c[1] - c[0], c[3] - c[0]
        side = float(np.linalg.norm(u))
        rotation = math.degrees(math.atan2(u[1], u[0]))
        angle = math.degrees(math.atan2(u[0] * v[1] - u[1] * v[0], float(np.dot(u, v))))
        proto = RhombusProto(angle, 180.0 - angle, side)
        return cls(proto, rotation, (float(c[0, 0]), float(c[0, 1])), id)

    def redesignated(self) -> "PlacedRhombus":
        """Same outline with the other diagonal marked as the A diagonal."""
        c = self.corners()
        return PlacedRhombus.from_corners(np.roll(c, -1, axis=0), self.id)


def build_adjacency(rhombi, tol=ASSEMBLY_TOL):
    """(id, id, (edge, edge)) for every pair of rhombi sharing a full edge."""
    edges = []
    for r in rhombi:
        c = r.corners()
        for i in range(4):
            edges.append((r.id, i, c[i], c[(i + 1) % 4]))
    if not edges:
        return []
    mids = np.array([0.5 * (e[2] + e[3]) for e in edges])
    tree = cKDTree(mids)
    out = []
    for a, b in sorted(tree.query_pairs(tol)):
        ra, ia, sa, ea = edges[a]
        rb, ib, sb, eb = edges[b]
        if ra == rb:
            continue
        if np.allclose(sa, eb, atol=tol) and np.allclose(ea, sb, atol=tol):
            out.append((ra, rb, (ia, ib)) if ra < rb else (rb, ra, (ib, ia)))
    out.sort()
    return out


@dataclass
class RhombicPatch:
    rhombi: list
    adjacency: list = field(default_factory=list)
    hole: Optional[np.ndarray] = None
    generator: str = ""

    @classmethod
    def from_rhombi(cls, rhombi, hole=None, generator=""):
        rhombi = list(rhombi)
        return cls(rhombi, build_adjacency(rhombi), None if hole is None else np.asarray(hole, float), generator)

    @classmethod
    def from_outlines(cls, outlines, hole=None, generator="import"):
        """Patch from corner quadruples (counterclockwise, A corner first)."""
        return cls.from_rhombi(
            [PlacedRhombus.from_corners(c, i) for i, c in enumerate(outlines)], hole, generator
        )

    @property
    def side(self) -> float:
        return self.rhombi[0].proto.side

    def polygons(self):
        return [r.corners() for r in self.rhombi]

    def labels(self):
        return ["ACAC"] * len(self.rhombi)

    def __len__(self):
        return len(self.rhombi)


@dataclass(frozen=True, eq=False)
class Prototype:
    """Tile shape in its canonical frame.

    Pentagon prototypes carry their parameters and the labels A..E; an
    imported polygon may come with explicit vertices only.
    """

    vertices: np.ndarray
    params: Optional[PentagonParams] = None
    labels: str = ""

    @classmethod
    def from_params(cls, params: PentagonParams) -> "Prototype":
        return cls(realize(params).vertices, params, LABELS)


@dataclass(frozen=True)
class Tile:
    proto: int
    rotation: float
    translation: tuple
    reflected: bool = False
    chirality: str = ""
    id: int = 0


def tile_vertices(proto: Prototype, tile: Tile) -> np.ndarray:
    m = compose(tile.rotation, tile.reflected)
    return proto.vertices @ m.T + np.asarray(tile.translation)


@dataclass
class PentagonTiling:
    prototypes: list
    tiles: list
    declared_hole: Optional[np.ndarray] = None
    tolerance: float = ASSEMBLY_TOL
    rhombi: Optional[list] = None  # corner arrays of the underlying rhombi, if known
    metadata: dict = field(default_factory=dict)

    def polygons(self):
        return [tile_vertices(self.prototypes[t.proto], t) for t in self.tiles]

    def labels(self):
        return [self.prototypes[t.proto].labels or None for t in self.tiles]

    def vertex_array(self) -> np.ndarray:
        """(N, k, 2) array when every prototype has the same vertex count."""
        return np.array(self.polygons())

    def with_tiles(self, tiles, **changes) -> "PentagonTiling":
        tiles = [replace(t, id=i) for i, t in enumerate(tiles)]
        return replace(self, tiles=tiles, **changes)

    def __len__(self):
        return len(self.tiles)
