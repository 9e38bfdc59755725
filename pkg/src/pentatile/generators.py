"""Rhombic patch generators and their conversion into pentagon tilings."""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import shapely
from scipy.spatial import cKDTree

from .errors import (
    AngleMismatchError,
    ChiralityConflictError,
    DomainError,
    MixedThetaError,
    NoUnitAtCenterError,
    PreconditionError,
    UnsupportedHoleError,
)
from .geometry import ANGLE_TOL, PentagonParams, angles_from_params
from .model import (
    ASSEMBLY_TOL,
    PentagonTiling,
    PlacedRhombus,
    Prototype,
    RhombicPatch,
    Tile,
)
from .planar import compose, decompose, interior_angles, reflect_matrix, rot, unit
from .rhombus import Chirality, Placement, assign_chirality, canonical_pair, edge_decorations

TRANSLATE = "translate"
REFLECT = "reflect"


def _cell(base, p, q, rid, a_at_base=True):
    base = np.asarray(base, float)
    c = np.array([base, base + p, base + p + q, base + q])
    if not a_at_base:
        c = np.roll(c, -1, axis=0)
    return PlacedRhombus.from_corners(c, rid)


def wedge_rotational(n: int, rings: int, side: float = 1.0) -> RhombicPatch:
    """n wedge lattices of rings x rings rhombi around the origin."""
    if n < 3 or rings < 1:
        raise DomainError(f"need n >= 3 and rings >= 1, got n={n}, rings={rings}")
    out = []
    for i in range(n):
        u = side * unit(i * 360.0 / n)
        v = side * unit((i + 1) * 360.0 / n)
        for j in range(rings):
            for k in range(rings):
                out.append(_cell(j * u + k * v, u, v, len(out)))
    return RhombicPatch.from_rhombi(out, generator=f"wedge n={n} rings={rings}")


def belt_patch(n_or_angle, belts: int, length: int, joins=None, side: float = 1.0) -> RhombicPatch:
    """Columns of translated rhombi, glued side by side.

    ``n_or_angle`` is a fold order (int, rhombus angle 360/n) or an angle in
    degrees (float).  A Translate join repeats the previous column shifted
    across; a Reflect join mirrors it in the shared line, which moves the A
    corners to the other diagonal.
    """
    if isinstance(n_or_angle, (int, np.integer)) and not isinstance(n_or_angle, bool):
        if n_or_angle < 3:
            raise DomainError(f"n must be >= 3, got {n_or_angle}")
        angle = 360.0 / n_or_angle
    else:
        angle = float(n_or_angle)
    if not 0.0 < angle < 180.0:
        raise DomainError(f"rhombus angle must lie in (0, 180), got {angle}")
    if belts < 1 or length < 1:
        raise DomainError("belts and length must be positive")
    joins = [TRANSLATE] * (belts - 1) if joins is None else [str(j).lower() for j in joins]
    if len(joins) != belts - 1:
        raise PreconditionError(f"expected {belts - 1} joins, got {len(joins)}")
    if any(j not in (TRANSLATE, REFLECT) for j in joins):
        raise PreconditionError(f"joins must be {TRANSLATE!r} or {REFLECT!r}")

    p = side * unit(0.0)
    q = side * unit(angle)
    qh = q / np.linalg.norm(q)
    a_at_base = True
    origin = np.zeros(2)
    out = []
    for b in range(belts):
        if b:
            origin = origin + p
            if joins[b - 1] == REFLECT:
                p = p - 2.0 * np.dot(p, qh) * qh
                a_at_base = not a_at_base
        for t in range(length):
            out.append(_cell(origin + t * q, p, q, len(out), a_at_base))
    return RhombicPatch.from_rhombi(out, generator=f"belt angle={angle:g} belts={belts} length={length}")


def regular_polygon(m: int, side: float = 1.0) -> np.ndarray:
    """Counterclockwise regular m-gon centred at the origin, first edge along +x."""
    r = side / (2.0 * math.sin(math.pi / m))
    return np.array([r * unit(-90.0 - 180.0 / m + i * 360.0 / m) for i in range(m)])


def hole_rosette(m: int, k: int = 1, rings: int = 3, side: float = 1.0) -> RhombicPatch:
    """Pinwheel of m fans around a regular m-gon hole.

    The fan at hole vertex V_i fills the cone between the continuation of the
    incoming hole edge and the outgoing hole edge; it is split into k
    sub-wedges, each a rings x rings lattice of rhombi with acute angle
    360/(m k) at its base corner.
    """
    if m < 3 or k < 1 or rings < 1:
        raise DomainError(f"need m >= 3, k >= 1, rings >= 1, got {m}, {k}, {rings}")
    hole = regular_polygon(m, side)
    step = 360.0 / (m * k)
    out = []
    for i in range(m):
        start = (i - 1) * 360.0 / m
        for t in range(k):
            u = side * unit(start + t * step)
            v = side * unit(start + (t + 1) * step)
            for j in range(rings):
                for l in range(rings):
                    out.append(_cell(hole[i] + j * u + l * v, u, v, len(out)))
    return RhombicPatch.from_rhombi(out, hole=hole, generator=f"hole m={m} k={k} rings={rings}")


def zonogon_rosette(q: int, side: float = 1.0) -> RhombicPatch:
    """The regular 2q-gon cut into q(q-1)/2 rhombi."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    u = [side * unit(k * 180.0 / q) for k in range(q)]
    out = []
    for i in range(q):
        for j in range(i + 1, q):
            base = sum((u[k] for k in range(i + 1, j)), np.zeros(2))
            out.append(_cell(base, u[i], u[j], len(out)))
    return RhombicPatch.from_rhombi(out, generator=f"zonogon q={q}")


def star_hexagon(side: float = 1.0) -> RhombicPatch:
    """Hexagon of edge 2 tiled by 60-degree rhombi: a six-point star at the
    centre and one rhombus in each notch.  Every star tip vertex carries
    three 120-degree corners."""
    u = [side * unit(60.0 * i) for i in range(6)]
    out = []
    for i in range(6):
        a, b = u[i], u[(i + 1) % 6]
        out.append([np.zeros(2), a, a + b, b])
    for i in range(6):
        a, prev, nxt = u[i], u[(i - 1) % 6], u[(i + 1) % 6]
        out.append([a + prev, 2 * a, a + nxt, a])
    return RhombicPatch.from_outlines(out, generator="star hexagon")


def subdivide(patch: RhombicPatch, f: int) -> RhombicPatch:
    """Split every rhombus into f x f similar rhombi, keeping the A diagonal."""
    if f < 1:
        raise DomainError(f"f must be >= 1, got {f}")
    if f == 1:
        return patch
    out = []
    for r in patch.rhombi:
        c = r.corners()
        p, q = (c[1] - c[0]) / f, (c[3] - c[0]) / f
        for j in range(f):
            for k in range(f):
                out.append(_cell(c[0] + j * p + k * q, p, q, len(out)))
    hole = None if patch.hole is None else patch.hole
    return RhombicPatch.from_rhombi(out, hole=hole, generator=f"{patch.generator} / {f}")


# ---------------------------------------------------------------------------
# decoration


def _lookup(table, acute):
    for key, params in table.items():
        if abs(float(key) - acute) <= 1e-6:
            return params
    raise AngleMismatchError(f"no pentagon assigned to rhombus angle {acute:.6g}")


def _pair_cache():
    cache = {}

    def get(params, chirality):
        key = (params, chirality)
        if key not in cache:
            pair = canonical_pair(params, chirality)
            cache[key] = (pair, edge_decorations(pair))
        return cache[key]

    return get


def decorate_patch(patch: RhombicPatch, pentagon_for_angle, seed=(0, Chirality.Anterior), tol=ASSEMBLY_TOL):
    """Replace every rhombus by a chirality-resolved pentagon pair.

    ``pentagon_for_angle`` maps an acute rhombus angle (degrees) to the
    pentagon parameters used on rhombi with that angle.  The patch is
    rescaled so its rhombus side equals the pair's rhombus side.
    """
    if not patch.rhombi:
        raise PreconditionError("empty patch")
    if isinstance(pentagon_for_angle, PentagonParams):
        pentagon_for_angle = {_acute(angles_from_params(pentagon_for_angle).A): pentagon_for_angle}
    thetas = [p.theta for p in pentagon_for_angle.values()]
    if max(thetas) - min(thetas) > ANGLE_TOL:
        raise MixedThetaError(f"pentagons do not share theta: {sorted(set(thetas))}")

    sides = [r.proto.side for r in patch.rhombi]
    if max(sides) - min(sides) > tol:
        raise PreconditionError("rhombi of one patch must share their side length")

    # pick the pentagon of every rhombus and put the A designation where the
    # pentagon's A corner goes
    chosen, rhombi = [], []
    for r in patch.rhombi:
        a = r.proto.angle_at_A
        params = _lookup(pentagon_for_angle, _acute(a))
        pa = angles_from_params(params).A
        if abs(pa - a) <= 1e-6:
            rhombi.append(r)
        elif abs(pa - (180.0 - a)) <= 1e-6:
            rhombi.append(r.redesignated())
        else:
            raise AngleMismatchError(f"pentagon A={pa:.6g} fits neither corner of a {a:.6g} rhombus")
        chosen.append(params)

    get = _pair_cache()
    target = get(chosen[0], Chirality.Anterior)[0].proto.side
    scale = target / patch.side
    rhombi = [PlacedRhombus.from_corners(r.corners() * scale, r.id) for r in rhombi]
    hole = None if patch.hole is None else patch.hole * scale
    scaled = RhombicPatch.from_rhombi(rhombi, hole=hole, generator=patch.generator)

    seed_id, seed_chirality = seed
    seed_chirality = Chirality(seed_chirality) if isinstance(seed_chirality, str) else seed_chirality
    flat = all(abs(angles_from_params(p).B - 180.0) <= ANGLE_TOL for p in chosen)
    assignment = assign_chirality(scaled, seed_id, seed_chirality, flat=flat, tol=tol)
    if not assignment:
        raise ChiralityConflictError(assignment)

    protos, proto_index = [], {}
    tiles, apexes = [], []
    for r, params in zip(scaled.rhombi, chosen):
        if params not in proto_index:
            proto_index[params] = len(protos)
            protos.append(Prototype.from_params(params))
        chirality = assignment[r.id]
        pair, decos = get(params, chirality)
        world = Placement(rot(r.rotation), np.asarray(r.translation, float))
        for pl in pair.placements:
            full = pl.then(world)
            rotation, reflected = decompose(full.matrix)
            tiles.append(
                Tile(proto_index[params], rotation, tuple(map(float, full.offset)), reflected, chirality.value, len(tiles))
            )
        for d in decos:
            apexes.append((world.apply(d.start), world.apply(d.end), world.apply(d.apex)))

    declared = None if hole is None else _decorated_hole(hole, apexes, tol)
    meta = {
        "generator": patch.generator,
        "seed": [int(seed_id), seed_chirality.value],
        "tolerance": tol,
    }
    return PentagonTiling(protos, tiles, declared, tol, [r.corners() for r in scaled.rhombi], meta)


def _acute(angle):
    return min(angle, 180.0 - angle)


def _decorated_hole(hole, apexes, tol):
    mids = np.array([0.5 * (s + e) for s, e, _ in apexes])
    tree = cKDTree(mids)
    out = []
    m = len(hole)
    for i in range(m):
        s, e = hole[i], hole[(i + 1) % m]
        hits = tree.query_ball_point(0.5 * (s + e), tol)
        if not hits:
            raise PreconditionError("declared hole edge is not a rhombus edge")
        out.append(s)
        out.append(apexes[hits[0]][2])
    return np.array(out)


# ---------------------------------------------------------------------------
# local modifications


def _incident(polys, center, tol):
    out = []
    for t, poly in enumerate(polys):
        d = np.linalg.norm(poly - center, axis=1)
        hit = np.flatnonzero(d <= tol)
        if hit.size:
            out.append((t, int(hit[0])))
    return out


def _vertex_set_equal(a, b, tol):
    if len(a) != len(b):
        return False
    d, _ = cKDTree(b).query(a)
    return bool(np.all(d <= tol))


def _outline(polys, tol):
    merged = shapely.union_all([shapely.Polygon(p) for p in polys], grid_size=tol * 1e-3)
    if merged.geom_type != "Polygon":
        return None
    ring = np.asarray(merged.exterior.coords)[:-1]
    keep = np.abs(interior_angles(ring) - 180.0) > 1e-4
    return ring[keep]


def flip_unit(tiling: PentagonTiling, center, tol=ASSEMBLY_TOL) -> PentagonTiling:
    """Mirror the six-pentagon hexagonal unit around ``center`` in place.

    The unit is the three pairs meeting with 120-degree corners at
    ``center``.  It is reflected across a mirror line of its own outline, so
    the surrounding tiles are untouched.
    """
    center = np.asarray(center, float)
    polys = tiling.polygons()
    hits = _incident(polys, center, tol)
    if len(hits) != 3:
        raise NoUnitAtCenterError(f"{len(hits)} tiles meet at {center.tolist()}, expected 3")
    for t, v in hits:
        if abs(interior_angles(polys[t])[v] - 120.0) > 1e-6:
            raise NoUnitAtCenterError("corners at the centre are not all 120 degrees")

    labels = tiling.labels()
    unit_ids = []
    for t, _ in hits:
        if labels[t] is None:
            raise NoUnitAtCenterError("tiles carry no vertex labels")
        d_pt, e_pt = polys[t][3], polys[t][4]
        partner = [
            s
            for s, poly in enumerate(polys)
            if s != t
            and np.linalg.norm(poly[3] - e_pt) <= tol
            and np.linalg.norm(poly[4] - d_pt) <= tol
        ]
        if len(partner) != 1:
            raise NoUnitAtCenterError("a tile at the centre has no partner across its odd edge")
        unit_ids += [t, partner[0]]
    if len(set(unit_ids)) != 6:
        raise NoUnitAtCenterError("the tiles at the centre do not form six distinct pentagons")

    outline = _outline([polys[i] for i in unit_ids], tol)
    if outline is None:
        raise NoUnitAtCenterError("the unit is not a single polygon")
    axis = None
    dirs = sorted({round(math.degrees(math.atan2(*(p - center)[::-1])) % 180.0, 9) for p in outline})
    for phi in dirs:
        f = reflect_matrix(phi)
        if _vertex_set_equal((outline - center) @ f.T + center, outline, tol):
            axis = phi
            break
    if axis is None:
        raise NoUnitAtCenterError("the unit outline has no mirror line through the centre")

    f = reflect_matrix(axis)
    mirror = Placement(f, center - f @ center)
    tiles = list(tiling.tiles)
    for i in unit_ids:
        t = tiles[i]
        pl = Placement(compose(t.rotation, t.reflected), np.asarray(t.translation, float)).then(mirror)
        rotation, reflected = decompose(pl.matrix)
        flipped = {"anterior": "posterior", "posterior": "anterior"}.get(t.chirality, t.chirality)
        tiles[i] = replace(t, rotation=rotation, translation=tuple(map(float, pl.offset)), reflected=reflected, chirality=flipped)

    rhombi = tiling.rhombi
    if rhombi is not None:
        shell = shapely.Polygon(outline)
        # mirrored corners run clockwise; reverse and keep an A corner first
        rhombi = [
            np.roll(mirror.apply(c)[::-1], 1, axis=0) if shell.contains(shapely.Point(np.mean(c, axis=0))) else c
            for c in rhombi
        ]
    meta = dict(tiling.metadata)
    meta["flips"] = list(meta.get("flips", [])) + [[float(center[0]), float(center[1])]]
    return replace(tiling, tiles=tiles, rhombi=rhombi, metadata=meta)


def _filler_candidates(corners, protos):
    """Rhombus outlines (A corner first) that could fill a polygonal hole
    spanned by ``corners``, for each pentagon prototype present."""
    k = len(corners)
    out = []
    if k == 4:
        for roll in (0, 1):
            out.append([np.roll(corners, -roll, axis=0)])
    elif k == 6:
        o = corners.mean(axis=0)
        for d in (0, 1):
            cells = []
            for i in range(3):
                j = 2 * i + d
                cells.append(np.array([o, corners[j % 6], corners[(j + 1) % 6], corners[(j + 2) % 6]]))
            out.append(cells)
            out.append([np.roll(c, -1, axis=0) for c in cells])
    return out


def fill_hole(tiling: PentagonTiling, tol=ASSEMBLY_TOL) -> PentagonTiling:
    """Close a square hole with one pentagon pair or a hexagonal hole with
    three pairs, choosing the chirality whose outline matches the hole."""
    hole = tiling.declared_hole
    if hole is None:
        raise UnsupportedHoleError("the tiling declares no hole")
    hole = np.asarray(hole, float)
    if len(hole) not in (8, 12):
        raise UnsupportedHoleError(f"hole with {len(hole)} corners has no filler")
    k = len(hole) // 2
    for offset in (0, 1):
        corners = hole[offset::2]
        sides = np.linalg.norm(np.roll(corners, -1, axis=0) - corners, axis=1)
        ang = interior_angles(corners)
        if np.ptp(sides) > tol or np.max(np.abs(ang - (180.0 - 360.0 / k))) > 1e-6:
            continue
        for cells in _filler_candidates(corners, tiling.prototypes):
            for pi, proto in enumerate(tiling.prototypes):
                if proto.params is None:
                    continue
                for chirality in Chirality:
                    try:
                        added = _fill_cells(cells, proto, pi, chirality, tol)
                    except (AngleMismatchError, PreconditionError):
                        continue
                    polys = [_tile_poly(tiling.prototypes[t.proto], t) for t in added]
                    outline = _outline(polys, tol)
                    if outline is not None and _vertex_set_equal(outline, _strip(hole), tol):
                        tiles = list(tiling.tiles) + added
                        rhombi = None if tiling.rhombi is None else list(tiling.rhombi) + [np.asarray(c) for c in cells]
                        meta = dict(tiling.metadata)
                        meta["filled"] = True
                        return replace(tiling, declared_hole=None, rhombi=rhombi, metadata=meta).with_tiles(tiles)
    raise UnsupportedHoleError("no pentagon filler matches the hole outline")


def _strip(ring):
    keep = np.abs(interior_angles(ring) - 180.0) > 1e-4
    return ring[keep]


def _tile_poly(proto, tile):
    return proto.vertices @ compose(tile.rotation, tile.reflected).T + np.asarray(tile.translation)


def _fill_cells(cells, proto, proto_index, chirality, tol):
    params = proto.params
    pair = canonical_pair(params, chirality)
    out = []
    for c in cells:
        r = PlacedRhombus.from_corners(c, 0)
        if abs(r.proto.side - pair.proto.side) > tol:
            raise PreconditionError("hole side differs from the pair's rhombus side")
        if abs(r.proto.angle_at_A - pair.proto.angle_at_A) > 1e-6:
            raise AngleMismatchError("corner designation does not fit")
        world = Placement(rot(r.rotation), np.asarray(r.translation, float))
        for pl in pair.placements:
            full = pl.then(world)
            rotation, reflected = decompose(full.matrix)
            out.append(Tile(proto_index, rotation, tuple(map(float, full.offset)), reflected, chirality.value))
    return out
