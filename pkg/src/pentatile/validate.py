"""Independent geometric checks for tilings and rhombic patches.

Nothing here trusts how a document was built: every verdict is recomputed
from the placed polygons alone.  Any object exposing ``polygons()`` and
``labels()`` is accepted (both :class:`PentagonTiling` and
:class:`RhombicPatch` do).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import shapely
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .clip import prepare, prepared_overlap
from .errors import NoHoleError
from .planar import interior_angles, reflect_matrix, rot, signed_area

DEFAULT_TOL = 1e-6
OVERLAP_TOL = 1e-9
GRID = 1e-12
MAX_ORDER = 24


@dataclass
class _View:
    polys: list
    labels: list
    kinds: list
    ids: list
    hole: Optional[np.ndarray]


def _view(doc) -> _View:
    polys = [np.asarray(p, dtype=float) for p in doc.polygons()]
    labels = list(doc.labels())
    tiles = getattr(doc, "tiles", None)
    if tiles is not None:
        kinds = [t.proto for t in tiles]
        ids = [t.id for t in tiles]
        hole = doc.declared_hole
    else:
        kinds = [0] * len(polys)
        ids = [r.id for r in doc.rhombi]
        hole = doc.hole
    return _View(polys, labels, kinds, ids, None if hole is None else np.asarray(hole, float))


# ---------------------------------------------------------------------------
# vertex clusters and the union


@dataclass
class _Clusters:
    points: np.ndarray  # (k, 2) cluster representatives
    of: list  # per tile, array of cluster index per vertex


def _cluster(polys, tol) -> _Clusters:
    if not polys:
        return _Clusters(np.zeros((0, 2)), [])
    pts = np.concatenate(polys)
    tree = cKDTree(pts)
    pairs = tree.query_pairs(tol, output_type="ndarray")
    n = len(pts)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    count, label = connected_components(graph, directed=False)
    # renumber clusters by first occurrence so the output is order-stable
    first = {}
    for lab in label:
        first.setdefault(lab, len(first))
    label = np.array([first[lab] for lab in label])
    sums = np.zeros((count, 2))
    np.add.at(sums, label, pts)
    counts = np.bincount(label, minlength=count)
    points = sums / counts[:, None]
    of, start = [], 0
    for p in polys:
        of.append(label[start : start + len(p)])
        start += len(p)
    return _Clusters(points, of)


def _union(view: _View, clusters: _Clusters, grid=GRID):
    snapped = [shapely.Polygon(clusters.points[c]) for c in clusters.of]
    if not snapped:
        return shapely.Polygon()
    return shapely.union_all(snapped, grid_size=grid)


def _parts(geom):
    if geom.is_empty:
        return []
    return list(geom.geoms) if hasattr(geom, "geoms") else [geom]


def _boundary(union, tol):
    """Exterior rings plus the interior rings that are real gaps."""
    lines = []
    for part in _parts(union):
        if part.geom_type != "Polygon":
            continue
        lines.append(shapely.LineString(part.exterior.coords))
        for ring in part.interiors:
            if shapely.Polygon(ring).area > tol * tol:
                lines.append(shapely.LineString(ring.coords))
    return shapely.MultiLineString(lines) if lines else shapely.MultiLineString()


# ---------------------------------------------------------------------------
# overlaps and coverage


def check_overlaps(doc, tol=OVERLAP_TOL):
    """(id, id, area) for every pair overlapping by more than tol times the
    smaller tile area."""
    view = doc if isinstance(doc, _View) else _view(doc)
    if len(view.polys) < 2:
        return []
    boxes = [shapely.box(*p.min(axis=0), *p.max(axis=0)) for p in view.polys]
    tree = shapely.STRtree(boxes)
    a_idx, b_idx = tree.query(boxes)
    tris = [prepare(p) for p in view.polys]
    areas = [abs(signed_area(p)) for p in view.polys]
    out = []
    for i, j in zip(a_idx, b_idx):
        if i >= j:
            continue
        area = prepared_overlap(tris[i], tris[j])
        if area > tol * min(areas[i], areas[j]):
            a, b = sorted((view.ids[i], view.ids[j]))
            out.append((a, b, area))
    out.sort()
    return out


def probe_disk(center, radius, quad_segs=256):
    return shapely.Point(float(center[0]), float(center[1])).buffer(radius, quad_segs=quad_segs)


def check_coverage(doc, center, radius, tol=DEFAULT_TOL, grid=GRID):
    """Area of the probe disk covered neither by tiles nor by the declared
    hole.  The disk is a fine polygon; its own area is the reference."""
    view = doc if isinstance(doc, _View) else _view(doc)
    disk = probe_disk(center, radius)
    clusters = _cluster(view.polys, tol)
    covered = _union(view, clusters, grid)
    if view.hole is not None:
        covered = shapely.union(covered, shapely.Polygon(view.hole), grid_size=grid)
    return max(0.0, float(shapely.difference(disk, covered, grid_size=grid).area))


# ---------------------------------------------------------------------------
# vertex fans and edge-to-edge


@dataclass
class VertexFan:
    point: tuple
    incident: list  # (tile id, angle, label)
    sum: float
    signature: tuple
    interior: bool

    def to_dict(self):
        return {
            "point": list(self.point),
            "incident": [[i, a, lab] for i, a, lab in self.incident],
            "sum": self.sum,
            "signature": "".join(self.signature),
            "interior": self.interior,
        }


def _fans(view, clusters, union, tol):
    incident = [[] for _ in range(len(clusters.points))]
    for t, poly in enumerate(view.polys):
        angles = interior_angles(poly)
        lab = view.labels[t]
        for v, c in enumerate(clusters.of[t]):
            incident[c].append((view.ids[t], float(angles[v]), lab[v] if lab else "?"))
    boundary = _boundary(union, tol)
    pts = shapely.points(clusters.points) if len(clusters.points) else []
    dist = shapely.distance(pts, boundary) if len(clusters.points) and not boundary.is_empty else np.zeros(len(pts))
    fans = []
    for c, inc in enumerate(incident):
        inc.sort()
        total = float(sum(a for _, a, _ in inc))
        sig = tuple(sorted(lab for _, _, lab in inc))
        p = clusters.points[c]
        fans.append(VertexFan((float(p[0]), float(p[1])), inc, total, sig, bool(dist[c] > tol)))
    fans.sort(key=lambda f: (round(f.point[0], 6), round(f.point[1], 6)))
    return fans


def vertex_fans(doc, tol=DEFAULT_TOL):
    view = _view(doc)
    clusters = _cluster(view.polys, tol)
    return _fans(view, clusters, _union(view, clusters), tol)


def _edge_violations(view, clusters, tol):
    pts = clusters.points
    if not len(pts):
        return []
    tree = cKDTree(pts)
    out = []
    for t, poly in enumerate(view.polys):
        cl = clusters.of[t]
        k = len(poly)
        for e in range(k):
            ca, cb = cl[e], cl[(e + 1) % k]
            a, b = pts[ca], pts[cb]
            d = b - a
            length = float(np.hypot(*d))
            if length <= tol:
                continue
            for c in tree.query_ball_point(0.5 * (a + b), 0.5 * length + tol):
                if c in (ca, cb):
                    continue
                w = pts[c] - a
                s = float(np.dot(w, d)) / length
                off = abs(float(d[0] * w[1] - d[1] * w[0])) / length
                if off <= tol and tol < s < length - tol:
                    out.append((view.ids[t], e, (float(pts[c][0]), float(pts[c][1]))))
    out.sort()
    return out


def check_edge_to_edge(doc, tol=DEFAULT_TOL):
    """(ok, violations): a violation is a tile vertex lying inside another
    tile's edge, listed as (tile id, edge index, point)."""
    view = _view(doc)
    v = _edge_violations(view, _cluster(view.polys, tol), tol)
    return not v, v


# ---------------------------------------------------------------------------
# symmetry


def _centroids(view):
    return np.array([p.mean(axis=0) for p in view.polys]) if view.polys else np.zeros((0, 2))


def _maps_onto(view, cents, tree, matrix, center, tol):
    """True when x -> matrix (x - center) + center maps every tile onto a
    distinct tile of the same prototype."""
    used = set()
    for t, poly in enumerate(view.polys):
        img = (poly - center) @ matrix.T + center
        d, j = tree.query(img.mean(axis=0))
        if d > tol or j in used or view.kinds[j] != view.kinds[t]:
            return False
        other = view.polys[j]
        if len(other) != len(img):
            return False
        # geometric match: vertex order and labels may change under the motion
        dd, _ = cKDTree(other).query(img)
        if np.max(dd) > tol:
            return False
        used.add(j)
    return True


def _candidate_centers(view, clusters):
    cents = _centroids(view)
    out = []
    if view.hole is not None:
        out.append(view.hole.mean(axis=0))
    if len(cents):
        mid = cents.mean(axis=0)
        out.append(mid)
        if len(clusters.points):
            k = min(4, len(clusters.points))
            _, idx = cKDTree(clusters.points).query(mid, k=k)
            out += [clusters.points[i] for i in np.atleast_1d(idx)]
    return out


def _rotation(view, clusters, tol, max_order=MAX_ORDER):
    cents = _centroids(view)
    if not len(cents):
        return 1, None
    tree = cKDTree(cents)
    best = (1, _candidate_centers(view, clusters)[0])
    for c in _candidate_centers(view, clusters):
        for order in range(max_order, best[0], -1):
            if _maps_onto(view, cents, tree, rot(360.0 / order), c, tol):
                best = (order, c)
                break
    return best[0], (float(best[1][0]), float(best[1][1]))


def rotational_symmetry(doc, tol=DEFAULT_TOL, max_order=MAX_ORDER):
    """(order, centre): the largest order <= max_order mapping the tiles onto
    themselves about one of the candidate centres; (1, centroid) if none."""
    view = _view(doc)
    return _rotation(view, _cluster(view.polys, tol), tol, max_order)


def _axis_candidates(points, center, shells=32):
    if not len(points):
        return []
    rel = points - center
    dist = np.hypot(rel[:, 0], rel[:, 1])
    order = np.argsort(dist)
    angles = []
    for i in order[: shells + 1]:
        if dist[i] > 1e-9:
            angles.append(math.degrees(math.atan2(rel[i, 1], rel[i, 0])) % 180.0)
    angles = sorted(set(round(a, 9) for a in angles))
    extra = [0.5 * (a + b) for a, b in zip(angles, angles[1:] + [angles[0] + 180.0])] if angles else []
    return sorted(set(round(a % 180.0, 9) for a in angles + extra))


def _reflections(view, clusters, center, tol):
    if center is None or not view.polys:
        return []
    cents = _centroids(view)
    tree = cKDTree(cents)
    c = np.asarray(center, float)
    axes = []
    for phi in _axis_candidates(clusters.points, c):
        if any(abs(phi - a) < 1e-6 for a in axes):
            continue
        if _maps_onto(view, cents, tree, reflect_matrix(phi), c, tol):
            axes.append(phi)
    return axes


def reflection_symmetry(doc, tol=DEFAULT_TOL, center=None):
    """Mirror axes (degrees in [0, 180)) through the rotation centre."""
    view = _view(doc)
    clusters = _cluster(view.polys, tol)
    if center is None:
        _, center = _rotation(view, clusters, tol)
    return _reflections(view, clusters, center, tol)


# ---------------------------------------------------------------------------
# holes


@dataclass
class HoleReport:
    polygon: np.ndarray
    edge_count: int
    edge_spread: float
    equilateral: bool
    alternating: bool
    rotation_order: int
    dihedral_order: int

    def to_dict(self):
        return {
            "polygon": self.polygon.tolist(),
            "edge_count": self.edge_count,
            "edge_spread": self.edge_spread,
            "equilateral": self.equilateral,
            "alternating": self.alternating,
            "rotation_order": self.rotation_order,
            "dihedral_order": self.dihedral_order,
        }


def _strip_straight(ring, tol=1e-6):
    while len(ring) > 3:
        ang = interior_angles(ring)
        straight = np.flatnonzero(np.abs(ang - 180.0) <= tol)
        if not straight.size:
            break
        ring = np.delete(ring, straight[0], axis=0)
    return ring


def _same_set(a, b, tol):
    d, _ = cKDTree(b).query(a)
    return bool(np.max(d) <= tol)


def polygon_symmetry(ring, tol=DEFAULT_TOL):
    """(rotation order, number of mirror axes) of a polygon about its vertex mean."""
    c = ring.mean(axis=0)
    k = len(ring)
    rot_order = 1
    for d in range(k, 1, -1):
        if k % d == 0 and _same_set((ring - c) @ rot(360.0 / d).T + c, ring, tol):
            rot_order = d
            break
    mids = 0.5 * (ring + np.roll(ring, -1, axis=0))
    axes = []
    for phi in _axis_candidates(np.vstack([ring, mids]), c, shells=2 * k):
        if any(abs(phi - a) < 1e-6 for a in axes):
            continue
        if _same_set((ring - c) @ reflect_matrix(phi).T + c, ring, tol):
            axes.append(phi)
    return rot_order, len(axes)


def _hole_ring(view, clusters, union, tol):
    rings = []
    for part in _parts(union):
        if part.geom_type != "Polygon":
            continue
        for r in part.interiors:
            poly = shapely.Polygon(r)
            if poly.area > tol:
                rings.append(poly)
    if not rings:
        raise NoHoleError("no uncovered region enclosed by the tiles")
    ref = view.hole.mean(axis=0) if view.hole is not None else _centroids(view).mean(axis=0)
    p = shapely.Point(ref)
    inside = [r for r in rings if r.contains(p)]
    pick = inside[0] if inside else max(rings, key=lambda r: r.area)
    ring = np.asarray(pick.exterior.coords)[:-1]
    if signed_area(ring) < 0:
        ring = ring[::-1]
    return _strip_straight(ring)


def _alternating(convex):
    """Every other corner flips between convex and reflex along the ring."""
    k = len(convex)
    if k % 4:
        return False
    return any(bool(np.all(convex[o::2] != np.roll(convex[o::2], -1))) for o in (0, 1))


def hole_boundary(doc, tol=DEFAULT_TOL) -> HoleReport:
    view = _view(doc)
    clusters = _cluster(view.polys, tol)
    ring = _hole_ring(view, clusters, _union(view, clusters), tol)
    # snap traced corners back onto tile vertices
    d, idx = cKDTree(clusters.points).query(ring)
    ring = np.where((d <= 10 * tol)[:, None], clusters.points[idx], ring)
    keep = np.linalg.norm(ring - np.roll(ring, 1, axis=0), axis=1) > tol
    ring = _strip_straight(ring[keep])
    lengths = np.linalg.norm(np.roll(ring, -1, axis=0) - ring, axis=1)
    spread = float(np.ptp(lengths))
    convex = interior_angles(ring) < 180.0
    alternating = _alternating(convex)
    r_order, n_axes = polygon_symmetry(ring, tol)
    return HoleReport(ring, len(ring), spread, spread <= tol, alternating, r_order, n_axes)


# ---------------------------------------------------------------------------
# full report


@dataclass
class ValidationReport:
    tile_count: int
    overlap_pairs: list
    uncovered_area: float
    probe_center: tuple
    probe_radius: float
    probe_area: float
    fans: list
    edge_to_edge: bool
    violations: list
    rotation_order: int
    center: Optional[tuple]
    reflection_axes: list
    hole: Optional[HoleReport] = None
    tolerance: float = DEFAULT_TOL
    overlap_tol: float = OVERLAP_TOL
    notes: list = field(default_factory=list)

    @property
    def interior_fans(self):
        return [f for f in self.fans if f.interior]

    @property
    def max_fan_error(self) -> float:
        return max((abs(f.sum - 360.0) for f in self.interior_fans), default=0.0)

    @property
    def coverage_ok(self) -> bool:
        return self.uncovered_area < self.tolerance * max(self.probe_area, 1e-300)

    @property
    def ok(self) -> bool:
        return not self.overlap_pairs and self.coverage_ok and self.max_fan_error <= self.tolerance

    def signatures(self, interior=True):
        return sorted({"".join(f.signature) for f in self.fans if f.interior or not interior})

    def to_dict(self):
        return {
            "ok": self.ok,
            "tile_count": self.tile_count,
            "overlap_pairs": [[a, b, area] for a, b, area in self.overlap_pairs],
            "uncovered_area": self.uncovered_area,
            "probe": {"center": list(self.probe_center), "radius": self.probe_radius, "area": self.probe_area},
            "max_fan_error": self.max_fan_error,
            "interior_signatures": self.signatures(),
            "edge_to_edge": self.edge_to_edge,
            "violations": [[t, e, list(p)] for t, e, p in self.violations],
            "rotation_order": self.rotation_order,
            "center": None if self.center is None else list(self.center),
            "reflection_axes": self.reflection_axes,
            "hole": None if self.hole is None else self.hole.to_dict(),
            "tolerance": self.tolerance,
            "overlap_tol": self.overlap_tol,
            "fans": [f.to_dict() for f in self.fans],
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"tiles: {self.tile_count}",
            f"overlaps: {len(self.overlap_pairs)}" + ("" if not self.overlap_pairs else f" (first {self.overlap_pairs[0]})"),
            f"uncovered: {self.uncovered_area:.3g} of probe area {self.probe_area:.6g} "
            f"(centre {self.probe_center[0]:.6g}, {self.probe_center[1]:.6g}; radius {self.probe_radius:.6g})",
            f"interior fans: {len(self.interior_fans)}, max |sum - 360| = {self.max_fan_error:.3g}",
            f"interior signatures: {' '.join(self.signatures()) or '-'}",
            f"edge-to-edge: {'yes' if self.edge_to_edge else 'no'} ({len(self.violations)} violations)",
            f"rotation order: {self.rotation_order}",
            f"reflection axes: {', '.join(f'{a:.6g}' for a in self.reflection_axes) or 'none'}",
        ]
        if self.hole is not None:
            h = self.hole
            lines.append(
                f"hole: {h.edge_count} edges, spread {h.edge_spread:.3g}, alternating {h.alternating}, "
                f"D{h.dihedral_order}, C{h.rotation_order}"
            )
        lines += [f"note: {n}" for n in self.notes]
        lines.append("verdict: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def inner_radius(union, center) -> float:
    """Distance from ``center`` to the outer boundary of the tiled region."""
    parts = [p for p in _parts(union) if p.geom_type == "Polygon"]
    if not parts:
        return 0.0
    pt = shapely.Point(*center)
    outer = [p for p in parts if shapely.Polygon(p.exterior).contains(pt)]
    if not outer:
        return 0.0
    return float(shapely.LineString(outer[0].exterior.coords).distance(pt))


def validate(doc, tol=DEFAULT_TOL, overlap_tol=OVERLAP_TOL, probe_center=None, probe_radius=None, grid=GRID):
    """Run every check.  Without an explicit probe the disk is centred at the
    rotation centre and reaches 99% of the way to the outer boundary."""
    view = _view(doc)
    clusters = _cluster(view.polys, tol)
    union = _union(view, clusters, grid)
    overlaps = check_overlaps(view, overlap_tol)
    order, center = _rotation(view, clusters, tol)
    axes = _reflections(view, clusters, center, tol)
    fans = _fans(view, clusters, union, tol)
    violations = _edge_violations(view, clusters, tol)

    notes = []
    if probe_center is None:
        probe_center = center if center is not None else (0.0, 0.0)
    if probe_radius is None:
        probe_radius = 0.99 * inner_radius(union, probe_center)
        notes.append("probe radius chosen automatically")
    if probe_radius > 0:
        disk = probe_disk(probe_center, probe_radius)
        covered = union
        if view.hole is not None:
            covered = shapely.union(covered, shapely.Polygon(view.hole), grid_size=grid)
        uncovered = max(0.0, float(shapely.difference(disk, covered, grid_size=grid).area))
        probe_area = float(disk.area)
    else:
        uncovered, probe_area = 0.0, 0.0

    hole = None
    try:
        hole = hole_boundary(doc, tol) if view.polys else None
    except NoHoleError:
        pass
    return ValidationReport(
        tile_count=len(view.polys),
        overlap_pairs=overlaps,
        uncovered_area=uncovered,
        probe_center=(float(probe_center[0]), float(probe_center[1])),
        probe_radius=float(probe_radius),
        probe_area=probe_area,
        fans=fans,
        edge_to_edge=not violations,
        violations=violations,
        rotation_order=order,
        center=center,
        reflection_axes=axes,
        hole=hole,
        tolerance=tol,
        overlap_tol=overlap_tol,
        notes=notes,
    )
