"""The A-C rhombus of a pentagon pair, its two decorations, and chirality
propagation over rhombic patches.

Two pentagons glued along their odd edge DE (D of one on E of the other)
fill a rhombus whose corners are the pair's A and C vertices.  Every rhombus
edge carries one isosceles triangle with unit legs: its apex is either a B
vertex or the joint D/E vertex.  The triangle pokes out of the rhombus
(bump) or into it (dent).  Neighbouring rhombi fit when a bump meets a dent.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .clip import overlap_area
from .errors import DomainError, GeometricNonexistenceError, PreconditionError
from .geometry import PentagonParams, PentagonShape, angles_from_params, realize
from .planar import cross, reflect_matrix, rot, signed_area


class Chirality(enum.Enum):
    Anterior = "anterior"
    Posterior = "posterior"

    def flipped(self) -> "Chirality":
        return Chirality.Posterior if self is Chirality.Anterior else Chirality.Anterior


@dataclass(frozen=True)
class RhombusProto:
    angle_at_A: float
    angle_at_C: float
    side: float

    def corners(self) -> np.ndarray:
        """Counterclockwise corners A1, C1, A2, C2 with A1 at the origin."""
        a = math.radians(self.angle_at_A)
        s = self.side
        u = np.array([s, 0.0])
        v = s * np.array([math.cos(a), math.sin(a)])
        return np.array([[0.0, 0.0], u, u + v, v])

    @property
    def area(self) -> float:
        return self.side**2 * math.sin(math.radians(self.angle_at_A))


def rhombus_proto(params: PentagonParams) -> RhombusProto:
    ang = angles_from_params(params)
    if not 0.0 < ang.B < 360.0:
        raise DomainError(f"degenerate B angle {ang.B}")
    side = 2.0 * math.sin(math.radians(ang.B / 2.0))
    return RhombusProto(ang.A, ang.C, side)


@dataclass(frozen=True)
class Placement:
    """Rigid motion (possibly with reflection) taking canonical pentagon
    coordinates to some frame: x -> matrix @ x + offset."""

    matrix: np.ndarray
    offset: np.ndarray

    def apply(self, pts):
        return np.asarray(pts) @ self.matrix.T + self.offset

    def then(self, other: "Placement") -> "Placement":
        """self followed by other."""
        return Placement(other.matrix @ self.matrix, other.matrix @ self.offset + other.offset)

    @property
    def reflected(self) -> bool:
        return float(np.linalg.det(self.matrix)) < 0


@dataclass(frozen=True, eq=False)
class PentagonPair:
    shape: PentagonShape
    proto: RhombusProto
    chirality: Chirality
    placements: tuple  # two Placement objects, canonical pentagon -> rhombus frame

    @property
    def pentagons(self):
        return tuple(p.apply(self.shape.vertices) for p in self.placements)

    @property
    def rhombus(self) -> np.ndarray:
        return self.proto.corners()


@dataclass(frozen=True)
class EdgeDecoration:
    start: np.ndarray
    end: np.ndarray
    apex: np.ndarray
    side_sign: int
    kind: str = ""  # "B" or "joint" when known


def canonical_pair(params: PentagonParams, chirality: Chirality = Chirality.Anterior) -> PentagonPair:
    shape = realize(params)
    proto = rhombus_proto(params)
    A, C = shape.A, shape.C
    d = C - A
    r = rot(-math.degrees(math.atan2(d[1], d[0])))
    first = Placement(r, -r @ A)
    p1 = first.apply(shape.vertices)
    mid = 0.5 * (p1[3] + p1[4])
    half_turn = Placement(-np.eye(2), 2.0 * mid)
    second = first.then(half_turn)
    placements = (first, second)
    if chirality is Chirality.Posterior:
        # mirror across the diagonal through both A corners
        mirror = Placement(reflect_matrix(proto.angle_at_A / 2.0), np.zeros(2))
        placements = (first.then(mirror), second.then(mirror))
    pair = PentagonPair(shape, proto, chirality, placements)

    q1, q2 = pair.pentagons
    overlap = overlap_area(q1, q2)
    if overlap > 1e-9:
        raise GeometricNonexistenceError(f"pair pentagons overlap by {overlap:.3g} for {params}")
    return pair


def _sign(start, end, apex, tol=1e-9):
    c = float(cross(end - start, apex - start)) / float(np.linalg.norm(end - start))
    if abs(c) <= tol:
        return 0
    # rhombus is counterclockwise: interior on the left
    return -1 if c > 0 else 1


def edge_decorations(pair: PentagonPair):
    """Four decorations in rhombus edge order A1C1, C1A2, A2C2, C2A1."""
    corners = pair.rhombus
    q1, q2 = pair.pentagons
    # D1 == E2 and E1 == D2 are the joints
    if pair.chirality is Chirality.Anterior:
        apexes = [(q1[1], "B"), (q1[3], "joint"), (q2[1], "B"), (q1[4], "joint")]
    else:
        apexes = [(q1[4], "joint"), (q2[1], "B"), (q1[3], "joint"), (q1[1], "B")]
    out = []
    for i, (apex, kind) in enumerate(apexes):
        s, e = corners[i], corners[(i + 1) % 4]
        out.append(EdgeDecoration(s, e, apex, _sign(s, e, apex), kind))
    return out


def compatible(edge1: EdgeDecoration, edge2: EdgeDecoration, tol: float = 1e-6) -> bool:
    same = np.allclose(edge1.start, edge2.start, atol=tol) and np.allclose(edge1.end, edge2.end, atol=tol)
    rev = np.allclose(edge1.start, edge2.end, atol=tol) and np.allclose(edge1.end, edge2.start, atol=tol)
    if not (same or rev):
        raise PreconditionError("decorations do not sit on a common rhombus edge")
    return bool(np.linalg.norm(edge1.apex - edge2.apex) <= tol)


def edge_pattern(index: int, chirality: Chirality) -> int:
    """Bump (+1) or dent (-1) of rhombus edge ``index`` when B < 180.

    Edges leaving an A corner counterclockwise carry the B apex in the
    anterior pair; the posterior pair swaps the roles.
    """
    s = 1 if index % 2 == 0 else -1
    return s if chirality is Chirality.Anterior else -s


def abstract_decorations(corners, chirality: Chirality, height: float):
    """Decorations of a placed rhombus with apexes at a nominal height.

    ``corners`` are counterclockwise starting at an A corner.  Only the
    sign pattern matters for fitting, since all apex triangles of one
    patch are congruent.
    """
    out = []
    for i in range(4):
        s, e = corners[i], corners[(i + 1) % 4]
        d = e - s
        outward = np.array([d[1], -d[0]]) / np.linalg.norm(d)
        sign = edge_pattern(i, chirality) if height > 0 else 0
        apex = 0.5 * (s + e) + sign * height * outward
        out.append(EdgeDecoration(s, e, apex, sign))
    return out


@dataclass
class Conflict:
    """Edge constraints that cannot all hold; ``cycle`` lists rhombus ids
    around the offending loop, starting and ending at the same id."""

    cycle: list
    edge: tuple
    partial: dict = field(default_factory=dict)

    def __bool__(self):
        return False


def _tree_path(parent, node):
    path = [node]
    while parent[node] is not None:
        node = parent[node]
        path.append(node)
    return path


def _cycle(parent, u, v):
    pu, pv = _tree_path(parent, u), _tree_path(parent, v)
    on_v = set(pv)
    meet = next(x for x in pu if x in on_v)
    left = pu[: pu.index(meet) + 1]
    right = pv[: pv.index(meet)]
    return left[::-1] + right + [meet] if right else left[::-1] + [meet]


def assign_chirality(patch, seed_tile, seed_chirality=Chirality.Anterior, *, flat=False, tol=1e-6):
    """Breadth-first chirality propagation across shared rhombus edges.

    Returns a dict id -> Chirality, or a falsy :class:`Conflict`.  With
    ``flat`` (B = 180) every choice fits and all free rhombi get Anterior.
    """
    by_id = {r.id: r for r in patch.rhombi}
    if seed_tile not in by_id:
        raise PreconditionError(f"unknown seed rhombus {seed_tile}")
    height = 0.0 if flat else 0.25 * min(r.proto.side for r in patch.rhombi)
    neigh = {rid: [] for rid in by_id}
    for a, b, (ia, ib) in patch.adjacency:
        neigh[a].append((b, ia, ib))
        neigh[b].append((a, ib, ia))
    for rid in neigh:
        neigh[rid].sort(key=lambda t: (t[0], t[1], t[2]))
    corners = {rid: r.corners() for rid, r in by_id.items()}
    decos = {}

    def deco(rid, c):
        key = (rid, c)
        if key not in decos:
            decos[key] = abstract_decorations(corners[rid], c, height)
        return decos[key]

    assign = {}
    parent = {}
    order = [seed_tile] + sorted(rid for rid in by_id if rid != seed_tile)
    for root in order:
        if root in assign:
            continue
        assign[root] = seed_chirality if root == seed_tile else Chirality.Anterior
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, iu, iv in neigh[u]:
                eu = deco(u, assign[u])[iu]
                allowed = [c for c in (Chirality.Anterior, Chirality.Posterior) if compatible(eu, deco(v, c)[iv], tol)]
                if v in assign:
                    if assign[v] not in allowed:
                        return Conflict(_cycle(parent, u, v), (u, v), dict(assign))
                    continue
                if not allowed:
                    return Conflict([u, v, u], (u, v), dict(assign))
                assign[v] = allowed[0]
                parent[v] = u
                queue.append(v)
    return assign


def pair_area_identity(params: PentagonParams) -> float:
    """area(P1) + area(P2) - side^2 sin(A); zero for every valid pair."""
    pair = canonical_pair(params)
    q1, q2 = pair.pentagons
    return abs(signed_area(q1)) + abs(signed_area(q2)) - pair.proto.area
