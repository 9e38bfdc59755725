"""Angles, edge lengths, shape classes and planar coordinates of the
four-equal-edge pentagon family with B + D + E = 360.

The pentagon ABCDE has unit edges AB, BC, CD, EA and one odd edge DE of
length ``e``.  It splits into the isosceles triangle ABE (base angle alpha),
the isosceles triangle BCD and the triangle BDE with angle theta at B and
angle delta at D.  With ``n`` given, alpha = 90 - 180/n so that A = 360/n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, GeometricNonexistenceError, InternalConsistencyError
from .planar import interior_angles, is_simple, signed_area, unit

ANGLE_TOL = 1e-9


class ShapeClass(enum.Enum):
    Convex = "convex"
    ConcaveAtE = "concave-at-E"
    ConcaveAtB = "concave-at-B"
    # only reachable for n = 3, the mirror twin of ConcaveAtE at n = 6
    ConcaveAtD = "concave-at-D"
    Trapezoid = "trapezoid"
    Parallelogram = "parallelogram"


@dataclass(frozen=True)
class PentagonParams:
    alpha: float
    theta: float
    n: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.alpha < 90.0:
            raise DomainError(f"alpha must lie in (0, 90), got {self.alpha}")
        if not 0.0 < self.theta < 180.0:
            raise DomainError(f"theta must lie in (0, 180), got {self.theta}")
        if self.n is not None:
            if int(self.n) != self.n or self.n < 3:
                raise DomainError(f"n must be an integer >= 3, got {self.n}")
            if abs(self.alpha - alpha_for_n(self.n)) > ANGLE_TOL:
                raise DomainError(f"alpha {self.alpha} does not match n={self.n}")

    @classmethod
    def from_n(cls, n: int, theta: float) -> "PentagonParams":
        if int(n) != n or n < 3:
            raise DomainError(f"n must be an integer >= 3, got {n}")
        return cls(alpha_for_n(n), theta, int(n))

    @property
    def B(self) -> float:
        return 90.0 + self.theta


def alpha_for_n(n: int) -> float:
    return 90.0 - 180.0 / n


@dataclass(frozen=True)
class AngleSet:
    A: float
    B: float
    C: float
    D: float
    E: float
    delta: float

    def as_tuple(self):
        return (self.A, self.B, self.C, self.D, self.E)


def _check_domain(alpha, theta):
    if not 0.0 < alpha < 90.0:
        raise DomainError(f"alpha must lie in (0, 90), got {alpha}")
    if not 0.0 < theta < 180.0:
        raise DomainError(f"theta must lie in (0, 180), got {theta}")


def delta_angle(alpha: float, theta: float) -> float:
    """Angle BDE in degrees, always in (0, 180).

    Uses atan2 so a non-positive denominator ``tan(alpha) - cos(theta)``
    lands in the second quadrant instead of wrapping to a negative angle.
    """
    _check_domain(alpha, theta)
    a, t = math.radians(alpha), math.radians(theta)
    return math.degrees(math.atan2(math.sin(t), math.tan(a) - math.cos(t)))


def angles_from_params(params: PentagonParams) -> AngleSet:
    alpha, theta = params.alpha, params.theta
    delta = delta_angle(alpha, theta)
    if params.n is not None:
        n = params.n
        A = 360.0 / n
        C = 180.0 - 360.0 / n
        D = delta + 180.0 / n
        E = 270.0 - theta - delta - 180.0 / n
    else:
        A = 180.0 - 2.0 * alpha
        C = 2.0 * alpha
        D = 90.0 - alpha + delta
        E = 180.0 + alpha - theta - delta
    B = 90.0 + theta
    out = AngleSet(A, B, C, D, E, delta)
    if min(out.as_tuple()) <= 0.0:
        raise GeometricNonexistenceError(f"non-positive interior angle in {out}")
    return out


def edge_e(alpha: float, theta: float) -> float:
    """Length of the odd edge DE when the other four edges are 1."""
    _check_domain(alpha, theta)
    a, t = math.radians(alpha), math.radians(theta)
    return 2.0 * math.sqrt(1.0 - math.sin(2 * a) * math.cos(t))


def classify(n: int, theta: float) -> ShapeClass:
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    if not 0.0 < theta < 180.0:
        raise DomainError(f"theta must lie in (0, 180), got {theta}")
    if abs(theta - 90.0) <= ANGLE_TOL:
        return ShapeClass.Parallelogram
    if theta > 90.0:
        return ShapeClass.ConcaveAtB
    if n >= 5:
        flat = 90.0 - 360.0 / n
        if abs(theta - flat) <= ANGLE_TOL:
            return ShapeClass.Trapezoid
        if theta < flat:
            return ShapeClass.ConcaveAtE
    elif n == 3:
        # the n=3 pentagon is the n=6 one mirrored with D and E swapped, so
        # its straight/reflex corner appears at D below theta = 30
        if abs(theta - 30.0) <= ANGLE_TOL:
            return ShapeClass.Trapezoid
        if theta < 30.0:
            return ShapeClass.ConcaveAtD
    return ShapeClass.Convex


def equilateral_theta(n: int) -> Optional[float]:
    """Theta making the odd edge unit length too, or None if impossible."""
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")
    c = 0.75 / math.sin(math.radians(2 * alpha_for_n(n)))
    if c > 1.0:
        return None
    # rounding lets closed-form cases such as n = 6 come out exact
    theta = round(math.degrees(math.acos(c)), 12)
    return theta if 0.0 < theta < 180.0 else None


@dataclass(frozen=True, eq=False)
class PentagonShape:
    """Canonical realization: E at the origin, A at (1, 0), counterclockwise."""

    vertices: np.ndarray
    edge_e: float
    shape_class: ShapeClass
    equilateral: bool
    params: PentagonParams
    angles: AngleSet

    @property
    def A(self):
        return self.vertices[0]

    @property
    def B(self):
        return self.vertices[1]

    @property
    def C(self):
        return self.vertices[2]

    @property
    def D(self):
        return self.vertices[3]

    @property
    def E(self):
        return self.vertices[4]


LABELS = "ABCDE"


def _class_from_angles(angles: AngleSet, tol=ANGLE_TOL) -> ShapeClass:
    if abs(angles.B - 180.0) <= tol:
        return ShapeClass.Parallelogram
    if abs(angles.E - 180.0) <= tol or abs(angles.D - 180.0) <= tol:
        return ShapeClass.Trapezoid
    if angles.B > 180.0:
        return ShapeClass.ConcaveAtB
    if angles.E > 180.0:
        return ShapeClass.ConcaveAtE
    if angles.D > 180.0:
        return ShapeClass.ConcaveAtD
    return ShapeClass.Convex


def realize(params: PentagonParams) -> PentagonShape:
    """Place the pentagon by walking the four unit edges from E.

    The walked D is cross-checked against D placed directly from E with the
    interior angle E and the closed-form edge length.
    """
    ang = angles_from_params(params)
    e_len = edge_e(params.alpha, params.theta)

    E = np.zeros(2)
    A = np.array([1.0, 0.0])
    heading = 180.0 - ang.A
    B = A + unit(heading)
    heading += 180.0 - ang.B
    C = B + unit(heading)
    heading += 180.0 - ang.C
    D = C + unit(heading)

    direct_D = e_len * unit(ang.E)
    gap = float(np.linalg.norm(D - direct_D))
    if gap > 1e-6 or abs(np.linalg.norm(D - E) - e_len) > 1e-6:
        raise InternalConsistencyError(f"pentagon does not close (gap {gap:.3g})")

    verts = np.array([A, B, C, D, E])
    if not is_simple(verts):
        raise GeometricNonexistenceError(f"self-intersecting boundary for {params}")
    if signed_area(verts) <= 0:
        raise GeometricNonexistenceError(f"boundary is not counterclockwise for {params}")

    if params.n is not None:
        shape_class = classify(params.n, params.theta)
    else:
        shape_class = _class_from_angles(ang)
    return PentagonShape(
        vertices=verts,
        edge_e=e_len,
        shape_class=shape_class,
        equilateral=abs(e_len - 1.0) <= 1e-9,
        params=params,
        angles=ang,
    )


def pentagon_area(shape) -> float:
    verts = shape.vertices if hasattr(shape, "vertices") else np.asarray(shape)
    return abs(signed_area(verts))


def measured_angles(shape: PentagonShape) -> np.ndarray:
    """Interior angles recomputed from coordinates, in A..E order."""
    return interior_angles(shape.vertices)
