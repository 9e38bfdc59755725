"""Small planar helpers on numpy point arrays of shape (k, 2)."""

import math

import numpy as np


def rot(deg):
    c, s = math.cos(math.radians(deg)), math.sin(math.radians(deg))
    return np.array([[c, -s], [s, c]])


def unit(deg):
    return np.array([math.cos(math.radians(deg)), math.sin(math.radians(deg))])


def signed_area(pts):
    """Shoelace area; positive for counterclockwise boundaries."""
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def cross(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def interior_angles(pts):
    """Interior angle in degrees at each vertex, for either orientation.

    Reflex corners come out above 180; a straight corner is exactly 180 up to
    rounding.
    """
    pts = np.asarray(pts, dtype=float)
    orient = 1.0 if signed_area(pts) >= 0 else -1.0
    prev = np.roll(pts, 1, axis=0) - pts
    nxt = np.roll(pts, -1, axis=0) - pts
    # angle swept from the outgoing edge to the incoming edge, measured on the
    # interior side
    ang = np.degrees(np.arctan2(cross(nxt, prev), np.einsum("ij,ij->i", nxt, prev)))
    ang = ang * orient
    return np.where(ang < 0, ang + 360.0, ang)


def _segments_cross(p1, p2, q1, q2, eps):
    d1 = cross(p2 - p1, q1 - p1)
    d2 = cross(p2 - p1, q2 - p1)
    d3 = cross(q2 - q1, p1 - q1)
    d4 = cross(q2 - q1, p2 - q1)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True
    return False


def is_simple(pts, eps=1e-12):
    """True when no two non-adjacent edges intersect and no vertex touches a
    non-incident edge."""
    pts = np.asarray(pts, dtype=float)
    k = len(pts)
    for i in range(k):
        a, b = pts[i], pts[(i + 1) % k]
        for j in range(i + 1, k):
            if j == i or (j + 1) % k == i or (i + 1) % k == j:
                continue
            c, d = pts[j], pts[(j + 1) % k]
            if _segments_cross(a, b, c, d, eps):
                return False
        # a vertex lying on a non-incident edge also breaks simplicity
        for j in range(k):
            if j == i or j == (i + 1) % k:
                continue
            p = pts[j]
            ab = b - a
            t = float(np.dot(p - a, ab) / np.dot(ab, ab))
            if 0.0 < t < 1.0 and abs(cross(ab, p - a)) / np.linalg.norm(ab) < 1e-9:
                return False
    return True


def reflect_matrix(axis_deg):
    """Reflection across the line through the origin at the given angle."""
    c, s = math.cos(math.radians(2 * axis_deg)), math.sin(math.radians(2 * axis_deg))
    return np.array([[c, s], [s, -c]])


def decompose(m):
    """Split an orthogonal 2x2 matrix into (rotation degrees, reflected).

    A reflected matrix is read as rot(phi) @ diag(1, -1).
    """
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    phi = math.degrees(math.atan2(m[1, 0], m[0, 0]))
    return phi, det < 0


def compose(rotation, reflected):
    m = rot(rotation)
    if reflected:
        m = m @ np.diag([1.0, -1.0])
    return m
