"""Overlap areas of simple polygons by ear-clipping triangulation and convex
clipping.

Floating-point polygon overlays can misjudge tiles that share an edge up to
rounding; clipping triangles against triangles has no topology to get wrong,
so its error stays at the level of the coordinates themselves.
"""

import numpy as np

from .planar import signed_area


def _ccw(pts):
    pts = np.asarray(pts, dtype=float)
    return pts if signed_area(pts) >= 0 else pts[::-1]


def _inside_tri(p, a, b, c, eps):
    d1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    d2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
    d3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
    return d1 >= -eps and d2 >= -eps and d3 >= -eps


def triangulate(pts, eps=1e-12):
    """Ear clipping; returns a list of counterclockwise triangles (3x2 arrays).

    Straight corners are dropped first, so a trapezoid given as a pentagon
    triangulates like the quadrilateral it is.
    """
    poly = [p for p in _ccw(pts)]
    i = 0
    while len(poly) > 3 and i < len(poly):
        a, b, c = poly[i - 1], poly[i], poly[(i + 1) % len(poly)]
        if abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) <= eps:
            del poly[i]
        else:
            i += 1
    tris = []
    guard = 0
    while len(poly) > 3 and guard < 10 * len(pts) ** 2:
        guard += 1
        k = len(poly)
        for i in range(k):
            a, b, c = poly[i - 1], poly[i], poly[(i + 1) % k]
            turn = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if abs(turn) <= eps:
                del poly[i]
                break
            if turn < 0:
                continue
            if any(_inside_tri(poly[j], a, b, c, -eps) for j in range(k) if j not in (i - 1 if i else k - 1, i, (i + 1) % k)):
                continue
            tris.append(np.array([a, b, c]))
            del poly[i]
            break
        else:
            break
    if len(poly) == 3:
        tri = np.array(poly)
        if abs(signed_area(tri)) > eps:
            tris.append(tri)
    return tris


def _area(poly):
    total = 0.0
    k = len(poly)
    for i in range(k):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % k]
        total += x1 * y2 - x2 * y1
    return 0.5 * total


def _clip(subject, a, b):
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    out = []
    k = len(subject)
    for i in range(k):
        p, q = subject[i], subject[(i + 1) % k]
        sp = dx * (p[1] - ay) - dy * (p[0] - ax)
        sq = dx * (q[1] - ay) - dy * (q[0] - ax)
        if sp >= 0:
            out.append(p)
        if (sp >= 0) != (sq >= 0):
            t = sp / (sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _tuples(poly):
    return [(float(x), float(y)) for x, y in poly]


def convex_overlap(p, q):
    """Intersection area of two counterclockwise convex polygons."""
    poly = _tuples(p)
    q = _tuples(q)
    k = len(q)
    for i in range(k):
        poly = _clip(poly, q[i], q[(i + 1) % k])
        if len(poly) < 3:
            return 0.0
    return max(0.0, _area(poly))


def prepare(poly):
    """Triangles of ``poly`` with bounding boxes, ready for
    :func:`prepared_overlap`."""
    out = []
    tris = triangulate(poly)
    for t in tris:
        pts = _tuples(t)
        xs, ys = [x for x, _ in pts], [y for _, y in pts]
        out.append((pts, min(xs), min(ys), max(xs), max(ys)))
    return out


def overlap_area(p, q):
    """Intersection area of two simple polygons."""
    return prepared_overlap(prepare(p), prepare(q))


def prepared_overlap(tris_p, tris_q):
    total = 0.0
    for s, sx0, sy0, sx1, sy1 in tris_p:
        for t, tx0, ty0, tx1, ty1 in tris_q:
            if tx1 < sx0 or tx0 > sx1 or ty1 < sy0 or ty0 > sy1:
                continue
            total += convex_overlap(s, t)
    return total
