"""Small planar helpers: point-in-polygon tests and segment distances.

Polygons are given as complex vertex arrays (closed implicitly).  Membership
uses the even-odd crossing rule; points within ``boundary_tol`` of the
boundary are counted as inside, which is the conservative choice for the
callers that discard interior poles.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

__all__ = ["point_segment_distance", "polygon_distance", "polygon_contains", "polygon_membership"]


def point_segment_distance(p: complex, a: complex, b: complex) -> float:
    """Euclidean distance from p to the segment [a, b]."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / denom
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def polygon_distance(points, vertices) -> np.ndarray:
    """Distance from each point to the closed polygonal line through vertices."""
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    v = np.asarray(vertices, dtype=complex)
    if len(v) < 3:
        raise InputError("a polygon needs at least three vertices")
    out = np.empty(len(pts))
    for i, p in enumerate(pts):
        out[i] = min(
            point_segment_distance(p, v[k], v[(k + 1) % len(v)]) for k in range(len(v))
        )
    return out


def polygon_contains(points, vertices, boundary_tol: float = 1e-12) -> np.ndarray:
    """Even-odd membership of each point in the polygon through vertices."""
    pts = np.atleast_1d(np.asarray(points, dtype=complex))
    v = np.asarray(vertices, dtype=complex)
    if len(v) < 3:
        raise InputError("a polygon needs at least three vertices")
    x, y = pts.real, pts.imag
    x1, y1 = v.real, v.imag
    x2, y2 = np.roll(v.real, -1), np.roll(v.imag, -1)
    inside = np.zeros(len(pts), dtype=bool)
    for k in range(len(v)):
        crosses = (y1[k] > y) != (y2[k] > y)
        if not np.any(crosses):
            continue
        xint = x1[k] + (y[crosses] - y1[k]) * (x2[k] - x1[k]) / (y2[k] - y1[k])
        flip = np.zeros(len(pts), dtype=bool)
        flip[crosses] = x[crosses] < xint
        inside ^= flip
    if boundary_tol > 0:
        near = polygon_distance(pts, v) <= boundary_tol
        inside |= near
    return inside


def polygon_membership(vertices, boundary_tol: float = 1e-12):
    """Callable inside-predicate bound to one polygon."""
    v = np.asarray(vertices, dtype=complex)

    def inside(points):
        return polygon_contains(points, v, boundary_tol)

    return inside
