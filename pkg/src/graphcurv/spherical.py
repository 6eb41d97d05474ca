"""
Spherical geometry kernel
=========================

Positive regions of tangent fans (the directions for which a point is a
local minimum), their areas, uniform direction sampling and the PL
degeneracy predicate for height functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from . import geometry
from .graph import EPS_FAN_ANGLE, TangentFan

#: absolute band on |(u, s)| treated as degenerate
EPS_DEG = 1e-9
_RANK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SphericalPolygon:
    """Closure of a positive region.

    ``kind`` is one of ``"polygon"`` (``vertices`` counterclockwise seen
    from outside), ``"hemisphere"`` (``normals[0]`` is the pole),
    ``"lune"`` (intersection of the two half-spaces ``normals``),
    ``"empty"`` (zero area; this also covers closures that collapse to an
    arc or a point) and ``"full"``.
    """

    kind: str
    vertices: np.ndarray = None
    normals: tuple = ()

    def contains(self, u, tol=0.0):
        u = np.asarray(u, dtype=float)
        if self.kind == "full":
            return True
        if self.kind == "empty":
            return False
        if self.kind in ("hemisphere", "lune"):
            return all(float(np.dot(u, n)) >= -tol for n in self.normals)
        v = self.vertices
        edge_normals = np.cross(v, np.roll(v, -1, axis=0))
        return bool(np.all(edge_normals @ u >= -tol))


def _interior_angles(verts):
    n = len(verts)
    out = np.empty(n)
    for i in range(n):
        v = verts[i]
        a = verts[i - 1]
        b = verts[(i + 1) % n]
        ta = a - np.dot(a, v) * v
        tb = b - np.dot(b, v) * v
        out[i] = geometry.angle_between(ta, tb)
    return out


def area(poly):
    """Area in steradians."""
    if poly.kind == "empty":
        return 0.0
    if poly.kind == "full":
        return 4 * pi
    if poly.kind == "hemisphere":
        return 2 * pi
    if poly.kind == "lune":
        n0, n1 = poly.normals
        return 2.0 * (pi - float(geometry.angle_between(n0, n1)))
    verts = poly.vertices
    return float(np.sum(_interior_angles(verts)) - (len(verts) - 2) * pi)


def _fan_directions(fan):
    if isinstance(fan, TangentFan):
        return np.asarray(fan.directions, dtype=float)
    dirs = geometry.unit(np.asarray(fan, dtype=float).reshape(-1, 3))
    return TangentFan.from_branches(np.zeros(3), dirs).directions


def positive_region(fan):
    """Closure of ``{u : (u, t) > 0 for every t in the fan}``.

    ``fan`` may be a :class:`TangentFan` or an array of directions.
    """
    dirs = _fan_directions(fan)
    k = len(dirs)
    if k == 0:
        return SphericalPolygon("full")
    if k == 1:
        return SphericalPolygon("hemisphere", normals=(dirs[0],))
    sv = np.linalg.svd(dirs, compute_uv=False)
    rank = int(np.sum(sv > _RANK_TOL * sv[0]))
    if rank == 1:
        # two antipodal directions: the closure is a great circle
        return SphericalPolygon("empty")
    if rank == 2:
        return _planar_region(dirs)
    return _cone_region(dirs)


def _planar_region(dirs):
    _, _, vt = np.linalg.svd(dirs)
    e1, e2 = vt[0], vt[1]
    ang = np.sort(np.arctan2(dirs @ e2, dirs @ e1))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * pi]]))
    i = int(np.argmax(gaps))
    span = 2 * pi - gaps[i]
    if span >= pi - EPS_FAN_ANGLE:
        return SphericalPolygon("empty")
    # the span runs counterclockwise from the direction after the widest gap
    lo = ang[(i + 1) % len(ang)]
    hi = ang[i]
    n_lo = np.cos(lo) * e1 + np.sin(lo) * e2
    n_hi = np.cos(hi) * e1 + np.sin(hi) * e2
    return SphericalPolygon("lune", normals=(n_lo, n_hi))


def _cone_region(dirs):
    tol = 1e-12
    cands = []
    k = len(dirs)
    for i in range(k):
        for j in range(i + 1, k):
            c = np.cross(dirs[i], dirs[j])
            nrm = np.linalg.norm(c)
            if nrm < 1e-14:
                continue
            c = c / nrm
            # i and j lie on the plane by construction; dots with them are pure rounding
            others = np.delete(dirs, [i, j], axis=0)
            for r in (c, -c):
                if np.all(others @ r >= -tol):
                    cands.append(r)
    rays = []
    for r in cands:
        if all(geometry.angle_between(r, q) >= EPS_FAN_ANGLE for q in rays):
            rays.append(r)
    if len(rays) < 3:
        return SphericalPolygon("empty")
    rays = np.array(rays)
    sv = np.linalg.svd(rays, compute_uv=False)
    if sv[-1] <= _RANK_TOL * sv[0]:
        return SphericalPolygon("empty")
    # every dual ray has positive inner product with the fan's mean direction,
    # so central projection onto the plane orthogonal to it is faithful
    w = geometry.unit(dirs.sum(axis=0))
    flat = rays / (rays @ w)[:, None]
    centre = flat.mean(axis=0)
    a = geometry.unit(np.cross(w, rays[0]))
    b = np.cross(w, a)
    order = np.argsort(np.arctan2((flat - centre) @ b, (flat - centre) @ a))
    return SphericalPolygon("polygon", vertices=rays[order])


def solid_angle_area(poly):
    """Area of a ``"polygon"`` by fanning triangles from its centroid.

    Each triangle uses the Van Oosterom-Strackee solid angle formula; this
    is an independent check on :func:`area`'s angle-excess route.
    """
    v = poly.vertices
    c = geometry.unit(v.sum(axis=0))
    total = 0.0
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)]
        num = np.dot(c, np.cross(a, b))
        den = 1 + np.dot(c, a) + np.dot(a, b) + np.dot(b, c)
        total += 2 * np.arctan2(num, den)
    return float(abs(total))


# ----------------------------------------------------------------------
# sampling and degeneracy


def sample_directions(rng, n):
    """``n`` uniform unit vectors from a numpy ``Generator``."""
    while True:
        x = rng.standard_normal((n, 3))
        norms = np.linalg.norm(x, axis=1)
        if np.all(norms > 1e-150):
            return x / norms[:, None]


def sample_direction(rng):
    return sample_directions(rng, 1)[0]


def is_degenerate(g, u, eps=EPS_DEG):
    """True when some segment of ``g`` is (numerically) perpendicular to ``u``.

    Every fan direction at a vertex or joint is the direction of some
    segment, so the segment test covers the vertex condition as well.
    """
    return bool(degenerate_mask(g, np.asarray(u, dtype=float)[None, :], eps)[0])


def degenerate_mask(g, U, eps=EPS_DEG):
    dots = np.abs(U @ g.skeleton.directions.T)
    return np.min(dots, axis=1) < eps
