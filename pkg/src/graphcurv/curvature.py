"""
Closed-form curvature of PL spatial graphs
==========================================

Total curvature is assembled from three local pieces: the exterior
area of every vertex fan, the turning of every edge, and the Euler
characteristic. Crookedness (the mean number of local minima of a
height function) and Taniyama's curvature come from the same pieces.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import pi

import numpy as np

from . import geometry, spherical
from .graph import (GraphError, JointRef, VertexRef, euler_characteristic, first_betti,
                    require_valid, tangent_fan)

TOL_TIGHT = 1e-6


@dataclass(frozen=True)
class CurvatureReport:
    per_edge: dict
    per_vertex: dict
    chi: int
    b1: int
    K_total: float
    crookedness_mu: float
    taniyama_T1_over_pi: float
    tight: bool
    tol_tight: float = TOL_TIGHT

    @property
    def gap(self):
        """Excess of ``K_total`` over the lower bound ``1 + b1``."""
        return self.K_total - (1 + self.b1)

    def to_json(self):
        d = asdict(self)
        d["per_edge"] = {str(k): v for k, v in self.per_edge.items()}
        d["per_vertex"] = {str(k): v for k, v in self.per_vertex.items()}
        return d


def edge_total_curvature(edge):
    """Total turning of an edge polyline divided by pi."""
    poly = edge.polyline if hasattr(edge, "polyline") else np.asarray(edge, dtype=float)
    return float(np.sum(geometry.turning_angles(poly)) / pi)


def vertex_exterior_area(g, v):
    """Area of the positive region of the tangent fan at vertex ``v``."""
    return spherical.area(spherical.positive_region(tangent_fan(g, VertexRef(v))))


def joint_area_as_vertex(g, ref):
    """Exterior area the joint would carry if it were promoted to a vertex.

    In the edge bookkeeping a joint has no area of its own (its turning
    is already in the edge curvature); this is the other bookkeeping.
    """
    return spherical.area(spherical.positive_region(tangent_fan(g, ref)))


def taniyama_vertex_term(directions):
    """Sum over unordered pairs of fan directions of ``(pi - angle) / pi``."""
    d = np.asarray(directions, dtype=float)
    total = 0.0
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            total += pi - float(geometry.angle_between(d[i], d[j]))
    return total / pi


def total_curvature(g, tol_tight=TOL_TIGHT):
    """Every closed-form curvature quantity of a valid connected graph."""
    require_valid(g)
    chi = euler_characteristic(g)
    b1 = first_betti(g)
    per_edge = {e.id: edge_total_curvature(e) for e in g.edges}
    per_vertex = {}
    theta = 0.0
    for v in g.vertex_ids:
        fan = tangent_fan(g, VertexRef(v))
        per_vertex[v] = spherical.area(spherical.positive_region(fan))
        theta += taniyama_vertex_term(fan.directions)
    _check_joint_bookkeeping(g)
    sum_sigma = sum(per_vertex.values())
    sum_k = sum(per_edge.values())
    K = sum_sigma / (2 * pi) + sum_k - chi
    mu = (K + chi) / 2
    return CurvatureReport(
        per_edge=per_edge,
        per_vertex=per_vertex,
        chi=chi,
        b1=b1,
        K_total=K,
        crookedness_mu=mu,
        taniyama_T1_over_pi=sum_k + theta,
        tight=abs(K - (1 + b1)) <= tol_tight,
        tol_tight=tol_tight,
    )


def _check_joint_bookkeeping(g, tol=1e-9):
    # a joint turning by a contributes a/pi to K(e); promoted, its fan is a
    # lune of area 2a, i.e. 2a / (2 pi) in the vertex sum
    for e in g.edges:
        turns = geometry.turning_angles(e.polyline)
        for k, a in enumerate(turns, start=1):
            lune = joint_area_as_vertex(g, JointRef(e.id, k))
            if abs(lune / (2 * pi) - a / pi) > tol:
                raise AssertionError(f"joint {e.id}:{k} bookkeeping mismatch")


def curvature_from_all_points(g):
    """Total curvature with every joint counted as a degree-2 vertex.

    Independent of how edges are split into polylines; used to check
    that the vertex set does not matter.
    """
    require_valid(g)
    sigma = sum(vertex_exterior_area(g, v) for v in g.vertex_ids)
    sigma += sum(joint_area_as_vertex(g, r) for r in g.joint_refs())
    n_joints = len(g.joint_refs())
    chi = (len(g.vertices) + n_joints) - (len(g.edges) + n_joints)
    return sigma / (2 * pi) - chi


# ----------------------------------------------------------------------
# convex arcs and the meridian graph


def _plane_coords(points):
    centroid, normal, basis = geometry.best_fit_plane(points)
    return (points - centroid) @ basis.T, normal


def convex_arc_curvature_check(arc, closing=None):
    """Compare an arc's turning with the angles it makes with its chord.

    Returns ``(lhs, rhs)`` where ``lhs`` is the total turning of ``arc``
    (radians) and ``rhs = theta0 + theta1``, the angles at the two ends
    between the arc and the chord joining them. For a planar convex arc
    the two agree.
    """
    arc = np.asarray(arc.polyline if hasattr(arc, "polyline") else arc, dtype=float)
    p0, p1 = arc[0], arc[-1]
    if closing is not None:
        closing = np.asarray(closing, dtype=float)
        if not (np.allclose(closing[0], p1) and np.allclose(closing[-1], p0)
                or np.allclose(closing[0], p0) and np.allclose(closing[-1], p1)):
            raise ValueError("closing segment must join the arc endpoints")
    chord = p1 - p0
    scale = np.linalg.norm(chord)
    if scale == 0:
        raise ValueError("arc endpoints must be distinct")
    if len(arc) == 2:
        return 0.0, 0.0
    pts = np.vstack([arc, p0])
    _, normal, _ = geometry.best_fit_plane(pts)
    centroid = pts.mean(axis=0)
    diam = np.ptp(pts, axis=0).max()
    if np.max(np.abs((pts - centroid) @ normal)) > 1e-9 * diam:
        raise ValueError("arc is not planar")
    xy, _ = _plane_coords(pts)
    d = np.diff(np.vstack([xy, xy[1]]), axis=0)
    cross = d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0]
    big = np.abs(cross) > 1e-12 * diam * diam
    if big.any() and not (np.all(cross[big] > 0) or np.all(cross[big] < 0)):
        raise ValueError("arc is not convex")
    lhs = float(np.sum(geometry.turning_angles(arc)))
    theta0 = float(geometry.angle_between(arc[1] - arc[0], chord))
    theta1 = float(geometry.angle_between(arc[-2] - arc[-1], -chord))
    return lhs, theta0 + theta1


def meridian_graph_formulas(n, m=None):
    """Closed forms for the graph of ``n`` meridians joining two poles.

    Returns ``(K, T_over_pi)``. With ``m=None`` each meridian carries its
    smooth value 1; otherwise the meridians are built with ``m`` corners
    and measured.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError("meridian formulas need an odd n >= 3")
    if m is None:
        sum_k = float(n)
    else:
        from .generators import make_meridian_graph

        g = make_meridian_graph(n, m)
        sum_k = sum(edge_total_curvature(e) for e in g.edges)
    return sum_k + n - 2, 1 + sum_k


__all__ = [
    "CurvatureReport", "GraphError", "TOL_TIGHT", "convex_arc_curvature_check",
    "curvature_from_all_points", "edge_total_curvature", "meridian_graph_formulas",
    "total_curvature", "vertex_exterior_area",
]
