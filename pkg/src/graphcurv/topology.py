"""
Cycles, linking numbers and the unknottedness certificate
=========================================================

Linking numbers are computed from a generic projection: each crossing
between the two curves contributes half its sign. A Gauss double sum
over segment pairs (exact solid angles) serves as an independent check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import pi

import numpy as np

from . import geometry
from .curvature import total_curvature
from .estimators import estimate
from .graph import GraphError, require_valid


class NotASuspension(GraphError):
    """The graph is not two poles joined by disjoint paths."""


class LinkingError(RuntimeError):
    """The curves meet or no generic projection was found."""


@dataclass(frozen=True)
class CycleRef:
    """Closed walk as ``(edge_id, orientation)`` pairs plus its polyline."""
    edges: tuple
    polyline: np.ndarray

    def __len__(self):
        return len(self.edges)


def _oriented(e, sign):
    return e.polyline if sign > 0 else e.polyline[::-1]


def _materialize(g, walk):
    parts = [_oriented(g.edge_by_id[eid], s) for eid, s in walk]
    pts = [parts[0]] + [p[1:] for p in parts[1:]]
    poly = np.vstack(pts)
    if not np.array_equal(poly[0], poly[-1]):
        raise GraphError("edge walk is not closed")
    return poly


def cycle_basis(g):
    """Fundamental cycles of a breadth-first spanning tree."""
    require_valid(g)
    vids = g.vertex_ids
    root = vids[0]
    adj = {v: [] for v in vids}
    for e in sorted(g.edges, key=lambda e: e.id):
        a, b = e.ends
        adj[a].append((e, b, +1))
        adj[b].append((e, a, -1))
    parent = {root: None}  # vertex -> (edge, sign from parent, parent vertex)
    depth = {root: 0}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e, w, s in adj[v]:
            if w not in parent:
                parent[w] = (e.id, s, v)
                depth[w] = depth[v] + 1
                tree.add(e.id)
                queue.append(w)
    cycles = []
    for e in sorted(g.edges, key=lambda e: e.id):
        if e.id in tree:
            continue
        a, b = e.ends
        up_b, up_a = [], []
        x, y = b, a
        while depth[x] > depth[y]:
            eid, s, p = parent[x]
            up_b.append((eid, -s))
            x = p
        while depth[y] > depth[x]:
            eid, s, p = parent[y]
            up_a.append((eid, s))
            y = p
        while x != y:
            eid, s, p = parent[x]
            up_b.append((eid, -s))
            x = p
            eid, s, p = parent[y]
            up_a.append((eid, s))
            y = p
        walk = [(e.id, +1)] + up_b + up_a[::-1]
        cycles.append(CycleRef(tuple(walk), _materialize(g, walk)))
    return cycles


def cycle_from_edges(g, edge_ids):
    """Arrange the given edges into a closed walk."""
    edges = [g.edge_by_id[i] for i in edge_ids]
    if not edges:
        raise GraphError("empty cycle")
    first = edges[0]
    walk = [(first.id, +1)]
    start, cur = first.ends
    rest = edges[1:]
    while rest:
        for k, e in enumerate(rest):
            if cur in e.ends:
                s = +1 if e.ends[0] == cur else -1
                walk.append((e.id, s))
                cur = e.ends[1] if s > 0 else e.ends[0]
                rest.pop(k)
                break
        else:
            raise GraphError(f"edges {list(edge_ids)} do not form a closed walk")
    if cur != start:
        raise GraphError(f"edges {list(edge_ids)} do not form a closed walk")
    return CycleRef(tuple(walk), _materialize(g, walk))


# ----------------------------------------------------------------------
# linking numbers


def _closed(curve):
    pts = np.asarray(curve.polyline if isinstance(curve, CycleRef) else curve, dtype=float)
    if not np.array_equal(pts[0], pts[-1]):
        pts = np.vstack([pts, pts[:1]])
    return pts


def _pairs(A, B):
    p1, q1 = A[:-1], A[1:]
    p2, q2 = B[:-1], B[1:]
    i, j = np.meshgrid(np.arange(len(p1)), np.arange(len(p2)), indexing="ij")
    i, j = i.ravel(), j.ravel()
    return p1[i], q1[i], p2[j], q2[j]


def min_distance(a, b):
    A, B = _closed(a), _closed(b)
    return float(geometry.segment_distances(*_pairs(A, B)).min())


def _projected_crossings(A, B, d, tol):
    """Sum of crossing signs, or ``None`` when the projection is not generic."""
    basis = np.linalg.svd(d[None, :])[2][1:]
    p1, q1, p2, q2 = _pairs(A, B)
    a0, a1 = p1 @ basis.T, q1 @ basis.T
    b0, b1 = p2 @ basis.T, q2 @ basis.T
    r, w = a1 - a0, b1 - b0
    denom = r[:, 0] * w[:, 1] - r[:, 1] * w[:, 0]
    diff = b0 - a0
    scale = np.linalg.norm(r, axis=1) * np.linalg.norm(w, axis=1)
    parallel = np.abs(denom) <= tol * scale
    safe = np.where(parallel, 1.0, denom)
    s = (diff[:, 0] * w[:, 1] - diff[:, 1] * w[:, 0]) / safe
    t = (diff[:, 0] * r[:, 1] - diff[:, 1] * r[:, 0]) / safe
    near = ~parallel & (s > -tol) & (s < 1 + tol) & (t > -tol) & (t < 1 + tol)
    if np.any(parallel & _collinear_overlap(a0, a1, b0, b1, tol)):
        return None
    inside = ~parallel & (s > tol) & (s < 1 - tol) & (t > tol) & (t < 1 - tol)
    if np.any(near & ~inside):
        return None
    k = np.flatnonzero(inside)
    pa = p1[k] + s[k, None] * (q1[k] - p1[k])
    pb = p2[k] + t[k, None] * (q2[k] - p2[k])
    det = np.einsum("ij,ij->i", np.cross(q1[k] - p1[k], q2[k] - p2[k]), pa - pb)
    if np.any(np.abs(det) <= tol * scale[k] * np.linalg.norm(pa - pb, axis=1)):
        return None
    return int(np.sum(np.sign(det)))


def _collinear_overlap(a0, a1, b0, b1, tol):
    # parallel projected segments only matter when they lie on one line and overlap
    r = a1 - a0
    L = np.maximum(np.linalg.norm(r, axis=1), 1e-300)
    off = np.abs(r[:, 0] * (b0 - a0)[:, 1] - r[:, 1] * (b0 - a0)[:, 0]) / L
    tb0 = np.einsum("ij,ij->i", b0 - a0, r) / L**2
    tb1 = np.einsum("ij,ij->i", b1 - a0, r) / L**2
    lo, hi = np.minimum(tb0, tb1), np.maximum(tb0, tb1)
    return (off <= tol * L) & (hi >= -tol) & (lo <= 1 + tol)


def linking_number(a, b, seed=0, max_tries=64, tol=1e-9):
    """Linking number of two disjoint closed polylines.

    ``a`` and ``b`` are :class:`CycleRef` objects or closed point arrays.
    """
    A, B = _closed(a), _closed(b)
    diam = max(np.ptp(np.vstack([A, B]), axis=0).max(), 1e-300)
    if min_distance(A, B) <= 1e-9 * diam:
        raise LinkingError("curves intersect")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        d = rng.standard_normal(3)
        d /= np.linalg.norm(d)
        total = _projected_crossings(A, B, d, tol)
        if total is None or total % 2:
            continue
        return total // 2
    raise LinkingError(f"no generic projection found in {max_tries} tries")


def gauss_linking_number(a, b):
    """Gauss double integral as a sum of exact segment-pair solid angles."""
    A, B = _closed(a), _closed(b)
    p1, p2, p3, p4 = _pairs(A, B)
    r13, r14, r23, r24 = p3 - p1, p4 - p1, p3 - p2, p4 - p2
    r12, r34 = p2 - p1, p4 - p3

    def nrm(x, y):
        c = np.cross(x, y)
        return c / np.linalg.norm(c, axis=1, keepdims=True)

    # coplanar segment pairs subtend no solid angle
    triple = np.einsum("ij,ij->i", np.cross(r34, r12), r13)
    scale = np.linalg.norm(r12, axis=1) * np.linalg.norm(r34, axis=1) * np.linalg.norm(r13, axis=1)
    keep = np.abs(triple) > 1e-14 * scale
    r13, r14, r23, r24 = r13[keep], r14[keep], r23[keep], r24[keep]
    n1, n2, n3, n4 = nrm(r13, r14), nrm(r14, r24), nrm(r24, r23), nrm(r23, r13)

    def asin(x, y):
        return np.arcsin(np.clip(np.einsum("ij,ij->i", x, y), -1.0, 1.0))

    omega = asin(n1, n2) + asin(n2, n3) + asin(n3, n4) + asin(n4, n1)
    return float(np.sum(omega * np.sign(triple[keep])) / (4 * pi))


# ----------------------------------------------------------------------
# unknottedness


@dataclass(frozen=True)
class UnknotReport:
    n: int
    poles: tuple
    mu: float
    mu_hat: float
    mu_se: float
    certificate: str | None
    status: str

    def to_json(self):
        return {"n": self.n, "poles": list(self.poles), "mu": self.mu, "mu_hat": self.mu_hat,
                "mu_se": self.mu_se, "certificate": self.certificate, "status": self.status}


def suspension_poles(g):
    """Return ``(n, (north, south))`` or raise :class:`NotASuspension`.

    Exactly two vertices must have degree ``n`` and every other vertex
    degree 2, with the poles joined by ``n`` internally disjoint paths.
    """
    require_valid(g)
    deg = g.degrees
    if len(deg) == 2 and all(d >= 2 for d in deg.values()) and len(set(deg.values())) == 1:
        poles = tuple(sorted(deg))
        return deg[poles[0]], poles
    high = sorted(v for v, d in deg.items() if d != 2)
    if len(high) != 2 or deg[high[0]] != deg[high[1]] or deg[high[0]] < 3:
        raise NotASuspension("need exactly two poles of equal degree, all other vertices degree 2")
    n = deg[high[0]]
    north, south = high
    incident = {v: [] for v in deg}
    for e in g.edges:
        incident[e.ends[0]].append(e)
        incident[e.ends[1]].append(e)
    for e in incident[north]:
        via = e
        cur = e.ends[1] if e.ends[0] == north else e.ends[0]
        while cur not in (north, south):
            via = next(f for f in incident[cur] if f is not via)
            cur = via.ends[1] if via.ends[0] == cur else via.ends[0]
        if cur != south:
            raise NotASuspension("a path returns to the pole it started from")
    return n, (north, south)


def unknot_certificate(g, n_samples=20_000, seed=0):
    """Crookedness below 2 certifies that a suspension is unknotted.

    The criterion is one-directional: ``mu >= 2`` is reported as
    inconclusive, never as knotted.
    """
    n, poles = suspension_poles(g)
    mu = total_curvature(g).crookedness_mu
    est = estimate(g, n_samples, seed)
    if mu < 2:
        cert, status = "planar-isotopic", "certified: crookedness below 2"
    else:
        cert, status = None, "inconclusive: crookedness at least 2"
    return UnknotReport(n, poles, mu, est.mu_hat, est.std_errors["mu_hat"], cert, status)


__all__ = ["CycleRef", "LinkingError", "NotASuspension", "UnknotReport", "cycle_basis",
           "cycle_from_edges", "gauss_linking_number", "linking_number", "min_distance",
           "suspension_poles", "unknot_certificate"]
