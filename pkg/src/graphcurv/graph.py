"""
Embedded spatial graphs
=======================

Data model for piecewise-linear graphs in R^3: vertices are points,
edges are polylines whose first and last points sit on their end
vertices. Interior polyline points are called *joints*. A point of
the graph that matters to the rest of the package (a vertex or a
joint) is addressed by a :class:`VertexRef` or a :class:`JointRef`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence, Union

import numpy as np

from . import geometry

#: relative geometric tolerance (scaled by the graph diameter)
EPS_GEO = 1e-9
#: tangent directions closer than this angle are the same fan direction
EPS_FAN_ANGLE = 1e-8


class GraphError(ValueError):
    """Raised when an operation needs a well-formed graph and did not get one."""


class VertexRef(NamedTuple):
    vertex: int


class JointRef(NamedTuple):
    edge: int
    index: int  # position inside the edge polyline, 1 .. len-2


SiteRef = Union[VertexRef, JointRef]


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Edge:
    id: int
    ends: tuple
    polyline: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "ends", (int(self.ends[0]), int(self.ends[1])))
        object.__setattr__(self, "polyline", _frozen(self.polyline))

    @property
    def joints(self):
        return self.polyline[1:-1]

    @property
    def n_segments(self):
        return len(self.polyline) - 1

    def reversed(self):
        return Edge(self.id, (self.ends[1], self.ends[0]), self.polyline[::-1])


@dataclass(frozen=True, eq=False)
class SpatialGraph:
    """An immutable embedded graph.

    ``vertices`` maps vertex ids to positions; ``edges`` is a tuple of
    :class:`Edge`. Construction does not validate; call :func:`validate`.
    """

    vertices: Mapping[int, np.ndarray]
    edges: tuple = field(default_factory=tuple)

    def __post_init__(self):
        verts = {int(k): _frozen(v) for k, v in dict(self.vertices).items()}
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def from_polylines(cls, vertices, edges):
        """Build from ``{id: pos}`` and ``[(v0, v1, polyline-or-None), ...]``.

        Edge ids are assigned in order. A ``None`` polyline means the
        straight segment between the two end vertices.
        """
        verts = {int(k): np.asarray(v, dtype=float) for k, v in dict(vertices).items()}
        out = []
        for i, (a, b, poly) in enumerate(edges):
            if poly is None:
                poly = [verts[a], verts[b]]
            out.append(Edge(i, (a, b), poly))
        return cls(verts, tuple(out))

    # -- lookups -------------------------------------------------------

    @cached_property
    def edge_by_id(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def vertex_ids(self):
        return sorted(self.vertices)

    def degree(self, v):
        return sum((e.ends[0] == v) + (e.ends[1] == v) for e in self.edges)

    @cached_property
    def degrees(self):
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            for end in e.ends:
                if end in deg:
                    deg[end] += 1
        return deg

    def joint_refs(self):
        return [JointRef(e.id, k) for e in self.edges for k in range(1, len(e.polyline) - 1)]

    def position(self, ref):
        if isinstance(ref, VertexRef):
            return self.vertices[ref.vertex]
        return self.edge_by_id[ref.edge].polyline[ref.index]

    @cached_property
    def diameter(self):
        chunks = [np.array(list(self.vertices.values())).reshape(-1, 3)]
        chunks += [e.polyline for e in self.edges if e.polyline.ndim == 2 and e.polyline.shape[1] == 3]
        pts = np.vstack(chunks)
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        if len(pts) < 2:
            return 1.0
        span = np.ptp(pts, axis=0)
        return float(max(np.linalg.norm(span), 1e-300))

    @property
    def eps(self):
        return EPS_GEO * self.diameter

    @cached_property
    def skeleton(self):
        return Skeleton.build(self)

    def transformed(self, rotation, translation=(0.0, 0.0, 0.0)):
        """Apply ``x -> R x + t`` to every point."""
        R = np.asarray(rotation, dtype=float)
        t = np.asarray(translation, dtype=float)
        verts = {k: R @ v + t for k, v in self.vertices.items()}
        edges = [Edge(e.id, e.ends, e.polyline @ R.T + t) for e in self.edges]
        return SpatialGraph(verts, tuple(edges))


@dataclass(frozen=True, eq=False)
class Skeleton:
    """Flattened PL view of a graph used by the numerical kernels.

    Nodes are the graph vertices (sorted by id) followed by every joint.
    Each segment is a pair of node indices. Every segment contributes one
    *branch* to each of its end nodes, pointing away from that node, so
    the number of branches at a node is its degree.
    """

    points: np.ndarray
    refs: tuple
    n_vertices: int
    segments: np.ndarray
    segment_edge: np.ndarray
    directions: np.ndarray
    branch_node: np.ndarray
    branch_dir: np.ndarray
    branch_starts: np.ndarray
    degree: np.ndarray

    @classmethod
    def build(cls, g):
        index = {v: i for i, v in enumerate(g.vertex_ids)}
        points = [g.vertices[v] for v in g.vertex_ids]
        refs = [VertexRef(v) for v in g.vertex_ids]
        segs, seg_edge = [], []
        for e in g.edges:
            chain = [index[e.ends[0]]]
            for k in range(1, len(e.polyline) - 1):
                chain.append(len(points))
                points.append(e.polyline[k])
                refs.append(JointRef(e.id, k))
            chain.append(index[e.ends[1]])
            for a, b in zip(chain[:-1], chain[1:]):
                segs.append((a, b))
                seg_edge.append(e.id)
        points = np.array(points, dtype=float).reshape(-1, 3)
        segs = np.array(segs, dtype=int).reshape(-1, 2)
        # directions from the polylines, not from node positions: the two
        # coincide for valid graphs, and this keeps joints exact
        dirs = []
        for e in g.edges:
            dirs.extend(np.diff(e.polyline, axis=0))
        dirs = np.array(dirs, dtype=float).reshape(-1, 3)
        norms = np.linalg.norm(dirs, axis=1, keepdims=True)
        dirs = dirs / np.where(norms > 0, norms, 1.0)
        node = np.concatenate([segs[:, 0], segs[:, 1]])
        bdir = np.concatenate([dirs, -dirs])
        order = np.argsort(node, kind="stable")
        node, bdir = node[order], bdir[order]
        degree = np.bincount(node, minlength=len(points))
        starts = np.concatenate([[0], np.cumsum(degree)[:-1]])
        return cls(points, tuple(refs), len(g.vertex_ids), segs,
                   np.array(seg_edge, dtype=int), dirs, node, bdir, starts, degree)

    def node_of(self, ref):
        return self.refs.index(ref)


# ----------------------------------------------------------------------
# tangent fans


@dataclass(frozen=True, eq=False)
class TangentFan:
    """Unit directions in which the graph leaves ``base``.

    ``directions`` has set semantics (merged within ``EPS_FAN_ANGLE``);
    ``multiplicities`` records how many branches each direction carries,
    so ``multiplicities.sum()`` is the degree of the point.
    """

    base: np.ndarray
    directions: np.ndarray
    multiplicities: np.ndarray

    @property
    def branches(self):
        return np.repeat(self.directions, self.multiplicities, axis=0)

    @property
    def degree(self):
        return int(self.multiplicities.sum())

    def __len__(self):
        return len(self.directions)

    @classmethod
    def from_branches(cls, base, branches):
        branches = geometry.unit(np.asarray(branches, dtype=float).reshape(-1, 3))
        dirs, mult = [], []
        for b in branches:
            for i, d in enumerate(dirs):
                if geometry.angle_between(d, b) < EPS_FAN_ANGLE:
                    mult[i] += 1
                    break
            else:
                dirs.append(b)
                mult.append(1)
        return cls(_frozen(base), _frozen(np.array(dirs).reshape(-1, 3)),
                   np.array(mult, dtype=int))


def tangent_fan(g, ref):
    """Tangent fan at a vertex or a polyline joint of ``g``."""
    if isinstance(ref, VertexRef):
        v = ref.vertex
        if v not in g.vertices:
            raise KeyError(f"unknown vertex {v}")
        branches = []
        for e in g.edges:
            if e.ends[0] == v:
                branches.append(e.polyline[1] - e.polyline[0])
            if e.ends[1] == v:
                branches.append(e.polyline[-2] - e.polyline[-1])
        return TangentFan.from_branches(g.vertices[v], branches)
    if isinstance(ref, JointRef):
        e = g.edge_by_id.get(ref.edge)
        if e is None or not 1 <= ref.index <= len(e.polyline) - 2:
            raise KeyError(f"unknown joint {ref}")
        p = e.polyline
        k = ref.index
        return TangentFan.from_branches(p[k], [p[k - 1] - p[k], p[k + 1] - p[k]])
    raise TypeError(f"not a point reference: {ref!r}")


# ----------------------------------------------------------------------
# combinatorics


def euler_characteristic(g):
    chi = len(g.vertices) - len(g.edges)
    half_sum = sum(2 - d for d in g.degrees.values())
    assert 2 * chi == half_sum, "handshake identity failed"
    return chi


def connected_components(g):
    """Vertex-id components of the abstract graph."""
    adj = {v: [] for v in g.vertices}
    for e in g.edges:
        a, b = e.ends
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    seen, comps = set(), []
    for v in g.vertex_ids:
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def first_betti(g):
    if len(connected_components(g)) != 1:
        raise GraphError("first Betti number formula needs a connected graph")
    return 1 - euler_characteristic(g)


def refine_vertex_set(g, ref):
    """Promote a joint to a degree-2 vertex, splitting its edge in two."""
    if not isinstance(ref, JointRef):
        raise TypeError("only joints can be promoted")
    e = g.edge_by_id[ref.edge]
    k = ref.index
    if not 1 <= k <= len(e.polyline) - 2:
        raise KeyError(f"unknown joint {ref}")
    new_v = max(g.vertices) + 1
    new_e = max(g.edge_by_id) + 1
    verts = dict(g.vertices)
    verts[new_v] = e.polyline[k]
    edges = []
    for f in g.edges:
        if f.id == e.id:
            edges.append(Edge(e.id, (e.ends[0], new_v), e.polyline[: k + 1]))
        else:
            edges.append(f)
    edges.append(Edge(new_e, (new_v, e.ends[1]), e.polyline[k:]))
    return SpatialGraph(verts, tuple(edges))


def subdivide_segment(g, edge_id, segment=0, t=0.5):
    """Insert a collinear joint into one segment of an edge (same point set)."""
    e = g.edge_by_id[edge_id]
    p = e.polyline
    x = p[segment] + t * (p[segment + 1] - p[segment])
    poly = np.vstack([p[: segment + 1], x, p[segment + 1:]])
    edges = [Edge(f.id, f.ends, poly) if f.id == edge_id else f for f in g.edges]
    return SpatialGraph(g.vertices, tuple(edges))


# ----------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    rule: str
    element: str
    detail: str = ""

    def __str__(self):
        return f"{self.rule}: {self.element}" + (f" ({self.detail})" if self.detail else "")


def validate(g):
    """Return every structural problem found in ``g`` (empty when valid)."""
    out = []
    for v, p in g.vertices.items():
        if p.shape != (3,) or not np.all(np.isfinite(p)):
            out.append(Violation("finite-coordinates", f"vertex {v}"))
    ids = [e.id for e in g.edges]
    if len(set(ids)) != len(ids):
        out.append(Violation("unique-edge-ids", "edges"))
    for e in g.edges:
        name = f"edge {e.id}"
        a, b = e.ends
        if a == b:
            out.append(Violation("loop-edge", name, f"both ends at vertex {a}"))
        if a not in g.vertices or b not in g.vertices:
            out.append(Violation("unknown-endpoint", name))
            continue
        p = e.polyline
        if p.ndim != 2 or p.shape[1] != 3 or len(p) < 2:
            out.append(Violation("polyline-shape", name, "needs >= 2 points in R^3"))
            continue
        if not np.all(np.isfinite(p)):
            out.append(Violation("finite-coordinates", name))
            continue
        if np.linalg.norm(p[0] - g.vertices[a]) > g.eps:
            out.append(Violation("polyline-endpoint", name, "first point is not at its start vertex"))
        if np.linalg.norm(p[-1] - g.vertices[b]) > g.eps:
            out.append(Violation("polyline-endpoint", name, "last point is not at its end vertex"))
        lengths = np.linalg.norm(np.diff(p, axis=0), axis=1)
        if np.any(lengths <= g.eps):
            out.append(Violation("zero-length-segment", name))
    if out:
        return out
    vids = g.vertex_ids
    pos = np.array([g.vertices[v] for v in vids]).reshape(-1, 3)
    for i in range(len(vids)):
        d = np.linalg.norm(pos[i + 1:] - pos[i], axis=1)
        for j in np.nonzero(d <= g.eps)[0]:
            out.append(Violation("distinct-vertices", f"vertices {vids[i]} and {vids[i + 1 + j]}"))
    comps = connected_components(g)
    if len(comps) > 1:
        out.append(Violation("connected", "graph", f"{len(comps)} components"))
    out.extend(_embedding_violations(g))
    return out


def _embedding_violations(g):
    sk = g.skeleton
    segs = sk.segments
    n = len(segs)
    out = []
    if n == 0:
        return out
    P = sk.points[segs[:, 0]]
    Q = sk.points[segs[:, 1]]
    eps = g.eps
    i, j = np.triu_indices(n, k=1)
    # bounding-box prefilter
    lo = np.minimum(P, Q) - eps
    hi = np.maximum(P, Q) + eps
    overlap = np.all((lo[i] <= hi[j]) & (lo[j] <= hi[i]), axis=1)
    i, j = i[overlap], j[overlap]
    sa, sb = segs[i], segs[j]
    shared = ((sa[:, 0] == sb[:, 0]) | (sa[:, 0] == sb[:, 1])
              | (sa[:, 1] == sb[:, 0]) | (sa[:, 1] == sb[:, 1]))
    # pairs meeting at a common node may only touch there: reject overlap
    for a, b in zip(i[shared], j[shared]):
        common = set(segs[a]) & set(segs[b])
        if len(common) == 2:
            out.append(_seg_violation(g, a, b, "segments coincide"))
            continue
        c = common.pop()
        da = sk.points[segs[a][segs[a] != c][0]] - sk.points[c]
        db = sk.points[segs[b][segs[b] != c][0]] - sk.points[c]
        if geometry.angle_between(da, db) < EPS_FAN_ANGLE:
            out.append(_seg_violation(g, a, b, "segments overlap"))
    free_i, free_j = i[~shared], j[~shared]
    if len(free_i):
        d = geometry.segment_distances(P[free_i], Q[free_i], P[free_j], Q[free_j])
        for a, b in zip(free_i[d <= eps], free_j[d <= eps]):
            out.append(_seg_violation(g, a, b, "segments intersect"))
    # isolated or far-away vertices lying on some edge interior
    nv = sk.n_vertices
    for v in range(nv):
        not_incident = (segs[:, 0] != v) & (segs[:, 1] != v)
        if not np.any(not_incident):
            continue
        x = np.repeat(sk.points[v][None, :], int(not_incident.sum()), axis=0)
        d = geometry.point_segment_distances(x, P[not_incident], Q[not_incident])
        if np.any(d <= eps) and sk.degree[v] == 0:
            out.append(Violation("embedding", f"vertex {sk.refs[v].vertex}", "lies on an edge"))
    return out


def _seg_violation(g, a, b, what):
    sk = g.skeleton
    ea, eb = sk.segment_edge[a], sk.segment_edge[b]
    return Violation("embedding", f"edges {ea} and {eb}", what)


def require_valid(g):
    problems = validate(g)
    if problems:
        raise GraphError("; ".join(str(p) for p in problems))
    return g
