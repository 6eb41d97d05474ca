"""
Tightness verdicts
==================

A graph is tight when its total curvature equals ``1 + b1``. Tightness
is checked three ways: the closed-form equality, random probes of the
two-piece property (every closed half-space meets the graph in an empty
or connected set) and a structural classification into the two tight
classes:

* Type S: straight edges containing the skeleton of the convex hull,
  every other vertex in the convex hull of its neighbours.
* Type C: a planar convex curve ``B`` plus straight chords that cut the
  region bounded by ``B`` into convex faces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np
from scipy.optimize import nnls
from scipy.spatial import ConvexHull

from . import geometry
from .curvature import TOL_TIGHT, total_curvature
from .graph import VertexRef, require_valid
from .morse import sublevel_components
from .spherical import sample_directions

CURVED_TURN = 1e-7
HULL_TOL = 1e-9


@dataclass(frozen=True)
class Classification:
    kind: str
    accepted: bool
    reason: str = ""
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TPPResult:
    passed: int
    failed: int
    counterexamples: list

    @property
    def total(self):
        return self.passed + self.failed


@dataclass(frozen=True)
class TightnessVerdict:
    tight_by_formula: bool
    K_total: float
    b1: int
    tpp_probes_passed: int
    tpp_probes_total: int
    classification: str
    evidence: dict

    def to_json(self):
        return {
            "tight_by_formula": self.tight_by_formula,
            "K_total": self.K_total,
            "b1": self.b1,
            "tpp_probes_passed": self.tpp_probes_passed,
            "tpp_probes_total": self.tpp_probes_total,
            "classification": self.classification,
            "evidence": self.evidence,
        }


# ----------------------------------------------------------------------
# two-piece property


def tpp_probe(g, n_probes, seed):
    """Random half-space probes of the two-piece property.

    Each probe draws a uniform direction ``u`` and a level ``c`` uniform
    over the height range of the graph widened by 10% on both sides, and
    counts the components of ``{(u, x) <= c}``. Counterexamples are
    ``(u, c, components)`` triples.
    """
    require_valid(g)
    rng = np.random.default_rng(seed)
    pts = g.skeleton.points
    U = sample_directions(rng, n_probes)
    passed = failed = 0
    witnesses = []
    for u in U:
        h = pts @ u
        lo, hi = h.min(), h.max()
        pad = 0.1 * (hi - lo)
        c = rng.uniform(lo - pad, hi + pad)
        k = sublevel_components(g, u, c)
        if k <= 1:
            passed += 1
        else:
            failed += 1
            witnesses.append((tuple(float(x) for x in u), float(c), int(k)))
    return TPPResult(passed, failed, witnesses)


# ----------------------------------------------------------------------
# Type S


def _curved_edges(g):
    return [e.id for e in g.edges
            if len(e.polyline) > 2 and np.max(geometry.turning_angles(e.polyline)) > CURVED_TURN]


def _hull_structure(P):
    """Extreme point indices and hull edges (index pairs) of a point set."""
    scale = max(np.ptp(P, axis=0).max(), 1.0)
    rank = geometry.affine_rank(P, HULL_TOL * scale)
    if rank == 0:
        return [0], []
    if rank == 1:
        d = P[np.argmax(np.linalg.norm(P - P[0], axis=1))] - P[0]
        t = (P - P[0]) @ d
        i, j = int(np.argmin(t)), int(np.argmax(t))
        return [i, j], [(i, j)]
    if rank == 2:
        centroid, _, basis = geometry.best_fit_plane(P)
        hull = ConvexHull((P - centroid) @ basis[:2].T)
        cyc = [int(i) for i in hull.vertices]
        return cyc, [(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))]
    hull = ConvexHull(P)
    eq = hull.equations
    groups = []
    for f in range(len(eq)):
        for grp in groups:
            if np.allclose(eq[grp[0]], eq[f], atol=1e-9):
                grp.append(f)
                break
        else:
            groups.append([f])
    edges = set()
    for grp in groups:
        count = {}
        for f in grp:
            s = hull.simplices[f]
            for a, b in ((s[0], s[1]), (s[1], s[2]), (s[2], s[0])):
                key = (min(a, b), max(a, b))
                count[key] = count.get(key, 0) + 1
        edges.update(k for k, v in count.items() if v == 1)
    # drop points lying in the middle of a merged facet edge
    ext = _extreme_points(P, hull.vertices, scale)
    chains = _merge_collinear(sorted(edges), ext)
    return sorted(ext), chains


def _extreme_points(P, candidates, scale):
    ext = []
    for i in candidates:
        others = [j for j in candidates if j != i]
        A = np.vstack([P[others].T, np.ones(len(others))])
        _, res = nnls(A, np.append(P[i], 1.0))
        if res > HULL_TOL * scale:
            ext.append(int(i))
    return ext


def _merge_collinear(edges, ext):
    # facet-boundary edges through non-extreme points are pieces of one hull edge
    ext = set(ext)
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    out = set()
    for a in ext:
        for b in adj.get(a, []):
            prev, cur = a, b
            while cur not in ext:
                nxt = [x for x in adj[cur] if x != prev]
                prev, cur = cur, nxt[0]
            out.add((min(a, cur), max(a, cur)))
    return sorted(out)


def _segment_covered(g, p, q):
    """True if straight graph segments cover the segment ``pq``."""
    sk = g.skeleton
    d = q - p
    L2 = d @ d
    tol = g.eps
    A = sk.points[sk.segments[:, 0]]
    B = sk.points[sk.segments[:, 1]]
    off_a = np.linalg.norm(np.cross(A - p, d), axis=1) / np.sqrt(L2)
    off_b = np.linalg.norm(np.cross(B - p, d), axis=1) / np.sqrt(L2)
    on_line = (off_a <= tol) & (off_b <= tol)
    ta, tb = (A[on_line] - p) @ d / L2, (B[on_line] - p) @ d / L2
    intervals = [tuple(sorted(t)) for t in zip(ta, tb)]
    reach = 0.0
    rel = tol / np.sqrt(L2)
    for lo, hi in sorted(intervals):
        if lo > reach + rel:
            break
        reach = max(reach, hi)
    return reach >= 1 - rel


def _in_hull_of(point, nbrs, scale):
    A = np.vstack([np.asarray(nbrs).T, np.ones(len(nbrs))])
    _, res = nnls(A, np.append(point, 1.0))
    return res <= HULL_TOL * scale


def classify_type_s(g):
    """Accept ``g`` as Type S or explain why not."""
    require_valid(g)
    curved = _curved_edges(g)
    if curved:
        return Classification("TypeS", False, f"curved edges {curved}")
    vids = list(g.vertex_ids)
    P = np.array([g.vertices[v] for v in vids])
    scale = max(g.diameter, 1.0)
    hull_idx, hull_edges = _hull_structure(P)
    hull_ids = [vids[i] for i in hull_idx]
    for i, j in hull_edges:
        if not _segment_covered(g, P[i], P[j]):
            return Classification("TypeS", False,
                                  f"hull edge {vids[i]}-{vids[j]} not covered by graph edges")
    nbrs = {v: [] for v in vids}
    for e in g.edges:
        a, b = e.ends
        nbrs[a].append(g.vertices[b])
        nbrs[b].append(g.vertices[a])
    interior = [v for v in vids if v not in set(hull_ids)]
    for v in interior:
        if not nbrs[v] or not _in_hull_of(g.vertices[v], nbrs[v], scale):
            return Classification("TypeS", False,
                                  f"vertex {v} is not in the convex hull of its neighbours")
    return Classification("TypeS", True, evidence={
        "hull_vertices": hull_ids,
        "hull_edges": [[vids[i], vids[j]] for i, j in hull_edges],
        "interior_vertices": interior,
    })


# ----------------------------------------------------------------------
# Type C


def _signed_turn(d0, d1):
    return float(np.arctan2(d0[0] * d1[1] - d0[1] * d1[0], d0 @ d1))


def _planar_coords(g):
    pts = g.skeleton.points
    centroid, normal, basis = geometry.best_fit_plane(pts)
    off = np.abs((pts - centroid) @ normal)
    if off.max() > g.eps:
        return None
    return (pts - centroid) @ basis[:2].T


def _neighbours(sk):
    nb = [[] for _ in range(len(sk.points))]
    for s, (a, b) in enumerate(sk.segments):
        nb[a].append((b, s))
        nb[b].append((a, s))
    return nb


def _boundary_walk(xy, nb):
    """Outer boundary by always turning as far left as possible.

    Starts at the lexicographically smallest node as if arriving heading
    in the +y direction, so the exterior stays on the left. Returns the
    node cycle and the signed turns, or ``None`` if the walk fails.
    """
    start = min(range(len(xy)), key=lambda i: (xy[i][0], xy[i][1]))
    heading = np.array([0.0, 1.0])
    prev, cur = None, start
    cycle, turns = [start], []
    for _ in range(sum(len(x) for x in nb) // 2 + 1):
        best = None
        for nxt, _s in nb[cur]:
            if nxt == prev and len(nb[cur]) > 1:
                continue
            d = xy[nxt] - xy[cur]
            d = d / np.linalg.norm(d)
            t = _signed_turn(heading, d)
            if best is None or t > best[0]:
                best = (t, nxt, d)
        if best is None or best[1] == prev:
            return None
        t, nxt, d = best
        if prev is not None or cur != start:
            turns.append(t)
        prev, cur, heading = cur, nxt, d
        if cur == start:
            # closing turn at the start node
            first = xy[cycle[1]] - xy[start]
            turns.append(_signed_turn(heading, first / np.linalg.norm(first)))
            return cycle, turns
        if cur in cycle:
            return None
        cycle.append(cur)
    return None


def _faces(xy, nb):
    """Face cycles of a planar straight-line drawing (face on the left)."""
    order = {}
    for v, lst in enumerate(nb):
        ang = [np.arctan2(*(xy[w] - xy[v])[::-1]) for w, _ in lst]
        order[v] = [lst[k][0] for k in np.argsort(ang)]
    seen = set()
    faces = []
    for v in range(len(xy)):
        for w in order[v]:
            if (v, w) in seen:
                continue
            face = []
            a, b = v, w
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                ring = order[b]
                k = ring.index(a)
                a, b = b, ring[(k - 1) % len(ring)]
            faces.append(face)
    return faces


def _signed_area(poly):
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _convex_ccw(poly, tol=1e-12):
    n = len(poly)
    turns = []
    for i in range(n):
        d0 = poly[i] - poly[i - 1]
        d1 = poly[(i + 1) % n] - poly[i]
        turns.append(_signed_turn(d0, d1))
    turns = np.array(turns)
    return bool(np.all(turns >= -tol) and abs(turns.sum() - 2 * pi) < 1e-9)


def classify_type_c(g):
    """Accept ``g`` as Type C or explain why not."""
    require_valid(g)
    curved = _curved_edges(g)
    if not curved:
        return Classification("TypeC", False, "no curved edge")
    xy = _planar_coords(g)
    if xy is None:
        return Classification("TypeC", False, "graph is not planar")
    sk = g.skeleton
    nb = _neighbours(sk)
    walk = _boundary_walk(xy, nb)
    if walk is None:
        return Classification("TypeC", False, "boundary walk did not close")
    cycle, turns = walk
    turns = np.array(turns)
    if np.any(turns > 1e-12) or abs(turns.sum() + 2 * pi) > 1e-9:
        return Classification("TypeC", False, "boundary curve is not convex")
    on_b = set()
    for k in range(len(cycle)):
        a, b = cycle[k], cycle[(k + 1) % len(cycle)]
        on_b.add((min(a, b), max(a, b)))
    b_edges, chords = set(), []
    for e in g.edges:
        segs = np.flatnonzero(sk.segment_edge == e.id)
        if all(tuple(sorted(sk.segments[s])) in on_b for s in segs):
            b_edges.add(e.id)
        else:
            chords.append(e)
    poly_b = xy[cycle][::-1]  # counter-clockwise
    for e in chords:
        if e.id in curved:
            return Classification("TypeC", False, f"interior edge {e.id} is not a line segment")
        for v in e.ends:
            p = xy[sk.node_of(VertexRef(v))]
            n = len(poly_b)
            for i in range(n):
                d = poly_b[(i + 1) % n] - poly_b[i]
                w = p - poly_b[i]
                if d[0] * w[1] - d[1] * w[0] < -g.eps * np.linalg.norm(d):
                    return Classification("TypeC", False, f"edge {e.id} leaves the region bounded by B")
    faces = _faces(xy, nb)
    bounded = []
    for f in faces:
        poly = xy[f]
        if _signed_area(poly) > 0:
            if not _convex_ccw(poly):
                return Classification("TypeC", False, "a bounded face is not convex")
            bounded.append(f)
    return Classification("TypeC", True, evidence={
        "boundary_edges": sorted(b_edges),
        "chords": sorted(e.id for e in chords),
        "n_faces": len(bounded),
        "boundary_nodes": len(cycle),
    })


# ----------------------------------------------------------------------


def verdict(g, n_probes=10_000, seed=0, tol_tight=TOL_TIGHT):
    """Combine the curvature formula, probes and structural classification."""
    report = total_curvature(g, tol_tight)
    tpp = tpp_probe(g, n_probes, seed)
    s = classify_type_s(g)
    c = classify_type_c(g) if not s.accepted else None
    structural = s if s.accepted else c
    evidence = {
        "gap": report.gap,
        "type_s": s.evidence if s.accepted else s.reason,
        "type_c": None if c is None else (c.evidence if c.accepted else c.reason),
        "tpp_counterexamples": [list(x) for x in tpp.counterexamples[:5]],
    }
    if not report.tight:
        kind = "NotTight"
    elif structural.accepted and tpp.failed == 0:
        kind = structural.kind
    else:
        kind = "Unclassified"
    return TightnessVerdict(report.tight, report.K_total, report.b1, tpp.passed, tpp.total,
                            kind, evidence)


__all__ = ["Classification", "TPPResult", "TightnessVerdict", "classify_type_c",
           "classify_type_s", "tpp_probe", "verdict"]
