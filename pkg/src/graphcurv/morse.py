"""
Stratified Morse analysis of height functions
=============================================

For a direction ``u`` the height ``x -> (u, x)`` restricted to a PL
graph has its stratified critical points at the vertices and at the
joints where the polyline turns back in height. Each point contributes
``1`` to the Morse polynomial if it is a local minimum and ``(d- - 1) t``
otherwise, where ``d-`` counts the branches going down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import spherical
from .graph import VertexRef, euler_characteristic, first_betti
from .unionfind import UnionFind


class DegenerateDirectionError(ValueError):
    """The height function is not a stratified Morse function."""


class CriticalPoint(NamedTuple):
    location: object
    height: float
    d_minus: int
    d_plus: int
    kind: str
    weight: int
    morse_poly: tuple


@dataclass(frozen=True)
class MorseReport:
    direction: tuple
    criticals: list
    M: tuple
    w: int
    mu: int
    chi_check: int

    def to_json(self):
        crit = []
        for c in self.criticals:
            loc = c.location
            if isinstance(loc, VertexRef):
                where = {"vertex": loc.vertex}
            else:
                where = {"edge": loc.edge, "joint": loc.index}
            crit.append({"location": where, "height": c.height, "d_minus": c.d_minus,
                         "d_plus": c.d_plus, "kind": c.kind, "weight": c.weight,
                         "morse_poly": list(c.morse_poly)})
        return {"direction": list(self.direction), "criticals": crit, "M": list(self.M),
                "w": self.w, "mu": self.mu, "chi_check": self.chi_check}


def d_minus_batch(g, U):
    """Descending branch counts, shape ``(len(U), n_nodes)``."""
    sk = g.skeleton
    neg = (U @ sk.branch_dir.T) < 0
    out = np.zeros((len(U), len(sk.points)), dtype=np.int64)
    has = sk.degree > 0
    if neg.shape[1]:
        sums = np.add.reduceat(neg.astype(np.int64), sk.branch_starts[has], axis=1)
        out[:, has] = sums
    return out


def morse_counts(g, U):
    """Vectorised Morse data for a batch of nondegenerate directions.

    Returns ``(c0, c1, delta)``: the two Morse polynomial coefficients per
    direction and the Gulliver-Yamada vertex defect ``sum_v max(d- - d+, 0)``.
    """
    sk = g.skeleton
    dm = d_minus_batch(g, U)
    c0 = np.sum(dm == 0, axis=1)
    c1 = np.sum(np.maximum(dm - 1, 0), axis=1)
    nv = sk.n_vertices
    excess = 2 * dm[:, :nv] - sk.degree[:nv]
    delta = np.sum(np.maximum(excess, 0), axis=1)
    return c0, c1, delta


def analyze_direction(g, u):
    """Critical points and Morse polynomial of the height in direction ``u``."""
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    if spherical.is_degenerate(g, u):
        raise DegenerateDirectionError(
            "direction is perpendicular to a segment; perturb it slightly")
    sk = g.skeleton
    dm = d_minus_batch(g, u[None, :])[0]
    heights = sk.points @ u
    crit = []
    for i, ref in enumerate(sk.refs):
        d = int(dm[i])
        deg = int(sk.degree[i])
        is_vertex = i < sk.n_vertices
        if d == 0:
            kind, weight, poly = "local_min", 1, (1, 0)
        elif d == 1:
            if not is_vertex:
                continue
            kind, weight, poly = "regular", 0, (0, 0)
        else:
            kind, weight, poly = "other", d - 1, (0, d - 1)
        crit.append(CriticalPoint(ref, float(heights[i]), d, deg - d, kind, weight, poly))
    crit.sort(key=lambda c: c.height)
    c0 = sum(c.morse_poly[0] for c in crit)
    c1 = sum(c.morse_poly[1] for c in crit)
    return MorseReport(tuple(float(x) for x in u), crit, (c0, c1), c0 + c1, c0, c0 - c1)


# ----------------------------------------------------------------------
# sublevel sets


def sublevel_components(g, u, c):
    """Number of components of the closed half-space ``{(u, x) <= c}`` meet ``g``.

    A segment with both ends at or below ``c`` lies in the half-space; one
    that sticks out only contributes a piece hanging off its lower end,
    so the count is that of the node graph restricted to low nodes.
    """
    sk = g.skeleton
    h = sk.points @ np.asarray(u, dtype=float)
    low = h <= c
    n_low = int(low.sum())
    if n_low == 0:
        return 0
    uf = UnionFind(len(h))
    for a, b in sk.segments:
        if low[a] and low[b]:
            uf.union(a, b)
    return n_low - (len(h) - uf.components)


def sublevel_profile(g, u):
    """Sweep upwards through the node heights.

    Returns a list of ``(height, components)`` pairs giving the number of
    components of the sublevel set just after each distinct height has
    been passed. Nodes at equal heights are processed as one batch.
    """
    sk = g.skeleton
    h = sk.points @ np.asarray(u, dtype=float)
    order = np.argsort(h, kind="stable")
    top = np.maximum(h[sk.segments[:, 0]], h[sk.segments[:, 1]])
    seg_order = np.argsort(top, kind="stable")
    uf = UnionFind(len(h))
    added = 0
    merged = 0
    out = []
    j = 0
    i = 0
    n = len(h)
    while i < n:
        level = h[order[i]]
        while i < n and h[order[i]] == level:
            added += 1
            i += 1
        while j < len(seg_order) and top[seg_order[j]] <= level:
            a, b = sk.segments[seg_order[j]]
            if uf.union(a, b):
                merged += 1
            j += 1
        out.append((float(level), added - merged))
    return out


def is_perfect(g, u):
    """True when ``w(u) = 1 + b1``; checked three independent ways."""
    report = analyze_direction(g, u)
    by_weight = report.w == 1 + first_betti(g)
    by_minima = report.mu == 1
    by_sweep = max(count for _, count in sublevel_profile(g, u)) <= 1
    if not by_weight == by_minima == by_sweep:
        raise AssertionError(
            f"perfectness tests disagree: weight={by_weight} minima={by_minima} sweep={by_sweep}")
    return by_weight


def morse_inequality_violations(g, U):
    """Count directions breaking ``w >= 1 + b1`` or ``M(-1) = chi``."""
    c0, c1, _ = morse_counts(g, U)
    chi = euler_characteristic(g)
    b1 = first_betti(g)
    return int(np.sum(c0 + c1 < 1 + b1)), int(np.sum(c0 - c1 != chi))
