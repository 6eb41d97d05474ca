"""
Catalog of example graphs
=========================

Constructors for the families used throughout the package: convex
polygons, theta graphs, circles with chords, suspensions (planar and
braided), meridian graphs, helix arcs, a helix-surgered figure eight,
a trefoil and an almost-tight Hopf-linked graph. Smooth arcs are
sampled as polylines.
"""

from __future__ import annotations

from math import atan, cos, pi, sin, sqrt, tan

import numpy as np

from .graph import Edge, GraphError, SpatialGraph, require_valid


def _arc(center, radius, a0, a1, m, z=0.0):
    """``m``-segment polyline inscribed in a circle from angle a0 to a1."""
    t = np.linspace(a0, a1, m + 1)
    c = np.asarray(center, dtype=float)
    pts = np.column_stack([c[0] + radius * np.cos(t), c[1] + radius * np.sin(t),
                           np.full_like(t, z)])
    return pts


def make_convex_polygon(n, radius=1.0):
    """Regular ``n``-gon in the xy-plane."""
    if n < 3:
        raise ValueError("a polygon needs n >= 3")
    t = 2 * pi * np.arange(n) / n
    verts = {i: (radius * cos(t[i]), radius * sin(t[i]), 0.0) for i in range(n)}
    return SpatialGraph.from_polylines(verts, [(i, (i + 1) % n, None) for i in range(n)])


def make_unit_square():
    verts = {0: (0, 0, 0), 1: (1, 0, 0), 2: (1, 1, 0), 3: (0, 1, 0)}
    return SpatialGraph.from_polylines(verts, [(i, (i + 1) % 4, None) for i in range(4)])


def make_dart():
    """Non-convex quadrilateral with a reflex vertex at (1, 0, 0)."""
    verts = {0: (0, 0, 0), 1: (2, -1, 0), 2: (1, 0, 0), 3: (2, 1, 0)}
    return SpatialGraph.from_polylines(verts, [(i, (i + 1) % 4, None) for i in range(4)])


def make_cube_skeleton(size=1.0):
    corners = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    verts = {i: tuple(size * c for c in p) for i, p in enumerate(corners)}
    edges = []
    for i in range(8):
        for j in range(i + 1, 8):
            if sum(a != b for a, b in zip(corners[i], corners[j])) == 1:
                edges.append((i, j, None))
    return SpatialGraph.from_polylines(verts, edges)


def make_zigzag():
    """Open W-shaped polyline with two local minima for the height y."""
    pts = [(0, 1, 0), (1, 0, 0), (2, 0.6, 0), (3, 0.2, 0), (4, 1, 0)]
    return SpatialGraph.from_polylines({0: pts[0], 1: pts[-1]}, [(0, 1, pts)])


def make_circle_with_chords(chord_xs=(0.0,), m=64):
    """Unit circle in the xy-plane plus vertical chords at the given x.

    The circle is an inscribed polygon with about ``m`` segments in total,
    with corners at the chord endpoints, so the graph is exactly convex.
    """
    xs = sorted(float(c) for c in chord_xs)
    if any(abs(c) >= 1 for c in xs):
        raise ValueError("chords must satisfy |x| < 1")
    angles = []
    for c in xs:
        a = np.arccos(c)
        angles += [a, -a]
    angles = sorted(a % (2 * pi) for a in angles)
    verts = {i: (cos(a), sin(a), 0.0) for i, a in enumerate(angles)}
    index = {round(a, 12): i for i, a in enumerate(angles)}
    edges = []
    k = len(angles)
    for i in range(k):
        a0 = angles[i]
        a1 = angles[(i + 1) % k] + (2 * pi if i == k - 1 else 0.0)
        segs = max(2, int(round(m * (a1 - a0) / (2 * pi))))
        pts = _arc((0, 0), 1.0, a0, a1, segs)
        pts[0] = verts[i]
        pts[-1] = verts[(i + 1) % k]
        edges.append((i, (i + 1) % k, pts))
    for c in xs:
        a = np.arccos(c)
        top = index[round(a % (2 * pi), 12)]
        bot = index[round((-a) % (2 * pi), 12)]
        edges.append((top, bot, None))
    return SpatialGraph.from_polylines(verts, edges)


def make_theta_graph(variant="pl_minimal", m=64):
    """Circle plus diameter with poles at (0, +-1, 0).

    ``pl_minimal`` uses the five points (0, +-1, 0), (+-1, 0, 0) and the
    origin; ``sampled`` inscribes both half circles with ``m`` segments.
    """
    if variant == "pl_minimal":
        P, Q = (0.0, 1.0, 0.0), (0.0, -1.0, 0.0)
        verts = {0: P, 1: Q}
        return SpatialGraph.from_polylines(verts, [
            (0, 1, [P, (-1, 0, 0), Q]),
            (0, 1, [P, (0, 0, 0), Q]),
            (0, 1, [P, (1, 0, 0), Q]),
        ])
    if variant == "sampled":
        if m < 2:
            raise ValueError("m must be >= 2")
        P, Q = np.array([0.0, 1.0, 0.0]), np.array([0.0, -1.0, 0.0])
        left = _arc((0, 0), 1.0, pi / 2, 3 * pi / 2, m)
        right = _arc((0, 0), 1.0, pi / 2, -pi / 2, m)
        for arc in (left, right):
            arc[0], arc[-1] = P, Q
        return SpatialGraph.from_polylines({0: P, 1: Q}, [(0, 1, left), (0, 1, None), (0, 1, right)])
    raise ValueError(f"unknown theta variant {variant!r}")


# ----------------------------------------------------------------------
# suspensions


def parse_braid_word(word, n):
    """Accept ``[1, -2]`` or ``"1,-2"``; generators are 1 .. n-1."""
    if word is None:
        return []
    if isinstance(word, str):
        word = [w for w in word.replace(" ", "").split(",") if w]
    out = []
    for w in word:
        try:
            k = int(w)
        except (TypeError, ValueError):
            raise ValueError(f"bad braid generator {w!r}") from None
        if k == 0 or abs(k) > n - 1:
            raise ValueError(f"braid generator {k} out of range for {n} strands")
        out.append(k)
    return out


def make_suspension(n, variant="planar", word=None, m=32, bulge=0.02):
    """Two poles joined by ``n`` disjoint paths.

    ``planar`` draws nested arcs between (0, +-1, 0): two half circles,
    the straight chord when ``n`` is odd and shallow arcs of sagitta
    ``bulge * k`` for the rest. ``braided`` runs monotone strands up a
    cylinder, swapping neighbours as the braid ``word`` dictates.
    """
    if n < 2:
        raise ValueError("a suspension needs n >= 2")
    if variant == "planar":
        return _planar_suspension(n, m, bulge)
    if variant == "braided":
        return _braided_suspension(n, parse_braid_word(word, n))
    raise ValueError(f"unknown suspension variant {variant!r}")


def _sagitta_arc(s, m):
    """Arc from (0, 1) to (0, -1) bulging to x = s (circular, m segments)."""
    if s == 0:
        return None
    R = (1 + s * s) / (2 * abs(s))
    cx = s - np.sign(s) * R
    half = np.arcsin(1 / R)
    if s > 0:
        pts = _arc((cx, 0), R, half, -half, m)
    else:
        pts = _arc((cx, 0), R, pi - half, pi + half, m)
    pts[0] = (0, 1, 0)
    pts[-1] = (0, -1, 0)
    return pts


def _planar_suspension(n, m, bulge):
    P, Q = (0.0, 1.0, 0.0), (0.0, -1.0, 0.0)
    polys = [_arc((0, 0), 1.0, pi / 2, 3 * pi / 2, m), _arc((0, 0), 1.0, pi / 2, -pi / 2, m)]
    for arc in polys:
        arc[0], arc[-1] = P, Q
    inner = n - 2
    if inner % 2 == 1:
        polys.append(None)
        inner -= 1
    for k in range(1, inner // 2 + 1):
        polys.append(_sagitta_arc(bulge * k, m))
        polys.append(_sagitta_arc(-bulge * k, m))
    return SpatialGraph.from_polylines({0: P, 1: Q}, [(0, 1, p) for p in polys])


def _braided_suspension(n, word, layer=10.0, pole_gap=3.0, depth=0.1):
    phi = 2 * pi * np.arange(n) / n
    slot_xy = np.column_stack([np.cos(phi), np.sin(phi)])
    slot_of = list(range(n))  # strand -> slot
    paths = [[np.array([*slot_xy[k], 0.0])] for k in range(n)]
    for j, gen in enumerate(word):
        i = abs(gen)
        sa, sb = i - 1, i
        z0, z1 = j * layer, (j + 1) * layer
        movers = {slot_of.index(sa): (sa, sb, +1), slot_of.index(sb): (sb, sa, -1)}
        mid_xy = 0.5 * (slot_xy[sa] + slot_xy[sb])
        radial = mid_xy / np.linalg.norm(mid_xy)
        for strand, (src, dst, side) in movers.items():
            if not np.isclose(paths[strand][-1][2], z0):
                paths[strand].append(np.array([*slot_xy[src], z0]))
            offset = depth * side * (1 if gen > 0 else -1)
            paths[strand].append(np.array([*(mid_xy + offset * radial), 0.5 * (z0 + z1)]))
            paths[strand].append(np.array([*slot_xy[dst], z1]))
        for strand, (src, dst, _) in movers.items():
            slot_of[strand] = dst
    z_top = max(len(word), 1) * layer
    for k in range(n):
        last = paths[k][-1]
        if not np.isclose(last[2], z_top):
            paths[k].append(np.array([last[0], last[1], z_top]))
    S = np.array([0.0, 0.0, -pole_gap])
    N = np.array([0.0, 0.0, z_top + pole_gap])
    edges = [(0, 1, [S, *paths[k], N]) for k in range(n)]
    return SpatialGraph.from_polylines({0: S, 1: N}, edges)


def make_meridian_graph(n, m=64):
    """North and south pole joined by ``n`` meridians at longitudes 2 pi k / n.

    Each meridian is the half of a regular polygon circumscribed about the
    unit circle with ``m`` corners, so it leaves each pole horizontally
    and turns by exactly pi.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    if m < 2:
        raise ValueError("m must be >= 2")
    alpha = (np.arange(m) + 0.5) * pi / m
    R = 1.0 / cos(pi / (2 * m))
    N = np.array([0.0, 0.0, 1.0])
    S = np.array([0.0, 0.0, -1.0])
    edges = []
    for k in range(n):
        lon = 2 * pi * (k + 1) / n
        pts = np.column_stack([R * np.sin(alpha) * cos(lon), R * np.sin(alpha) * sin(lon),
                               R * np.cos(alpha)])
        edges.append((0, 1, np.vstack([N, pts, S])))
    return SpatialGraph.from_polylines({0: N, 1: S}, edges)


# ----------------------------------------------------------------------
# helices, surgery, knots


def helix_points(a, b, turns=1.0, segments=512):
    t = np.linspace(0.0, 2 * pi * turns, segments + 1)
    return np.column_stack([a * np.cos(t), a * np.sin(t), b * t])


def make_helix_arc(a, b, turns=1.0, segments=512):
    """Open circular-helix arc ``(a cos t, a sin t, b t)`` as an :class:`Edge`."""
    if a <= 0:
        raise ValueError("helix radius must be positive")
    return Edge(0, (0, 1), helix_points(a, b, turns, segments))


def helix_curvature(slope, turns=1.0):
    """Smooth total curvature (over pi) of helix turns with the given slope."""
    return 2 * turns / sqrt(1 + slope * slope)


def make_surgered_figure_eight(m_slope, length=1.0, segments=512, lobe_segments=64, helix=True):
    """Planar figure eight whose crossing strand is replaced by a helix turn.

    The strand along the x-axis becomes one turn of a helix of slope
    ``m_slope`` with the same endpoints and axis parallel to the strand;
    the crossing strand is lifted onto that axis so it threads the coil.
    With ``helix=False`` the strand stays straight (same lift), which is
    the comparison curve for the surgery's curvature cost.
    """
    if m_slope <= 0:
        raise ValueError("slope must be positive")
    L = float(length)
    a = L / (pi * m_slope)
    A0, A1 = np.array([-L, 0.0, 0.0]), np.array([L, 0.0, 0.0])
    if helix:
        t = np.linspace(0.0, 2 * pi, segments + 1)
        strand_a = np.column_stack([-L + L * t / pi, a * np.sin(t), a - a * np.cos(t)])
        strand_a[0], strand_a[-1] = A0, A1
    else:
        strand_a = np.array([A0, A1])
    right = _arc((L / 2, -L / 2), L / sqrt(2), pi / 4, -3 * pi / 4, lobe_segments)
    left = _arc((-L / 2, L / 2), L / sqrt(2), pi / 4, 5 * pi / 4, lobe_segments)
    s = L / 2
    strand_b = np.array([[0, -s, a], [0, s, a]])
    loop = np.vstack([right, strand_b, left])
    loop[0] = A1
    loop[-1] = A0
    return SpatialGraph.from_polylines({0: A0, 1: A1}, [(0, 1, strand_a), (1, 0, loop)])


def make_trefoil(m=96):
    """(2, 3) torus knot as a closed polyline split into two edges."""
    if m % 2:
        raise ValueError("m must be even")
    t = 2 * pi * np.arange(m) / m
    r = 2 + np.cos(3 * t)
    pts = np.column_stack([r * np.cos(2 * t), r * np.sin(2 * t), np.sin(3 * t)])
    h = m // 2
    first = pts[: h + 1]
    second = np.vstack([pts[h:], pts[:1]])
    return SpatialGraph.from_polylines({0: pts[0], 1: pts[h]}, [(0, 1, first), (1, 0, second)])


# ----------------------------------------------------------------------
# the almost-tight Hopf-linked graph

#: edge ids of the two disjoint cycles that form the Hopf link
HOPF_CYCLES = ((0, 1), (3, 4))


def make_hopf_gamma_eps(eps, m=64):
    """Circle-plus-two-chords graph, knotted, with crookedness below 1 + eps.

    Start from a stadium: a left half circle closed by the chord AB, a
    right half circle closed by CD, and two short horizontal edges AC
    and BD of length ``r``. The chord AB is replaced by the broken line
    A V B with V pushed past CD; where VA and VB cross CD they dip under
    and over it. The pieces are budgeted so that the angle at A costs
    eps / 4 and the two dips eps / 8 each. The cycles with edge ids
    ``HOPF_CYCLES`` form a Hopf link.
    """
    if not 0 < eps <= 0.5:
        raise ValueError("eps must lie in (0, 0.5]")
    theta = pi * eps / 4
    r = tan(theta) / 2
    dip = pi * eps / 16
    A = np.array([0.0, 1.0, 0.0])
    B = np.array([0.0, -1.0, 0.0])
    C = np.array([r, 1.0, 0.0])
    D = np.array([r, -1.0, 0.0])
    V = np.array([2 * r, 0.0, 0.0])

    def dimple(p, q, sign):
        length = np.linalg.norm(q - p)
        depth = 0.25 * length * tan(dip)
        mid = 0.5 * (p + q) + np.array([0.0, 0.0, sign * depth])
        return [p + 0.25 * (q - p), mid, p + 0.75 * (q - p)]

    avb = np.array([A, *dimple(A, V, -1.0), V, *dimple(V, B, +1.0), B])
    left = _arc((0, 0), 1.0, pi / 2, 3 * pi / 2, m)
    left[0], left[-1] = A, B
    right = _arc((r, 0), 1.0, pi / 2, -pi / 2, m)
    right[0], right[-1] = C, D
    verts = {0: A, 1: B, 2: C, 3: D}
    g = SpatialGraph.from_polylines(verts, [
        (0, 1, left), (0, 1, avb), (0, 2, None), (2, 3, right), (2, 3, None), (1, 3, None),
    ])
    from .curvature import total_curvature

    mu = total_curvature(g).crookedness_mu
    if not mu < 1 + eps:
        raise AssertionError(f"crookedness budget exceeded: {mu} >= {1 + eps}")
    return g


# ----------------------------------------------------------------------


def catalog():
    """Named graphs used by the test and acceptance suites."""
    return {
        "square": make_unit_square(),
        "triangle": make_convex_polygon(3),
        "octagon": make_convex_polygon(8),
        "polygon64": make_convex_polygon(64),
        "dart": make_dart(),
        "cube": make_cube_skeleton(),
        "zigzag": make_zigzag(),
        "theta_pl": make_theta_graph("pl_minimal"),
        "theta_m64": make_theta_graph("sampled", 64),
        "circle_diameter": make_circle_with_chords((0.0,), 64),
        "circle_two_chords": make_circle_with_chords((-0.5, 0.5), 64),
        "suspension_planar5": make_suspension(5, "planar"),
        "suspension_braided4": make_suspension(4, "braided", word=[1, 2, -3]),
        "meridian3": make_meridian_graph(3, 64),
        "meridian5": make_meridian_graph(5, 64),
        "trefoil": make_trefoil(96),
        "figure_eight_helix": make_surgered_figure_eight(10.0),
        "hopf_eps0.25": make_hopf_gamma_eps(0.25),
    }


FAMILIES = ("square", "polygon", "dart", "cube", "zigzag", "theta", "circle-chords",
            "suspension", "meridian", "helix", "figure-eight", "trefoil", "hopf")


def make_family(family, **params):
    """Dispatch used by the command line ``generate`` subcommand."""
    p = {k: v for k, v in params.items() if v is not None}
    if family == "square":
        return make_unit_square()
    if family == "polygon":
        return make_convex_polygon(int(p.get("n", 4)), float(p.get("radius", 1.0)))
    if family == "dart":
        return make_dart()
    if family == "cube":
        return make_cube_skeleton(float(p.get("radius", 1.0)))
    if family == "zigzag":
        return make_zigzag()
    if family == "theta":
        return make_theta_graph(p.get("variant", "pl_minimal"), int(p.get("m", 64)))
    if family == "circle-chords":
        return make_circle_with_chords(p.get("chords", (0.0,)), int(p.get("m", 64)))
    if family == "suspension":
        return make_suspension(int(p.get("n", 3)), p.get("variant", "planar"),
                               p.get("word"), int(p.get("m", 32)))
    if family == "meridian":
        return make_meridian_graph(int(p.get("n", 3)), int(p.get("m", 64)))
    if family == "helix":
        e = make_helix_arc(float(p.get("a", 1.0)), float(p.get("b", 1.0)),
                           float(p.get("turns", 1.0)), int(p.get("segments", 512)))
        return SpatialGraph({0: e.polyline[0], 1: e.polyline[-1]}, (e,))
    if family == "figure-eight":
        return make_surgered_figure_eight(float(p.get("slope", 10.0)))
    if family == "trefoil":
        return make_trefoil(int(p.get("m", 96)))
    if family == "hopf":
        return make_hopf_gamma_eps(float(p.get("eps", 0.25)), int(p.get("m", 64)))
    raise GraphError(f"unknown family {family!r}")
