"""Small vectorised Euclidean helpers shared by the graph modules."""

import numpy as np


def unit(v, axis=-1):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v, axis=axis, keepdims=True)


def angle_between(a, b):
    """Angle in [0, pi] between two (batches of) vectors.

    Uses ``atan2(|a x b|, a . b)``, which stays accurate for nearly
    parallel and nearly antiparallel pairs where ``arccos`` does not.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    cr = np.linalg.norm(np.cross(a, b), axis=-1)
    dt = np.sum(a * b, axis=-1)
    return np.arctan2(cr, dt)


def turning_angles(points):
    """Turning angle at every interior point of an open polyline."""
    points = np.asarray(points, dtype=float)
    if len(points) < 3:
        return np.zeros(0)
    d = np.diff(points, axis=0)
    return angle_between(d[:-1], d[1:])


def segment_distances(p1, q1, p2, q2):
    """Minimum distance between segment batches ``[p1, q1]`` and ``[p2, q2]``.

    All arguments are ``(N, 3)`` arrays; segments are assumed to have
    positive length. Closest-point parameters are clamped to ``[0, 1]``
    following the usual two-stage clamp.
    """
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = np.einsum("ij,ij->i", d1, d1)
    e = np.einsum("ij,ij->i", d2, d2)
    f = np.einsum("ij,ij->i", d2, r)
    c = np.einsum("ij,ij->i", d1, r)
    b = np.einsum("ij,ij->i", d1, d2)
    denom = a * e - b * b
    parallel = denom <= 1e-14 * a * e
    safe = np.where(parallel, 1.0, denom)
    s = np.where(parallel, 0.0, np.clip((b * f - c * e) / safe, 0.0, 1.0))
    t = (b * s + f) / e
    low = t < 0.0
    high = t > 1.0
    s = np.where(low, np.clip(-c / a, 0.0, 1.0), s)
    s = np.where(high, np.clip((b - c) / a, 0.0, 1.0), s)
    t = np.clip(t, 0.0, 1.0)
    diff = (p1 + s[:, None] * d1) - (p2 + t[:, None] * d2)
    return np.linalg.norm(diff, axis=1)


def point_segment_distances(x, p, q):
    """Distance from points ``x`` to segments ``[p, q]`` (row-wise)."""
    d = q - p
    t = np.einsum("ij,ij->i", x - p, d) / np.einsum("ij,ij->i", d, d)
    t = np.clip(t, 0.0, 1.0)
    return np.linalg.norm(x - (p + t[:, None] * d), axis=1)


def best_fit_plane(points):
    """Centroid, unit normal and in-plane orthonormal basis (rows)."""
    points = np.asarray(points, dtype=float)
    centroid = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - centroid)
    return centroid, vt[2], vt[:2]


def affine_rank(points, tol):
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return 0
    sv = np.linalg.svd(points - points.mean(axis=0), compute_uv=False)
    return int(np.sum(sv > tol))
