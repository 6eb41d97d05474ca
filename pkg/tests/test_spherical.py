import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.spatial.transform import Rotation

from graphcurv import generators, spherical
from graphcurv.graph import TangentFan

PI = np.pi
fans = st.integers(1, 6).flatmap(
    lambda k: arrays(np.float64, (k, 3), elements=st.floats(-1, 1, allow_nan=False)))


def _fan(dirs):
    return TangentFan.from_branches(np.zeros(3), dirs)


def mc_area(dirs, n=200_000, seed=0):
    """Fraction of uniform directions with positive inner product with all dirs, times 4 pi."""
    U = spherical.sample_directions(np.random.default_rng(seed), n)
    hit = np.all(U @ np.asarray(dirs).T > 0, axis=1)
    p = hit.mean()
    return 4 * PI * p, 4 * PI * np.sqrt(max(p * (1 - p), 1e-12) / n)


@pytest.mark.parametrize("dirs, expected", [
    (np.eye(3), PI / 2),                                   # octant
    (np.eye(3)[:2], PI),                                   # lune of a right angle
    (np.eye(3)[:1], 2 * PI),                               # hemisphere
    (np.array([[1, 0, 0], [-1, 0, 0]]), 0.0),              # opposite pair
    (np.array([[1, 0, 0], [0, 1, 0], [-1, -1, 0]]), 0.0),  # positively spanning plane
    (np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]), 0.0),
])
def test_known_areas(dirs, expected):
    assert spherical.area(spherical.positive_region(_fan(dirs))) == pytest.approx(expected, abs=1e-12)


def test_empty_fan_is_full_sphere():
    region = spherical.positive_region(np.zeros((0, 3)))
    assert spherical.area(region) == pytest.approx(4 * PI)


def test_lune_area_formula():
    for theta in np.linspace(0.1, 3.0, 7):
        dirs = [[1, 0, 0], [np.cos(theta), np.sin(theta), 0]]
        area = spherical.area(spherical.positive_region(_fan(dirs)))
        assert area == pytest.approx(2 * (PI - theta), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(fans)
def test_area_matches_monte_carlo(dirs):
    norms = np.linalg.norm(dirs, axis=1)
    assume(np.all(norms > 1e-2))
    dirs = dirs / norms[:, None]
    exact = spherical.area(spherical.positive_region(_fan(dirs)))
    est, se = mc_area(dirs)
    assert abs(exact - est) <= 5 * se + 1e-3


@settings(max_examples=40, deadline=None)
@given(fans, st.integers(0, 2**31 - 1))
def test_area_invariant_under_rotation_and_permutation(dirs, seed):
    norms = np.linalg.norm(dirs, axis=1)
    assume(np.all(norms > 1e-2))
    dirs = dirs / norms[:, None]
    R = Rotation.random(random_state=seed).as_matrix()
    perm = np.random.default_rng(seed).permutation(len(dirs))
    a0 = spherical.area(spherical.positive_region(_fan(dirs)))
    a1 = spherical.area(spherical.positive_region(_fan(dirs[perm] @ R.T)))
    # dual rays come from cross products, so rounding grows like 1/sv_min for nearly planar fans
    sv = np.linalg.svd(dirs, compute_uv=False)
    cond = sv[0] / max(sv[-1], 1e-300) if len(dirs) >= 3 else 1.0
    assert a1 == pytest.approx(a0, abs=1e-9 + 1e-14 * cond)


def test_polygon_area_agrees_with_solid_angle_oracle(rng):
    for _ in range(200):
        k = rng.integers(3, 7)
        axis = spherical.sample_direction(rng)
        dirs = axis + 0.8 * spherical.sample_directions(rng, k)
        region = spherical.positive_region(_fan(dirs))
        if region.kind != "polygon":
            continue
        assert spherical.area(region) == pytest.approx(spherical.solid_angle_area(region), abs=1e-10)


def test_region_contains_its_directions(rng):
    dirs = np.array([[1, 0.2, 0.1], [0.1, 1, 0], [0.2, 0.1, 1.0]])
    region = spherical.positive_region(_fan(dirs))
    U = spherical.sample_directions(rng, 5000)
    inside = np.array([region.contains(u) for u in U])
    positive = np.all(U @ dirs.T > 0, axis=1)
    assert np.array_equal(inside, positive)


def test_sampling_is_uniform(rng):
    U = spherical.sample_directions(rng, 100_000)
    assert np.allclose(np.linalg.norm(U, axis=1), 1)
    assert np.all(np.abs(U.mean(axis=0)) < 0.01)
    # z is uniform on [-1, 1] for the uniform measure on the sphere
    hist, _ = np.histogram(U[:, 2], bins=10, range=(-1, 1))
    assert np.all(np.abs(hist / len(U) - 0.1) < 0.005)


def test_degeneracy_predicate():
    g = generators.make_theta_graph()
    assert spherical.is_degenerate(g, np.array([0, 0, 1.0]))
    assert not spherical.is_degenerate(g, np.array([0, 1.0, 0]))
    square = generators.make_unit_square()
    assert spherical.is_degenerate(square, np.array([1.0, 0, 0]))
    assert spherical.is_degenerate(square, np.array([1.0, 1e-10, 0.3]) / np.linalg.norm([1, 1e-10, 0.3]))
    mask = spherical.degenerate_mask(square, np.array([[1.0, 0, 0], [0.6, 0.8, 0]]))
    assert mask.tolist() == [True, False]
