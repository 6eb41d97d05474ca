import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from graphcurv import generators


@pytest.fixture(scope="session")
def catalog():
    return generators.catalog()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_rigid_motion(seed):
    rng = np.random.default_rng(seed)
    R = Rotation.random(random_state=seed).as_matrix()
    return R, rng.uniform(-5, 5, size=3)


def promote_random_joints(g, k, rng):
    """Promote ``k`` random joints, inserting collinear ones when there are too few."""
    from graphcurv.graph import refine_vertex_set, subdivide_segment

    for _ in range(k):
        joints = g.joint_refs()
        if not joints:
            e = g.edges[rng.integers(len(g.edges))]
            g = subdivide_segment(g, e.id, int(rng.integers(e.n_segments)), rng.uniform(0.2, 0.8))
            joints = g.joint_refs()
        g = refine_vertex_set(g, joints[rng.integers(len(joints))])
    return g
