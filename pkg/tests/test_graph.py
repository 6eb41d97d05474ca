import numpy as np
import pytest

from graphcurv import generators, io
from graphcurv.graph import (GraphError, JointRef, SpatialGraph, VertexRef, euler_characteristic,
                             first_betti, refine_vertex_set, require_valid, subdivide_segment,
                             tangent_fan, validate)


def rules(g):
    return {v.rule for v in validate(g)}


def test_square_is_valid():
    assert validate(generators.make_unit_square()) == []


def test_catalog_graphs_validate(catalog):
    for name, g in catalog.items():
        assert validate(g) == [], name


def test_loop_edge_rejected():
    g = SpatialGraph.from_polylines({0: (0, 0, 0), 1: (1, 0, 0)},
                                    [(0, 0, [(0, 0, 0), (1, 1, 0), (0, 1, 0), (0, 0, 0)]),
                                     (0, 1, None)])
    assert "loop-edge" in rules(g)


def test_zero_length_segment_rejected():
    g = SpatialGraph.from_polylines({0: (0, 0, 0), 1: (1, 0, 0)},
                                    [(0, 1, [(0, 0, 0), (0.5, 0, 0), (0.5, 0, 0), (1, 0, 0)])])
    assert "zero-length-segment" in rules(g)


def test_crossing_edges_rejected():
    verts = {0: (0, 0, 0), 1: (1, 1, 0), 2: (1, 0, 0), 3: (0, 1, 0)}
    g = SpatialGraph.from_polylines(verts, [(0, 1, None), (2, 3, None), (1, 2, None)])
    assert "embedding" in rules(g)
    lifted = dict(verts)
    lifted[3] = (0, 1, 1e-3)
    assert validate(SpatialGraph.from_polylines(lifted, [(0, 1, None), (2, 3, None), (1, 2, None)])) == []


def test_overlapping_edges_at_shared_vertex_rejected():
    verts = {0: (0, 0, 0), 1: (1, 0, 0), 2: (2, 0, 0)}
    g = SpatialGraph.from_polylines(verts, [(0, 1, None), (0, 2, None)])
    assert "embedding" in rules(g)


def test_disconnected_and_duplicate_vertices():
    g = SpatialGraph.from_polylines({0: (0, 0, 0), 1: (1, 0, 0), 2: (5, 5, 5), 3: (6, 5, 5)},
                                    [(0, 1, None), (2, 3, None)])
    assert "connected" in rules(g)
    g = SpatialGraph.from_polylines({0: (0, 0, 0), 1: (1, 0, 0), 2: (1, 0, 0)},
                                    [(0, 1, None), (0, 2, [(0, 0, 0), (0.5, 1, 0), (1, 0, 0)])])
    assert "distinct-vertices" in rules(g)


def test_nonfinite_and_bad_endpoint():
    g = SpatialGraph.from_polylines({0: (0, 0, np.nan), 1: (1, 0, 0)}, [(0, 1, None)])
    assert "finite-coordinates" in rules(g)
    g = SpatialGraph.from_polylines({0: (0, 0, 0), 1: (1, 0, 0)}, [(0, 1, [(0, 0, 0), (1, 0.1, 0)])])
    assert "polyline-endpoint" in rules(g)
    with pytest.raises(GraphError):
        require_valid(g)


def test_euler_and_betti():
    assert euler_characteristic(generators.make_unit_square()) == 0
    assert first_betti(generators.make_theta_graph()) == 2
    assert first_betti(generators.make_cube_skeleton()) == 5
    assert euler_characteristic(generators.make_zigzag()) == 1


def test_tangent_fans():
    cube = generators.make_cube_skeleton()
    fan = tangent_fan(cube, VertexRef(0))
    assert fan.degree == 3
    assert np.allclose(np.linalg.norm(fan.directions, axis=1), 1, atol=1e-12)
    assert np.allclose(np.sort(fan.directions.sum(axis=0)), [1, 1, 1])
    theta = generators.make_theta_graph()
    jf = tangent_fan(theta, JointRef(0, 1))
    assert jf.degree == 2


def test_promotion_keeps_point_set():
    g = generators.make_theta_graph()
    h = refine_vertex_set(g, JointRef(0, 1))
    assert len(h.vertices) == 3 and len(h.edges) == 4
    assert validate(h) == []
    assert first_betti(h) == first_betti(g)
    assert np.allclose(h.vertices[2], (-1, 0, 0))


def test_subdivision_adds_collinear_joint():
    g = generators.make_unit_square()
    h = subdivide_segment(g, 0, 0, 0.25)
    assert len(h.joint_refs()) == 1
    assert np.allclose(h.position(JointRef(0, 1)), (0.25, 0, 0))


def test_rigid_motion_preserves_validity(catalog):
    from conftest import random_rigid_motion

    R, t = random_rigid_motion(3)
    for g in catalog.values():
        assert validate(g.transformed(R, t)) == []


def test_json_round_trip(catalog, tmp_path):
    for name, g in catalog.items():
        path = tmp_path / f"{name}.json"
        io.save_graph(g, path)
        h = io.load_graph(path)
        assert h.vertex_ids == g.vertex_ids
        for e, f in zip(g.edges, h.edges):
            assert e.id == f.id and e.ends == f.ends
            assert np.array_equal(e.polyline, f.polyline)


@pytest.mark.parametrize("text", ["[]", "{", '{"vertices": [], "edges": [{"id": 0}]}',
                                  '{"vertices": [{"id": 0, "pos": [0, 0]}], "edges": []}',
                                  '{"vertices": [{"id": -1, "pos": [0, 0, 0]}], "edges": []}'])
def test_malformed_documents(text):
    with pytest.raises(GraphError):
        io.loads(text)
