"""JSON interchange format for spatial graphs.

::

    {"vertices": [{"id": 0, "pos": [x, y, z]}, ...],
     "edges": [{"id": 0, "ends": [0, 1], "polyline": [[x, y, z], ...]}, ...]}

Floats are written with Python's shortest round-trip representation, so
``load(dump(g))`` reproduces every coordinate bit for bit.
"""

from __future__ import annotations

import json

import numpy as np

from .graph import Edge, GraphError, SpatialGraph


def graph_to_dict(g):
    return {
        "vertices": [{"id": v, "pos": [float(x) for x in g.vertices[v]]} for v in g.vertex_ids],
        "edges": [{"id": e.id, "ends": list(e.ends),
                   "polyline": [[float(x) for x in p] for p in e.polyline]} for e in g.edges],
    }


def graph_from_dict(doc):
    """Parse the interchange document; structural problems raise :class:`GraphError`."""
    try:
        verts = {}
        for item in doc["vertices"]:
            vid = item["id"]
            if not isinstance(vid, int) or isinstance(vid, bool) or vid < 0:
                raise GraphError(f"bad vertex id {vid!r}")
            if vid in verts:
                raise GraphError(f"duplicate vertex id {vid}")
            pos = np.asarray(item["pos"], dtype=float)
            if pos.shape != (3,):
                raise GraphError(f"vertex {vid} position must have three coordinates")
            verts[vid] = pos
        edges = []
        for item in doc["edges"]:
            eid = item["id"]
            if not isinstance(eid, int) or isinstance(eid, bool) or eid < 0:
                raise GraphError(f"bad edge id {eid!r}")
            ends = item["ends"]
            if len(ends) != 2:
                raise GraphError(f"edge {eid} needs two ends")
            poly = np.asarray(item["polyline"], dtype=float)
            if poly.ndim != 2 or poly.shape[1] != 3:
                raise GraphError(f"edge {eid} polyline must be a list of points")
            edges.append(Edge(eid, tuple(int(x) for x in ends), poly))
    except GraphError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from None
    return SpatialGraph(verts, tuple(edges))


def dumps(g, indent=None):
    return json.dumps(graph_to_dict(g), indent=indent)


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    return graph_from_dict(doc)


def save_graph(g, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g, indent=1))
        fh.write("\n")


def load_graph(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


__all__ = ["dumps", "graph_from_dict", "graph_to_dict", "load_graph", "loads", "save_graph"]
