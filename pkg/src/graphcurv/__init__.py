"""Total curvature, crookedness and tightness of piecewise-linear spatial graphs."""

from .curvature import CurvatureReport, total_curvature
from .estimators import EstimateReport, estimate
from .graph import (Edge, GraphError, JointRef, SpatialGraph, TangentFan, VertexRef,
                    euler_characteristic, first_betti, refine_vertex_set, tangent_fan, validate)
from .io import load_graph, save_graph
from .morse import DegenerateDirectionError, MorseReport, analyze_direction
from .tightness import TightnessVerdict, verdict
from .topology import cycle_basis, linking_number, unknot_certificate

__version__ = "0.1.0"

__all__ = [
    "CurvatureReport", "DegenerateDirectionError", "Edge", "EstimateReport", "GraphError",
    "JointRef", "MorseReport", "SpatialGraph", "TangentFan", "TightnessVerdict", "VertexRef",
    "analyze_direction", "cycle_basis", "estimate", "euler_characteristic", "first_betti",
    "linking_number", "load_graph", "refine_vertex_set", "save_graph", "tangent_fan",
    "total_curvature", "unknot_certificate", "validate", "verdict",
]
