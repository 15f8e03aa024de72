"""Exact Lin-Lu-Yau curvature and edge-connectivity checks on finite graphs."""

from .graph import Edge, Graph, GraphError
from .curvature import kappa_lly, curvature_profile
from .connectivity import edge_connectivity

__all__ = ["Edge", "Graph", "GraphError", "kappa_lly", "curvature_profile", "edge_connectivity"]
