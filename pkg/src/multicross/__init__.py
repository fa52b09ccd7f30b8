"""Crossing numbers of complete multipartite graphs: formulas, drawings, exact search and census."""

from .graph import PartitionedGraph, complete_multipartite, edge_set_between, incident_edges

__all__ = ["PartitionedGraph", "complete_multipartite", "edge_set_between", "incident_edges"]
