"""Exact maximum induced subgraphs in chordal and interval graph classes."""

from .classes import PiClass, class_by_name, make_chordal_class, make_interval_class, overlay_finite_family
from .graph import Graph, induced_subgraph, members, vertex_set
from .solver import ConstantSchedule, Solution, solve, validate_constants

__all__ = [
    "ConstantSchedule",
    "Graph",
    "PiClass",
    "Solution",
    "class_by_name",
    "induced_subgraph",
    "make_chordal_class",
    "make_interval_class",
    "members",
    "overlay_finite_family",
    "solve",
    "validate_constants",
    "vertex_set",
]
