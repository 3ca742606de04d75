"""Instance generators for the hardness reductions."""

from .gadgets import (
    ClauseGadget,
    GadgetGd,
    GadgetRegistry,
    Hub,
    VariableRecord,
    build_3binary_tree,
    build_gadget_Gd,
    formula_to_graph,
    gadget_depth,
)
from .incidence import graph_to_incidence_db, tripartite_to_2div, tripartite_to_3div
from .tdm import MatchingImage, is_matching, map_3dm_solution, tdm3_to_db27
from .types import CnfFormula, Edge, Graph, ThreeDMInstance, TripartiteGraph, norm_edge

__all__ = [
    "ClauseGadget", "CnfFormula", "Edge", "GadgetGd", "GadgetRegistry", "Graph", "Hub",
    "MatchingImage", "ThreeDMInstance", "TripartiteGraph", "VariableRecord",
    "build_3binary_tree", "build_gadget_Gd", "formula_to_graph", "gadget_depth",
    "graph_to_incidence_db", "is_matching", "map_3dm_solution", "norm_edge",
    "tdm3_to_db27", "tripartite_to_2div", "tripartite_to_3div",
]
