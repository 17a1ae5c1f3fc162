"""Sparse spanning subgraphs that keep strong k-connectivity or k-arc-connectivity.

For a digraph whose complement has maximum degree ``dbar`` the sparsifiers
return at most ``kn + 800k(k + dbar)`` edges (vertex version) or
``kn + 670k(k + dbar)`` edges (arc version), and verify the result.
"""

__version__ = "0.1.0"

from .connectivity import (FanOracle, PathSystem, disjoint_paths, is_k_arc_connected, is_k_connected, k_arc_fan,
                           k_fan, min_degree_spanning_subgraph)
from .dominance import Trio, build_trio, verify_trio
from .errors import ConstructionError, InfeasibleError, InputError, InvariantError, SparsekError
from .gadgets import build_absorber, build_escaper, build_hub, check_gadget
from .generators import generate
from .graph import DirectedMultigraph, complement_max_degree, reduce_to_simple
from .io import parse, read_graph, serialize, write_graph
from .kernel import BACKEND
from .minimal import minimal_k_arc_connected, minimal_k_connected, minimal_subgraph
from .pipeline import SparsifyReport, preflight, sparsify, sparsify_arc, sparsify_vertex

__all__ = [
    "BACKEND", "ConstructionError", "DirectedMultigraph", "FanOracle", "InfeasibleError", "InputError",
    "InvariantError", "PathSystem", "SparsekError", "SparsifyReport", "Trio", "build_absorber", "build_escaper",
    "build_hub", "build_trio", "check_gadget", "complement_max_degree", "disjoint_paths", "generate",
    "is_k_arc_connected", "is_k_connected", "k_arc_fan", "k_fan", "min_degree_spanning_subgraph",
    "minimal_k_arc_connected", "minimal_k_connected", "minimal_subgraph", "parse", "preflight", "read_graph",
    "reduce_to_simple", "serialize", "sparsify", "sparsify_arc", "sparsify_vertex", "verify_trio", "write_graph",
]
