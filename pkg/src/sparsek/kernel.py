"""Selects the flow kernel at import time.

The compiled extension is preferred. Set ``SPARSEK_PURE_PYTHON=1`` to force
the pure-Python implementation (used by the kernel benchmark and by the
cross-implementation tests).
"""

from __future__ import annotations

import os

from . import _pyflow

PyFlowGraph = _pyflow.FlowGraph

try:
    from ._flow import FlowGraph as CFlowGraph
except ImportError:  # extension not built
    CFlowGraph = None

if CFlowGraph is not None and not os.environ.get("SPARSEK_PURE_PYTHON"):
    FlowGraph = CFlowGraph
    BACKEND = "cython"
else:
    FlowGraph = PyFlowGraph
    BACKEND = "python"

__all__ = ["FlowGraph", "PyFlowGraph", "CFlowGraph", "BACKEND"]
