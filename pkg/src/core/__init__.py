"""
Core constructions: finite sets, hypergraphs, term graphs, hypergraphs with
equivalence, e-graphs and DPO rewriting.

Submodules are imported explicitly (``from src.core.egraph import ...``);
only the error hierarchy is re-exported here.
"""

from .errors import EggError

__all__ = ["EggError"]
