"""
adhesive-egg
============

E-graphs presented as hypergraphs with an equivalence on nodes: finite-set
(co)limits, term graphs, DPO rewriting with equality saturation and
extraction, and a lab that checks the adhesivity lemmas on small instances.
"""

from .utils import get_config, setup_logging

__version__ = "0.3.0"
__all__ = ["setup_logging", "get_config"]
