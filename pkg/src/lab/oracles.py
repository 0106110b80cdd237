"""
Categorical characterizations of the mono classes, computed from
universal constructions only. The lab compares them against the
componentwise predicates of the core modules.
"""

from typing import Dict, Set, Tuple

from ..core import finset
from ..core.eqhyp import EqMorphism, complete_classes, equalizer_eq, kernel_pair_eq, pushout_eqhyp
from ..core.errors import LabelError
from ..core.finset import ElemId, FinFn, UnionFind
from ..core.hypergraph import HypMorphism, kernel_pair_hyp
from ..core.termgraph import Labelling, pushout_labelled


def is_mono_by_kernel_pair_hyp(m: HypMorphism) -> bool:
    """m is mono iff the two legs of its kernel pair coincide."""
    kp = kernel_pair_hyp(m)
    return kp.leg1 == kp.leg2


def is_mono_by_kernel_pair_eq(m: EqMorphism) -> bool:
    kp = kernel_pair_eq(m)
    return kp.leg1 == kp.leg2


def is_regular_by_cokernel_pair_eq(m: EqMorphism) -> bool:
    """
    m is a regular mono iff it is (up to iso) the equalizer of its cokernel
    pair: the canonical comparison into that equalizer must be invertible.
    """
    if not is_mono_by_kernel_pair_eq(m):
        return False
    po = pushout_eqhyp(m, m)
    e = equalizer_eq(po.leg1, po.leg2)
    E = e.dom
    if set(m.h_V.images) != set(E.nodes) or set(m.h_E.images) != set(E.edges):
        return False
    h_V = FinFn.from_mapping(m.dom.nodes, E.nodes, m.h_V.as_dict())
    h_Q = complete_classes(m.dom, E, h_V)
    return h_Q is not None and finset.is_bijective(h_Q)


def _term_graph_reflection(P: Labelling) -> Tuple[Dict[ElemId, ElemId], Dict[ElemId, ElemId]]:
    """
    Least quotient of a labelled hypergraph in which no two edges share a
    target: colliding edges are merged together with their sources, up to a
    fixpoint. Returns the edge and node representatives.

    Raises:
        LabelError: if colliding edges carry different symbols
    """
    edges, nodes = UnionFind(P.base.edges), UnionFind(P.base.nodes)
    changed = True
    while changed:
        changed = False
        by_target: Dict[ElemId, ElemId] = {}
        for i, e in enumerate(P.base.edges):
            t = nodes.find(P.base.tgt[i][0])
            other = by_target.setdefault(t, e)
            if other == e or edges.same(other, e):
                continue
            if P.label(other) != P.label(e):
                raise LabelError(f"edges {other} and {e} share a target but not a symbol")
            edges.union(other, e)
            for v, w in zip(P.base.source(other), P.base.source(e)):
                nodes.union(v, w)
            changed = True
    return ({e: edges.find(e) for e in P.base.edges}, {v: nodes.find(v) for v in P.base.nodes})


def is_regular_by_cokernel_pair_tg(m: HypMorphism, G: Labelling, H: Labelling) -> bool:
    """
    Regularity of a mono between term graphs: compare m with the equalizer
    of its cokernel pair taken among term graphs.
    """
    if not is_mono_by_kernel_pair_hyp(m):
        return False
    po = pushout_labelled(m, m, H, H)
    edge_rep, node_rep = _term_graph_reflection(po.apex)
    eq_nodes: Set[ElemId] = {v for v in H.base.nodes
                             if node_rep[po.leg1.h_V(v)] == node_rep[po.leg2.h_V(v)]}
    eq_edges: Set[ElemId] = {e for e in H.base.edges
                             if edge_rep[po.leg1.h_E(e)] == edge_rep[po.leg2.h_E(e)]}
    return eq_nodes == set(m.h_V.images) and eq_edges == set(m.h_E.images)
