"""
E-graphs as term graphs with an operator-closed equivalence.

The closure condition compares edges through the kernel pair of
⟨label, q⋆ ∘ s⟩: edges carrying the same symbol whose source words are
classwise equal must have classwise equal targets. ``rebuild`` restores it
by coarsening Q only; ``maximally_share`` is the only operation that merges
nodes.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from . import finset
from .eqhyp import EqHypergraph, LabelledEqHypergraph, free_eq
from .errors import ClosureViolation, CyclicGraph, NotATermGraph
from .finset import ElemId, FinFn, FinSet, UnionFind
from .hypergraph import Hypergraph
from .termgraph import (Signature, Symbol, Term, is_acyclic_labelling, is_term_graph,
                        term_graph_from_term)
from ..utils.logging import get_logger

logger = get_logger('egraph')


def _closure_key(G: EqHypergraph, labels: Optional[Sequence[Symbol]], i: int, e: ElemId,
                 find=None) -> Tuple[Hashable, Tuple[ElemId, ...]]:
    q = G.q
    classes = tuple(q(v) for v in G.hyp.src[i])
    if find is not None:
        classes = tuple(find(c) for c in classes)
    return (labels[i] if labels is not None else None), classes


def is_e_hypergraph(G: EqHypergraph, labels: Optional[Sequence[Symbol]] = None) -> bool:
    """
    Check the closure condition q⋆ ∘ t ∘ π₁ = q⋆ ∘ t ∘ π₂ on the kernel pair
    of q⋆ ∘ s (of ⟨label, q⋆ ∘ s⟩ when labels are given).

    Edges are grouped by their key instead of materializing the pairs.
    """
    seen: Dict[Tuple, Tuple[ElemId, ...]] = {}
    for i, e in enumerate(G.edges):
        key = _closure_key(G, labels, i, e)
        target = tuple(G.q(v) for v in G.hyp.tgt[i])
        if seen.setdefault(key, target) != target:
            return False
    return True


def is_egg(G: LabelledEqHypergraph) -> bool:
    """A term graph whose equivalence is closed under the operators."""
    return is_term_graph(G.labelling) and is_e_hypergraph(G.eq, G.labels)


@dataclass(frozen=True)
class EGraph:
    """
    An e-graph: a labelled term graph with closed equivalence.

    ``root`` optionally names the node the graph was built for; extraction
    starts from its class by default.
    """

    base: LabelledEqHypergraph
    root: Optional[ElemId] = None

    def __post_init__(self):
        if not is_term_graph(self.base.labelling):
            raise NotATermGraph("an e-graph must be a term graph")
        if not is_e_hypergraph(self.base.eq, self.base.labels):
            raise ClosureViolation("equivalence is not closed under the operators")
        if self.root is not None and self.root not in self.base.eq.nodes:
            raise NotATermGraph(f"root {self.root} is not a node")

    @property
    def eq(self) -> EqHypergraph:
        return self.base.eq

    @property
    def hyp(self) -> Hypergraph:
        return self.base.eq.hyp

    @property
    def labels(self) -> Tuple[Symbol, ...]:
        return self.base.labels

    @property
    def signature(self) -> Signature:
        return self.base.signature

    @cached_property
    def acyclic(self) -> bool:
        return is_acyclic_labelling(self.hyp)

    @property
    def root_class(self) -> Optional[ElemId]:
        return None if self.root is None else self.eq.q(self.root)

    def class_members(self, c: ElemId) -> List[ElemId]:
        return self.eq.members(c)

    def edges_by_class(self) -> Dict[ElemId, List[ElemId]]:
        """The edges defining each class (via their target node), in id order."""
        table: Dict[ElemId, List[ElemId]] = {c: [] for c in self.eq.classes}
        for e, t in zip(self.hyp.edges, self.hyp.tgt):
            table[self.eq.q(t[0])].append(e)
        return table


def is_acyclic(G: EGraph) -> bool:
    """Node-level acyclicity of the source-to-target dependency relation."""
    return G.acyclic


# -- closure ------------------------------------------------------------------

def congruence_closure(G: EqHypergraph, labels: Optional[Sequence[Symbol]] = None) -> UnionFind:
    """
    Least coarsening of the classes satisfying the closure condition.

    Fixpoint of: group edges by their key under the current union-find,
    merge the target classes inside every group.

    Raises:
        ClosureViolation: if grouped edges have target words of different lengths
    """
    uf = UnionFind(G.classes)
    changed = True
    while changed:
        changed = False
        seen: Dict[Tuple, Tuple[ElemId, ...]] = {}
        for i, e in enumerate(G.edges):
            key = _closure_key(G, labels, i, e, uf.find)
            target = tuple(G.q(v) for v in G.hyp.tgt[i])
            first = seen.setdefault(key, target)
            if len(first) != len(target):
                raise ClosureViolation(f"edge {e} cannot be closed: target words differ in length")
            for a, b in zip(first, target):
                changed |= uf.union(a, b)
    return uf


def rebuild_eq(G: EqHypergraph, labels: Optional[Sequence[Symbol]] = None) -> Tuple[EqHypergraph, FinFn]:
    """
    Restore the closure condition by merging classes.

    Returns:
        The rebuilt object (nodes, edges and incidences untouched) and the
        class map Q → Q'. When nothing merges the input is returned as is
        with the identity; otherwise Q' is renumbered densely.
    """
    uf = congruence_closure(G, labels)
    if len({uf.find(c) for c in G.classes}) == len(G.classes):
        return G, finset.identity(G.classes)
    class_map = finset.quotient(G.classes, uf)
    logger.debug(f"rebuild merged {len(G.classes)} classes into {len(class_map.cod)}")
    rebuilt = EqHypergraph(G.hyp, class_map.cod, finset.compose(class_map, G.q))
    return rebuilt, class_map


def rebuild(G: LabelledEqHypergraph) -> LabelledEqHypergraph:
    """Smallest coarsening of q after which the labelled closure holds."""
    eq, _ = rebuild_eq(G.eq, G.labels)
    return G.with_eq(eq)


def rebuild_with_map(G: LabelledEqHypergraph) -> Tuple[LabelledEqHypergraph, FinFn]:
    eq, class_map = rebuild_eq(G.eq, G.labels)
    return G.with_eq(eq), class_map


def egraph_from_labelled(G: LabelledEqHypergraph, root: Optional[ElemId] = None) -> EGraph:
    return EGraph(rebuild(G), root)


def term_to_egg(t: Term, sig: Signature) -> EGraph:
    """
    The minimally shared e-graph of a term.

    One edge and one node per position (pre-order, so the root is node 0),
    classes obtained by closing the discrete equivalence.
    """
    lab = term_graph_from_term(t, sig)
    base = LabelledEqHypergraph.from_labelling(lab, free_eq(lab.base))
    return egraph_from_labelled(base, root=0)


def maximally_share(G: EGraph) -> EGraph:
    """
    Merge edges with the same label and node-wise equal sources, together
    with their target nodes, until no such pair is left.

    Surviving nodes and edges keep the least id of their group; classes are
    unchanged because merged nodes were already equivalent.

    Raises:
        CyclicGraph: on cyclic input
    """
    if not G.acyclic:
        raise CyclicGraph("maximal sharing needs an acyclic e-graph")
    hyp = G.hyp
    nodes, edges = UnionFind(hyp.nodes), UnionFind(hyp.edges)
    changed = True
    while changed:
        changed = False
        seen: Dict[Tuple, ElemId] = {}
        for e, sym, s, t in zip(hyp.edges, G.labels, hyp.src, hyp.tgt):
            key = (sym, tuple(nodes.find(v) for v in s))
            first = seen.setdefault(key, e)
            if first != e:
                changed |= edges.union(first, e)
                changed |= nodes.union(hyp.target(first)[0], t[0])
    kept_edges = FinSet.of(edges.find(e) for e in hyp.edges)
    kept_nodes = FinSet.of(nodes.find(v) for v in hyp.nodes)
    shared = Hypergraph(
        kept_edges, kept_nodes,
        tuple(tuple(nodes.find(v) for v in hyp.source(e)) for e in kept_edges),
        tuple(tuple(nodes.find(v) for v in hyp.target(e)) for e in kept_edges),
    )
    q = FinFn(kept_nodes, G.eq.classes, tuple(G.eq.q(v) for v in kept_nodes))
    labels = tuple(G.base.label(e) for e in kept_edges)
    logger.debug(f"maximal sharing: {len(hyp.nodes)} -> {len(kept_nodes)} nodes")
    base = LabelledEqHypergraph(EqHypergraph(shared, G.eq.classes, q), labels, G.signature)
    return EGraph(base, None if G.root is None else nodes.find(G.root))
