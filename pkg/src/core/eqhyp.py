"""
Hypergraphs with equivalence.

An EqHypergraph is a hypergraph plus a surjective quotient map q: V → Q
onto its equivalence classes. Morphisms add a class component h_Q with
h_Q ∘ q_G = q_H ∘ h_V, and h_Q is determined by h_V whenever it exists.
Colimits are taken componentwise; limits route the class component through
an image factorization so that the apex quotient stays surjective.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import finset
from .errors import CarrierMismatch, InvalidMorphism, NotATermGraph
from .finset import CospanResult, ElemId, FinFn, FinSet, SpanResult
from .hypergraph import (Hypergraph, HypMorphism, find_morphisms,
                         pullback_hyp, pullback_mediator_hyp, pushout_hyp,
                         pushout_mediator_hyp, validate_morphism)
from .termgraph import (Labelling, Signature, Symbol, induced_labels, is_regular_mono_tg,
                        is_term_graph, labels_commute)
from ..utils.config import get_config
from ..utils.logging import get_logger

logger = get_logger('eqhyp')


@dataclass(frozen=True)
class EqHypergraph:
    """(E, V, Q, s, t, q) with q: V → Q surjective."""

    hyp: Hypergraph
    classes: FinSet
    q: FinFn

    def __post_init__(self):
        if self.q.dom != self.hyp.nodes or self.q.cod != self.classes:
            raise CarrierMismatch("quotient map must go from the nodes to the classes")
        if not finset.is_surjective(self.q):
            raise CarrierMismatch("quotient map must be surjective")

    @classmethod
    def from_partition(cls, hyp: Hypergraph, blocks: Iterable[Iterable[ElemId]]) -> 'EqHypergraph':
        """
        Build from a partition of the nodes; missing nodes get singleton classes.

        Classes are numbered 0..n-1 in order of their least node.
        """
        uf = finset.UnionFind(hyp.nodes)
        for block in blocks:
            block = list(block)
            for v in block[1:]:
                uf.union(block[0], v)
        return cls.from_quotient(hyp, finset.quotient(hyp.nodes, uf))

    @classmethod
    def from_quotient(cls, hyp: Hypergraph, q: FinFn) -> 'EqHypergraph':
        return cls(hyp, q.cod, q)

    @classmethod
    def from_class_map(cls, hyp: Hypergraph, class_of: Mapping[ElemId, ElemId]) -> 'EqHypergraph':
        classes = FinSet.of(class_of[v] for v in hyp.nodes)
        return cls(hyp, classes, FinFn.from_mapping(hyp.nodes, classes, class_of))

    @property
    def edges(self) -> FinSet:
        return self.hyp.edges

    @property
    def nodes(self) -> FinSet:
        return self.hyp.nodes

    def class_of(self, v: ElemId) -> ElemId:
        return self.q(v)

    def members(self, c: ElemId) -> List[ElemId]:
        return self.q.preimage(c)

    def partition(self) -> List[List[ElemId]]:
        return [self.members(c) for c in self.classes]


@dataclass(frozen=True)
class EqMorphism:
    """Components (h_E, h_V, h_Q) between two explicit EqHypergraphs."""

    dom: EqHypergraph
    cod: EqHypergraph
    h_E: FinFn
    h_V: FinFn
    h_Q: FinFn

    def __post_init__(self):
        HypMorphism(self.dom.hyp, self.cod.hyp, self.h_E, self.h_V)
        if self.h_Q.dom != self.dom.classes or self.h_Q.cod != self.cod.classes:
            raise CarrierMismatch("class component does not match the class carriers")

    @property
    def hyp(self) -> HypMorphism:
        return HypMorphism(self.dom.hyp, self.cod.hyp, self.h_E, self.h_V)


def validate_eq_morphism(m: EqMorphism, G: Optional[EqHypergraph] = None,
                         H: Optional[EqHypergraph] = None) -> bool:
    """True iff both incidence squares and the quotient square commute."""
    if (G is not None and G != m.dom) or (H is not None and H != m.cod):
        raise CarrierMismatch("morphism carriers differ from the given objects")
    if not validate_morphism(m.hyp):
        return False
    return finset.compose(m.h_Q, m.dom.q) == finset.compose(m.cod.q, m.h_V)


def complete_classes(G: EqHypergraph, H: EqHypergraph, h_V: FinFn) -> Optional[FinFn]:
    """
    The class component induced by a node map, if one exists.

    Since q_G is surjective there is at most one h_Q with
    h_Q ∘ q_G = q_H ∘ h_V.
    """
    table: Dict[ElemId, ElemId] = {}
    for v in G.nodes:
        c = H.q(h_V(v))
        if table.setdefault(G.q(v), c) != c:
            return None
    return FinFn.from_mapping(G.classes, H.classes, table)


def eq_morphism(G: EqHypergraph, H: EqHypergraph, edge_map: Mapping[ElemId, ElemId],
                node_map: Mapping[ElemId, ElemId],
                class_map: Optional[Mapping[ElemId, ElemId]] = None) -> EqMorphism:
    """
    Build and validate an EqMorphism from dicts; h_Q is completed if omitted.

    Raises:
        InvalidMorphism: if no valid morphism has these components
    """
    h_E = FinFn.from_mapping(G.edges, H.edges, edge_map)
    h_V = FinFn.from_mapping(G.nodes, H.nodes, node_map)
    if class_map is None:
        h_Q = complete_classes(G, H, h_V)
        if h_Q is None:
            raise InvalidMorphism("node map does not respect the equivalence")
    else:
        h_Q = FinFn.from_mapping(G.classes, H.classes, class_map)
    m = EqMorphism(G, H, h_E, h_V, h_Q)
    if not validate_eq_morphism(m):
        raise InvalidMorphism("components do not form a morphism of hypergraphs with equivalence")
    return m


def identity_eq(G: EqHypergraph) -> EqMorphism:
    return EqMorphism(G, G, finset.identity(G.edges), finset.identity(G.nodes), finset.identity(G.classes))


def compose_eq(g: EqMorphism, f: EqMorphism) -> EqMorphism:
    if f.cod != g.dom:
        raise CarrierMismatch("cannot compose: cod(f) differs from dom(g)")
    h = EqMorphism(f.dom, g.cod, finset.compose(g.h_E, f.h_E), finset.compose(g.h_V, f.h_V),
                   finset.compose(g.h_Q, f.h_Q))
    if get_config().debug_checks and not validate_eq_morphism(h):
        raise InvalidMorphism("composite is not a morphism")
    return h


def free_eq(H: Hypergraph) -> EqHypergraph:
    """The discrete equivalence: every node is its own class, with the node's id."""
    return EqHypergraph(H, H.nodes, finset.identity(H.nodes))


def indiscrete_eq(H: Hypergraph) -> EqHypergraph:
    """All nodes in one class (no class at all for the empty graph)."""
    classes = FinSet.range(1 if len(H.nodes) else 0)
    return EqHypergraph(H, classes, finset.constant(H.nodes, classes, 0) if len(H.nodes)
                        else FinFn(H.nodes, classes, ()))


# -- (co)limits -------------------------------------------------------------------

def pushout_eqhyp(f: EqMorphism, g: EqMorphism) -> CospanResult[EqHypergraph, EqMorphism]:
    """
    Pushout of f: G0 → B and g: G0 → C.

    Edges, nodes and classes are pushed out separately; the apex quotient
    is the map induced between the node and class colimits.
    """
    if f.dom != g.dom:
        raise CarrierMismatch("pushout needs morphisms with a common domain")
    B, C = f.cod, g.cod
    hpo = pushout_hyp(f.hyp, g.hyp)
    cpo = finset.pushout(f.h_Q, g.h_Q)
    q: Dict[ElemId, ElemId] = {}
    for obj, v_leg, c_leg in ((B, hpo.leg1.h_V, cpo.leg1), (C, hpo.leg2.h_V, cpo.leg2)):
        for v in obj.nodes:
            c = c_leg(obj.q(v))
            if q.setdefault(v_leg(v), c) != c:
                raise InvalidMorphism("pushout legs do not respect the equivalences")
    q_fn = FinFn.from_mapping(hpo.apex.nodes, cpo.apex, q)
    if get_config().debug_checks and not finset.is_surjective(q_fn):
        raise InvalidMorphism("pushout quotient is not surjective")
    apex = EqHypergraph(hpo.apex, cpo.apex, q_fn)
    logger.debug(f"pushout: {len(apex.edges)} edges, {len(apex.nodes)} nodes, {len(apex.classes)} classes")
    return CospanResult(apex,
                        EqMorphism(B, apex, hpo.leg1.h_E, hpo.leg1.h_V, cpo.leg1),
                        EqMorphism(C, apex, hpo.leg2.h_E, hpo.leg2.h_V, cpo.leg2))


def pullback_eqhyp(f: EqMorphism, g: EqMorphism) -> SpanResult[EqHypergraph, EqMorphism]:
    """
    Pullback of f: B → D and g: C → D.

    The apex classes are not the class pullback L itself but the image of
    the apex nodes in L: q_P is the surjective half of the factorization
    of V_P → L and the legs' class components go through its injective half.
    """
    if f.cod != g.cod:
        raise CarrierMismatch("pullback needs morphisms with a common codomain")
    B, C = f.dom, g.dom
    hpb = pullback_hyp(f.hyp, g.hyp)
    cpb = finset.pullback(f.h_Q, g.h_Q)
    pairs = finset.pair_index(cpb)
    P = hpb.apex
    to_L = FinFn(P.nodes, cpb.apex, tuple(
        pairs[(B.q(hpb.leg1.h_V(v)), C.q(hpb.leg2.h_V(v)))] for v in P.nodes))
    e, m = finset.image_factorize(to_L)
    apex = EqHypergraph(P, e.cod, e)
    return SpanResult(apex,
                      EqMorphism(apex, B, hpb.leg1.h_E, hpb.leg1.h_V, finset.compose(cpb.leg1, m)),
                      EqMorphism(apex, C, hpb.leg2.h_E, hpb.leg2.h_V, finset.compose(cpb.leg2, m)))


def kernel_pair_eq(m: EqMorphism) -> SpanResult[EqHypergraph, EqMorphism]:
    return pullback_eqhyp(m, m)


def pushout_mediator_eq(po: CospanResult, u: EqMorphism, v: EqMorphism) -> Optional[EqMorphism]:
    """Arrow out of a pushout apex induced by the cocone (u, v), or None."""
    hyp_po = CospanResult(po.apex.hyp, po.leg1.hyp, po.leg2.hyp)
    phi = pushout_mediator_hyp(hyp_po, u.hyp, v.hyp)
    phi_Q = finset.pushout_mediator(CospanResult(po.apex.classes, po.leg1.h_Q, po.leg2.h_Q), u.h_Q, v.h_Q)
    if phi is None or phi_Q is None:
        return None
    result = EqMorphism(po.apex, u.cod, phi.h_E, phi.h_V, phi_Q)
    return result if validate_eq_morphism(result) else None


def pullback_mediator_eq(pb: SpanResult, u: EqMorphism, v: EqMorphism) -> Optional[EqMorphism]:
    """Arrow into a pullback apex induced by the cone (u, v), or None."""
    hyp_pb = SpanResult(pb.apex.hyp, pb.leg1.hyp, pb.leg2.hyp)
    phi = pullback_mediator_hyp(hyp_pb, u.hyp, v.hyp)
    if phi is None:
        return None
    phi_Q = complete_classes(u.dom, pb.apex, phi.h_V)
    if phi_Q is None:
        return None
    result = EqMorphism(u.dom, pb.apex, phi.h_E, phi.h_V, phi_Q)
    return result if validate_eq_morphism(result) else None


# -- mono classes ------------------------------------------------------------------

def _require_valid(m: EqMorphism, what: str) -> None:
    if not validate_eq_morphism(m):
        raise InvalidMorphism(f"{what} needs a valid morphism")


def is_mono_eq(m: EqMorphism) -> bool:
    """Monos are the morphisms whose edge and node components are injective."""
    _require_valid(m, 'is_mono_eq')
    return finset.is_injective(m.h_E) and finset.is_injective(m.h_V)


def is_regular_mono_eq(m: EqMorphism) -> bool:
    """Regular monos are additionally injective on classes."""
    return is_mono_eq(m) and finset.is_injective(m.h_Q)


def is_class_injective(m: EqMorphism) -> bool:
    _require_valid(m, 'is_class_injective')
    return finset.is_injective(m.h_Q)


def is_pb_mono(m: EqMorphism) -> bool:
    """
    Regular monos whose quotient square is a pullback.

    Equivalently, every class hit by m is hit in full: a node of the
    codomain lies in the image as soon as its class does.
    """
    if not is_regular_mono_eq(m):
        return False
    return finset.is_pullback_square(m.h_V, m.dom.q, m.cod.q, m.h_Q)


# -- labelled objects -----------------------------------------------------------------

@dataclass(frozen=True)
class LabelledEqHypergraph:
    """A hypergraph with equivalence whose underlying hypergraph is labelled over Σ."""

    eq: EqHypergraph
    labels: Tuple[Symbol, ...]
    signature: Signature

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        Labelling(self.eq.hyp, self.labels, self.signature)

    @classmethod
    def of(cls, eq: EqHypergraph, labels: Mapping[ElemId, Symbol], signature: Signature) -> 'LabelledEqHypergraph':
        return cls(eq, tuple(labels[e] for e in eq.edges), signature)

    @classmethod
    def from_labelling(cls, lab: Labelling, eq: Optional[EqHypergraph] = None) -> 'LabelledEqHypergraph':
        """Attach an equivalence (the discrete one by default) to a labelling."""
        eq = eq if eq is not None else free_eq(lab.base)
        if eq.hyp != lab.base:
            raise CarrierMismatch("equivalence is over a different hypergraph")
        return cls(eq, lab.labels, lab.signature)

    @property
    def labelling(self) -> Labelling:
        return Labelling(self.eq.hyp, self.labels, self.signature)

    @property
    def hyp(self) -> Hypergraph:
        return self.eq.hyp

    def label(self, e: ElemId) -> Symbol:
        return self.labels[self.eq.edges.index(e)]

    def label_fn(self) -> Dict[ElemId, Symbol]:
        return dict(zip(self.eq.edges.elems, self.labels))

    def with_eq(self, eq: EqHypergraph) -> 'LabelledEqHypergraph':
        return LabelledEqHypergraph(eq, self.labels, self.signature)


def is_T_morphism(m: EqMorphism, G: LabelledEqHypergraph, H: LabelledEqHypergraph) -> bool:
    """
    The class used for gluing term graphs with equivalence: Pb monos whose
    underlying morphism is a regular mono of term graphs.

    Raises:
        NotATermGraph: if an endpoint is not a term graph
    """
    if not (is_term_graph(G.labelling) and is_term_graph(H.labelling)):
        raise NotATermGraph("T-morphisms are defined between term graphs with equivalence")
    if m.dom != G.eq or m.cod != H.eq or not labels_commute(m.hyp, G.labelling, H.labelling):
        raise InvalidMorphism("morphism is not label preserving")
    if not is_pb_mono(m):
        return False
    return is_regular_mono_tg(m.hyp, G.labelling, H.labelling)


def pushout_labelled_eq(f: EqMorphism, g: EqMorphism, B: LabelledEqHypergraph,
                        C: LabelledEqHypergraph) -> CospanResult[LabelledEqHypergraph, EqMorphism]:
    """Pushout of labelled objects: the unlabelled pushout with induced labels."""
    po = pushout_eqhyp(f, g)
    labels = induced_labels(po, B.labelling, C.labelling)
    return CospanResult(LabelledEqHypergraph(po.apex, labels, B.signature), po.leg1, po.leg2)


# -- sub-objects, equalizers and search ---------------------------------------------------

def subobject(G: EqHypergraph, nodes: Iterable[ElemId],
              edges: Optional[Iterable[ElemId]] = None) -> EqMorphism:
    """
    The regular sub-object on a node selection, ids kept.

    Without an explicit edge selection every edge whose incidences lie in
    the selection is kept. Classes are those hit by the selected nodes.

    Raises:
        CarrierMismatch: if a selected edge has an incidence outside the nodes
    """
    node_set = FinSet.of(nodes)
    for v in node_set:
        G.nodes.index(v)
    if edges is None:
        edge_set = FinSet(tuple(e for e in G.edges if all(v in node_set for v in G.hyp.incident_nodes(e))))
    else:
        edge_set = FinSet.of(edges)
        for e in edge_set:
            if not all(v in node_set for v in G.hyp.incident_nodes(e)):
                raise CarrierMismatch(f"edge {e} has an incidence outside the selected nodes")
    hyp = Hypergraph(edge_set, node_set,
                     tuple(G.hyp.source(e) for e in edge_set),
                     tuple(G.hyp.target(e) for e in edge_set))
    classes = FinSet.of(G.q(v) for v in node_set)
    sub = EqHypergraph(hyp, classes, FinFn(node_set, classes, tuple(G.q(v) for v in node_set)))
    return EqMorphism(sub, G, finset.inclusion(edge_set, G.edges), finset.inclusion(node_set, G.nodes),
                      finset.inclusion(classes, G.classes))


def equalizer_eq(f: EqMorphism, g: EqMorphism) -> EqMorphism:
    """Inclusion of the largest sub-object on which f and g agree."""
    if f.dom != g.dom or f.cod != g.cod:
        raise CarrierMismatch("equalizer needs parallel morphisms")
    nodes = [v for v in f.dom.nodes if f.h_V(v) == g.h_V(v)]
    edges = [e for e in f.dom.edges if f.h_E(e) == g.h_E(e)]
    return subobject(f.dom, nodes, edges)


def find_eq_morphisms(G: EqHypergraph, H: EqHypergraph,
                      labels_g: Optional[Sequence[Symbol]] = None,
                      labels_h: Optional[Sequence[Symbol]] = None,
                      fixed_edges: Optional[Mapping[ElemId, ElemId]] = None,
                      fixed_nodes: Optional[Mapping[ElemId, ElemId]] = None,
                      injective: bool = False) -> Iterator[EqMorphism]:
    """
    Enumerate the morphisms G → H, label preserving when labels are given.

    Node assignments are pruned as soon as two nodes of one class would be
    sent to different classes, then h_Q is completed.
    """
    edge_ok = None
    if labels_g is not None and labels_h is not None:
        lg = dict(zip(G.edges.elems, labels_g))
        lh = dict(zip(H.edges.elems, labels_h))
        edge_ok = lambda e, d: lg[e] == lh[d]
    qg, qh = G.q.as_dict(), H.q.as_dict()

    def node_ok(node_map: Dict[ElemId, ElemId], v: ElemId, w: ElemId) -> bool:
        cv, cw = qg[v], qh[w]
        return all(qh[w2] == cw for v2, w2 in node_map.items() if qg[v2] == cv)

    for edge_map, node_map in find_morphisms(G.hyp, H.hyp, edge_ok=edge_ok, node_ok=node_ok,
                                             fixed_edges=fixed_edges, fixed_nodes=fixed_nodes,
                                             injective=injective):
        h_V = FinFn.from_mapping(G.nodes, H.nodes, node_map)
        h_Q = complete_classes(G, H, h_V)
        if h_Q is None:
            continue
        yield EqMorphism(G, H, FinFn.from_mapping(G.edges, H.edges, edge_map), h_V, h_Q)


def is_iso_eq(m: EqMorphism) -> bool:
    return (validate_eq_morphism(m) and finset.is_bijective(m.h_E)
            and finset.is_bijective(m.h_V) and finset.is_bijective(m.h_Q))
