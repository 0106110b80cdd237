"""
The category Hyp of hypergraphs.

A hypergraph is an edge set, a node set and two word-valued incidence
tables (sources and targets). Morphisms are pairs (h_E, h_V) of finite
functions making both incidence squares commute; limits and colimits are
computed componentwise from the finite-set kernel, the incidences of the
apex being induced by the universal property.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from . import finset
from .errors import CarrierMismatch, InvalidMorphism
from .finset import CospanResult, ElemId, FinFn, FinSet, SpanResult, Word
from ..utils.config import get_config
from ..utils.logging import get_logger

logger = get_logger('hypergraph')


@dataclass(frozen=True)
class Hypergraph:
    """
    (E, V, s, t) with ``src[i]``/``tgt[i]`` the words of ``edges.elems[i]``.
    """

    edges: FinSet
    nodes: FinSet
    src: Tuple[Word, ...] = ()
    tgt: Tuple[Word, ...] = ()

    def __post_init__(self):
        src = tuple(tuple(w) for w in self.src)
        tgt = tuple(tuple(w) for w in self.tgt)
        if len(src) != len(self.edges) or len(tgt) != len(self.edges):
            raise CarrierMismatch("source and target tables must be defined on exactly the edges")
        for word in src + tgt:
            for v in word:
                if v not in self.nodes:
                    raise CarrierMismatch(f"incidence {v} is not a node")
        object.__setattr__(self, 'src', src)
        object.__setattr__(self, 'tgt', tgt)

    @classmethod
    def build(cls, nodes: Iterable[ElemId],
              edges: Mapping[ElemId, Tuple[Iterable[ElemId], Iterable[ElemId]]]) -> 'Hypergraph':
        """Build from ``{edge: (src word, tgt word)}``."""
        edge_set = FinSet.of(edges)
        return cls(edge_set, FinSet.of(nodes),
                   tuple(tuple(edges[e][0]) for e in edge_set),
                   tuple(tuple(edges[e][1]) for e in edge_set))

    def source(self, e: ElemId) -> Word:
        return self.src[self.edges.index(e)]

    def target(self, e: ElemId) -> Word:
        return self.tgt[self.edges.index(e)]

    def src_fn(self) -> Dict[ElemId, Word]:
        return dict(zip(self.edges.elems, self.src))

    def tgt_fn(self) -> Dict[ElemId, Word]:
        return dict(zip(self.edges.elems, self.tgt))

    def incident_nodes(self, e: ElemId) -> Tuple[ElemId, ...]:
        return self.source(e) + self.target(e)


EMPTY_GRAPH = Hypergraph(finset.EMPTY, finset.EMPTY)


@dataclass(frozen=True)
class HypMorphism:
    """A pair (h_E, h_V) between two explicit hypergraphs."""

    dom: Hypergraph
    cod: Hypergraph
    h_E: FinFn
    h_V: FinFn

    def __post_init__(self):
        if self.h_E.dom != self.dom.edges or self.h_E.cod != self.cod.edges:
            raise CarrierMismatch("edge component does not match the edge carriers")
        if self.h_V.dom != self.dom.nodes or self.h_V.cod != self.cod.nodes:
            raise CarrierMismatch("node component does not match the node carriers")


def hyp_morphism(G: Hypergraph, H: Hypergraph, edge_map: Mapping[ElemId, ElemId],
                 node_map: Mapping[ElemId, ElemId], check: bool = True) -> HypMorphism:
    """Build a morphism from two dicts, raising InvalidMorphism if a square fails."""
    m = HypMorphism(G, H, FinFn.from_mapping(G.edges, H.edges, edge_map),
                    FinFn.from_mapping(G.nodes, H.nodes, node_map))
    if check and not validate_morphism(m):
        raise InvalidMorphism("the source/target squares do not commute")
    return m


def validate_morphism(m: HypMorphism, G: Optional[Hypergraph] = None,
                      H: Optional[Hypergraph] = None) -> bool:
    """
    Check both naturality squares: star(h_V) ∘ s_G = s_H ∘ h_E, same for t.

    Args:
        m: Candidate morphism
        G: Expected domain (defaults to m.dom)
        H: Expected codomain (defaults to m.cod)

    Returns:
        True iff both squares commute

    Raises:
        CarrierMismatch: if G or H are not the carriers of m
    """
    if (G is not None and G != m.dom) or (H is not None and H != m.cod):
        raise CarrierMismatch("morphism carriers differ from the given hypergraphs")
    sv = finset.star(m.h_V)
    for e, s, t in zip(m.dom.edges, m.dom.src, m.dom.tgt):
        image = m.h_E(e)
        if sv(s) != m.cod.source(image) or sv(t) != m.cod.target(image):
            return False
    return True


def identity_hyp(G: Hypergraph) -> HypMorphism:
    return HypMorphism(G, G, finset.identity(G.edges), finset.identity(G.nodes))


def compose_hyp(g: HypMorphism, f: HypMorphism) -> HypMorphism:
    """g ∘ f; re-validated only when debug checks are enabled."""
    if f.cod != g.dom:
        raise CarrierMismatch("cannot compose hypergraph morphisms: cod(f) differs from dom(g)")
    h = HypMorphism(f.dom, g.cod, finset.compose(g.h_E, f.h_E), finset.compose(g.h_V, f.h_V))
    if get_config().debug_checks and not validate_morphism(h):
        raise InvalidMorphism("composite of hypergraph morphisms is not a morphism")
    return h


def is_mono_hyp(m: HypMorphism) -> bool:
    """Monos of Hyp are exactly the morphisms with injective components."""
    if not validate_morphism(m):
        raise InvalidMorphism("is_mono_hyp needs a valid morphism")
    return finset.is_injective(m.h_E) and finset.is_injective(m.h_V)


def is_iso_hyp(m: HypMorphism) -> bool:
    return validate_morphism(m) and finset.is_bijective(m.h_E) and finset.is_bijective(m.h_V)


def discrete(X: FinSet) -> Hypergraph:
    """Δ(X): X as set of nodes, no hyperedges."""
    return Hypergraph(finset.EMPTY, X)


def discrete_morphism(X: FinSet, H: Hypergraph, node_fn: FinFn) -> HypMorphism:
    """The transpose Δ(X) → H of a node function X → V_H."""
    return HypMorphism(discrete(X), H, FinFn(finset.EMPTY, H.edges, ()), node_fn)


# -- colimits -------------------------------------------------------------------

def _induced_incidences(edge_po: CospanResult, node_po: CospanResult,
                        B: Hypergraph, C: Hypergraph) -> Tuple[Tuple[Word, ...], Tuple[Word, ...]]:
    induced: Dict[ElemId, Tuple[Word, Word]] = {}
    for graph, e_leg, v_leg in ((B, edge_po.leg1, node_po.leg1), (C, edge_po.leg2, node_po.leg2)):
        sv = finset.star(v_leg)
        for e, s, t in zip(graph.edges, graph.src, graph.tgt):
            words = (sv(s), sv(t))
            if induced.setdefault(e_leg(e), words) != words:
                raise InvalidMorphism("pushout legs are not hypergraph morphisms")
    apex_edges = edge_po.apex
    return (tuple(induced[e][0] for e in apex_edges), tuple(induced[e][1] for e in apex_edges))


def pushout_hyp(f: HypMorphism, g: HypMorphism) -> CospanResult[Hypergraph, HypMorphism]:
    """
    Pushout of f: G0 → B and g: G0 → C.

    Edge and node components are finite-set pushouts; the apex incidences
    are induced by the colimit property, so they are well defined exactly
    when f and g are morphisms.
    """
    if f.dom != g.dom:
        raise CarrierMismatch("pushout needs morphisms with a common domain")
    edge_po = finset.pushout(f.h_E, g.h_E)
    node_po = finset.pushout(f.h_V, g.h_V)
    src, tgt = _induced_incidences(edge_po, node_po, f.cod, g.cod)
    apex = Hypergraph(edge_po.apex, node_po.apex, src, tgt)
    logger.debug(f"pushout: {len(apex.edges)} edges, {len(apex.nodes)} nodes")
    return CospanResult(apex,
                        HypMorphism(f.cod, apex, edge_po.leg1, node_po.leg1),
                        HypMorphism(g.cod, apex, edge_po.leg2, node_po.leg2))


def coproduct_hyp(B: Hypergraph, C: Hypergraph) -> CospanResult[Hypergraph, HypMorphism]:
    empty_to = lambda X: HypMorphism(EMPTY_GRAPH, X, FinFn(finset.EMPTY, X.edges, ()),
                                     FinFn(finset.EMPTY, X.nodes, ()))
    return pushout_hyp(empty_to(B), empty_to(C))


# -- limits -----------------------------------------------------------------------

def pullback_hyp(f: HypMorphism, g: HypMorphism) -> SpanResult[Hypergraph, HypMorphism]:
    """
    Pullback of f: B → D and g: C → D.

    Componentwise finite-set pullbacks; the source word of an apex edge
    (b, c) pairs up the source words of b and c letter by letter, which is
    legal because the Kleene star preserves pullbacks.
    """
    if f.cod != g.cod:
        raise CarrierMismatch("pullback needs morphisms with a common codomain")
    B, C = f.dom, g.dom
    edge_pb = finset.pullback(f.h_E, g.h_E)
    node_pb = finset.pullback(f.h_V, g.h_V)
    pairs = finset.pair_index(node_pb)

    def zip_word(w1: Word, w2: Word) -> Word:
        if len(w1) != len(w2):
            raise InvalidMorphism("pullback legs are not hypergraph morphisms")
        try:
            return tuple(pairs[(x, y)] for x, y in zip(w1, w2))
        except KeyError:
            raise InvalidMorphism("pullback legs are not hypergraph morphisms") from None

    src, tgt = [], []
    for p in edge_pb.apex:
        b, c = edge_pb.leg1(p), edge_pb.leg2(p)
        src.append(zip_word(B.source(b), C.source(c)))
        tgt.append(zip_word(B.target(b), C.target(c)))
    apex = Hypergraph(edge_pb.apex, node_pb.apex, tuple(src), tuple(tgt))
    return SpanResult(apex,
                      HypMorphism(apex, B, edge_pb.leg1, node_pb.leg1),
                      HypMorphism(apex, C, edge_pb.leg2, node_pb.leg2))


def kernel_pair_hyp(m: HypMorphism) -> SpanResult[Hypergraph, HypMorphism]:
    return pullback_hyp(m, m)


# -- universal arrows ------------------------------------------------------------------

def pushout_mediator_hyp(po: CospanResult, u: HypMorphism, v: HypMorphism) -> Optional[HypMorphism]:
    """The arrow out of a pushout induced by a cocone (u, v), or None."""
    phi_E = finset.pushout_mediator(CospanResult(po.apex.edges, po.leg1.h_E, po.leg2.h_E), u.h_E, v.h_E)
    phi_V = finset.pushout_mediator(CospanResult(po.apex.nodes, po.leg1.h_V, po.leg2.h_V), u.h_V, v.h_V)
    if phi_E is None or phi_V is None:
        return None
    phi = HypMorphism(po.apex, u.cod, phi_E, phi_V)
    return phi if validate_morphism(phi) else None


def pullback_mediator_hyp(pb: SpanResult, u: HypMorphism, v: HypMorphism) -> Optional[HypMorphism]:
    """The arrow into a pullback induced by a cone (u, v), or None."""
    phi_E = finset.pullback_mediator(SpanResult(pb.apex.edges, pb.leg1.h_E, pb.leg2.h_E), u.h_E, v.h_E)
    phi_V = finset.pullback_mediator(SpanResult(pb.apex.nodes, pb.leg1.h_V, pb.leg2.h_V), u.h_V, v.h_V)
    if phi_E is None or phi_V is None:
        return None
    phi = HypMorphism(u.dom, pb.apex, phi_E, phi_V)
    return phi if validate_morphism(phi) else None


# -- morphism search ---------------------------------------------------------------------

EdgeFilter = Callable[[ElemId, ElemId], bool]
NodeFilter = Callable[[Dict[ElemId, ElemId], ElemId, ElemId], bool]


def find_morphisms(G: Hypergraph, H: Hypergraph,
                   edge_ok: Optional[EdgeFilter] = None,
                   node_ok: Optional[NodeFilter] = None,
                   fixed_edges: Optional[Mapping[ElemId, ElemId]] = None,
                   fixed_nodes: Optional[Mapping[ElemId, ElemId]] = None,
                   injective: bool = False) -> Iterator[Tuple[Dict[ElemId, ElemId], Dict[ElemId, ElemId]]]:
    """
    Enumerate morphisms G → H as (edge map, node map) pairs.

    Backtracking assigns G's edges in id order (candidates filtered by
    ``edge_ok`` and by word lengths), fixing nodes through the incidence
    words, then assigns the remaining nodes. Results come out in
    lexicographic order of the assignments.

    Args:
        G: Domain
        H: Codomain
        edge_ok: Extra predicate on (edge of G, edge of H), e.g. equal labels
        node_ok: Extra predicate on (current node map, node of G, node of H)
        fixed_edges: Edge assignments every result must extend
        fixed_nodes: Node assignments every result must extend
        injective: Only enumerate componentwise injective morphisms

    Yields:
        (edge map, node map) dictionaries
    """
    fixed_edges = dict(fixed_edges or {})
    fixed_nodes = dict(fixed_nodes or {})
    edge_list = list(G.edges)
    free_nodes = [v for v in G.nodes]
    h_edges_by_shape: Dict[Tuple[int, int], List[ElemId]] = {}
    for e, s, t in zip(H.edges, H.src, H.tgt):
        h_edges_by_shape.setdefault((len(s), len(t)), []).append(e)

    def bind(node_map: Dict[ElemId, ElemId], used: set, word_g: Word, word_h: Word) -> Optional[List[ElemId]]:
        added: List[ElemId] = []
        for v, w in zip(word_g, word_h):
            if v in node_map:
                if node_map[v] != w:
                    break
                continue
            if injective and w in used:
                break
            if node_ok is not None and not node_ok(node_map, v, w):
                break
            node_map[v] = w
            used.add(w)
            added.append(v)
        else:
            return added
        for v in added:
            used.discard(node_map.pop(v))
        return None

    def assign_nodes(i: int, edge_map, node_map, used) -> Iterator:
        while i < len(free_nodes) and free_nodes[i] in node_map:
            i += 1
        if i == len(free_nodes):
            yield dict(edge_map), dict(node_map)
            return
        v = free_nodes[i]
        for w in H.nodes:
            if injective and w in used:
                continue
            if node_ok is not None and not node_ok(node_map, v, w):
                continue
            node_map[v] = w
            used.add(w)
            yield from assign_nodes(i + 1, edge_map, node_map, used)
            used.discard(w)
            del node_map[v]

    def assign_edges(i: int, edge_map, node_map, used_e, used_v) -> Iterator:
        if i == len(edge_list):
            yield from assign_nodes(0, edge_map, node_map, used_v)
            return
        e = edge_list[i]
        s, t = G.source(e), G.target(e)
        candidates = h_edges_by_shape.get((len(s), len(t)), [])
        if e in fixed_edges:
            candidates = [fixed_edges[e]] if fixed_edges[e] in candidates else []
        for d in candidates:
            if injective and d in used_e:
                continue
            if edge_ok is not None and not edge_ok(e, d):
                continue
            added = bind(node_map, used_v, s + t, H.source(d) + H.target(d))
            if added is None:
                continue
            edge_map[e] = d
            used_e.add(d)
            yield from assign_edges(i + 1, edge_map, node_map, used_e, used_v)
            used_e.discard(d)
            del edge_map[e]
            for v in added:
                used_v.discard(node_map.pop(v))

    node_map: Dict[ElemId, ElemId] = {}
    used_v: set = set()
    for v, w in sorted(fixed_nodes.items()):
        if w not in H.nodes or (injective and w in used_v):
            return
        if node_ok is not None and not node_ok(node_map, v, w):
            return
        node_map[v] = w
        used_v.add(w)
    yield from assign_edges(0, {}, node_map, set(), used_v)


def morphisms_between(G: Hypergraph, H: Hypergraph, **kwargs) -> List[HypMorphism]:
    return [HypMorphism(G, H, FinFn.from_mapping(G.edges, H.edges, em), FinFn.from_mapping(G.nodes, H.nodes, nm))
            for em, nm in find_morphisms(G, H, **kwargs)]


def example_graph() -> Hypergraph:
    """
    The four-edge example hypergraph, nodes v1..v4 as 1..4 and h1..h4 as 1..4.

    The incidences are decoded from a figure: t(hi) = vi,
    s(h3) = (v1, v2), s(h4) = (v3, v2), h1 and h2 have no sources.
    """
    return Hypergraph.build(
        nodes=[1, 2, 3, 4],
        edges={
            1: ((), (1,)),
            2: ((), (2,)),
            3: ((1, 2), (3,)),
            4: ((3, 2), (4,)),
        },
    )
