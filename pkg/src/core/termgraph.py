"""
Signatures, labelled hypergraphs and term graphs.

A labelled hypergraph over a signature Σ is stored as a per-edge symbol
table rather than as a morphism into the labelling graph G^Σ; the graph
itself is materialized by ``sigma_graph`` for checks only.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Tuple

import networkx as nx

from . import finset
from .errors import InvalidMorphism, LabelError, NotATermGraph, ParseError, SignatureMismatch
from .finset import CospanResult, ElemId, FinFn, FinSet
from .hypergraph import (Hypergraph, HypMorphism, find_morphisms, is_mono_hyp,
                         pushout_hyp)

Symbol = str


@dataclass(frozen=True)
class Signature:
    """Operation symbols with their arities; iteration is in symbol order."""

    arities: Tuple[Tuple[Symbol, int], ...] = ()

    def __post_init__(self):
        table = dict(self.arities)
        if len(table) != len(self.arities):
            raise LabelError("duplicate operation symbol in signature")
        for sym, n in table.items():
            if not isinstance(n, int) or n < 0:
                raise LabelError(f"arity of {sym!r} must be a natural number")
        object.__setattr__(self, 'arities', tuple(sorted(table.items())))

    @classmethod
    def of(cls, arities: Mapping[Symbol, int]) -> 'Signature':
        return cls(tuple(arities.items()))

    @classmethod
    def from_text(cls, text: str) -> 'Signature':
        """
        Parse a signature file: one ``op NAME ARITY`` per line.

        Blank lines and lines starting with ``;`` or ``#`` are ignored.

        Raises:
            ParseError: on a malformed line
        """
        table: Dict[Symbol, int] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line[0] in ';#':
                continue
            parts = line.split()
            column = raw.index(line[0]) + 1
            if len(parts) != 3 or parts[0] != 'op':
                raise ParseError("expected 'op NAME ARITY'", lineno, column)
            if not parts[2].isdigit():
                raise ParseError(f"arity of {parts[1]!r} is not a natural number", lineno, column)
            if parts[1] in table:
                raise ParseError(f"operation {parts[1]!r} declared twice", lineno, column)
            table[parts[1]] = int(parts[2])
        return cls.of(table)

    def to_text(self) -> str:
        return ''.join(f"op {sym} {n}\n" for sym, n in self.arities)

    @property
    def ops(self) -> Tuple[Symbol, ...]:
        return tuple(sym for sym, _ in self.arities)

    def arity(self, symbol: Symbol) -> int:
        for sym, n in self.arities:
            if sym == symbol:
                return n
        raise LabelError(f"unknown operation symbol {symbol!r}")

    def __contains__(self, symbol: object) -> bool:
        return any(sym == symbol for sym, _ in self.arities)


def sigma_graph(sig: Signature) -> Tuple[Hypergraph, Dict[Symbol, ElemId]]:
    """
    G^Σ: a single node 0 and one edge per symbol, numbered in symbol order.

    Returns:
        The graph and the symbol → edge id table
    """
    ids = {sym: i for i, sym in enumerate(sig.ops)}
    graph = Hypergraph.build(
        nodes=[0],
        edges={ids[sym]: ((0,) * n, (0,)) for sym, n in sig.arities},
    )
    return graph, ids


def labelling_morphism(lab: 'Labelling') -> HypMorphism:
    """The labelling as a morphism into G^Σ."""
    graph, ids = sigma_graph(lab.signature)
    return HypMorphism(
        lab.base, graph,
        FinFn(lab.base.edges, graph.edges, tuple(ids[s] for s in lab.labels)),
        finset.constant(lab.base.nodes, graph.nodes, 0),
    )


@dataclass(frozen=True)
class Labelling:
    """
    A hypergraph together with an arity-respecting symbol per edge.

    Every edge has exactly one target node and as many sources as the arity
    of its label.
    """

    base: Hypergraph
    labels: Tuple[Symbol, ...]
    signature: Signature

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(labels) != len(self.base.edges):
            raise LabelError("labels must be given for exactly the edges")
        for e, sym, s, t in zip(self.base.edges, labels, self.base.src, self.base.tgt):
            if len(t) != 1:
                raise LabelError(f"edge {e} has {len(t)} target nodes, labelled edges need exactly one")
            if len(s) != self.signature.arity(sym):
                raise LabelError(f"edge {e} labelled {sym!r} has {len(s)} sources, "
                                 f"arity is {self.signature.arity(sym)}")
        object.__setattr__(self, 'labels', labels)

    @classmethod
    def of(cls, base: Hypergraph, labels: Mapping[ElemId, Symbol], signature: Signature) -> 'Labelling':
        return cls(base, tuple(labels[e] for e in base.edges), signature)

    def label(self, e: ElemId) -> Symbol:
        return self.labels[self.base.edges.index(e)]

    def label_fn(self) -> Dict[ElemId, Symbol]:
        return dict(zip(self.base.edges.elems, self.labels))

    def target_node(self, e: ElemId) -> ElemId:
        return self.base.target(e)[0]


def labels_commute(m: HypMorphism, G: Labelling, H: Labelling) -> bool:
    """Does m preserve edge labels?"""
    return all(G.label(e) == H.label(m.h_E(e)) for e in G.base.edges)


@dataclass(frozen=True)
class TermGraphCert:
    """A labelling whose corestricted target map ``tau`` is injective."""

    labelled: Labelling
    tau: FinFn

    @classmethod
    def of(cls, lab: Labelling) -> 'TermGraphCert':
        """
        Certify a labelling as a term graph.

        Raises:
            NotATermGraph: if two edges share their target node
        """
        tau = FinFn(lab.base.edges, lab.base.nodes, tuple(t[0] for t in lab.base.tgt))
        if not finset.is_injective(tau):
            raise NotATermGraph("two edges share a target node")
        return cls(lab, tau)


def is_term_graph(lab: Labelling) -> bool:
    targets = [t[0] for t in lab.base.tgt]
    return len(set(targets)) == len(targets)


def input_nodes(graph) -> FinSet:
    """Nodes that are no edge's target. Accepts a TermGraphCert, Labelling or Hypergraph."""
    if isinstance(graph, TermGraphCert):
        graph = graph.labelled
    if isinstance(graph, Labelling):
        graph = graph.base
    targeted = {v for t in graph.tgt for v in t}
    return FinSet(tuple(v for v in graph.nodes if v not in targeted))


def is_regular_mono_tg(m: HypMorphism, G: Labelling, H: Labelling) -> bool:
    """
    Regular monos between term graphs are the monos preserving input nodes.

    Raises:
        NotATermGraph: if an endpoint is not a term graph
        InvalidMorphism: if m is not a label-preserving mono
    """
    if not (is_term_graph(G) and is_term_graph(H)):
        raise NotATermGraph("is_regular_mono_tg needs term graphs at both ends")
    if m.dom != G.base or m.cod != H.base or not labels_commute(m, G, H):
        raise InvalidMorphism("morphism is not label preserving")
    if not is_mono_hyp(m):
        raise InvalidMorphism("is_regular_mono_tg needs a mono")
    inputs = input_nodes(H)
    return all(m.h_V(v) in inputs for v in input_nodes(G))


def induced_labels(po: CospanResult, B: Labelling, C: Labelling) -> Tuple[Symbol, ...]:
    """Labels of a pushout apex, induced by those of the two codomains."""
    if B.signature != C.signature:
        raise SignatureMismatch("labelled pushout across different signatures")
    induced: Dict[ElemId, Symbol] = {}
    for lab, leg in ((B, po.leg1), (C, po.leg2)):
        for e, sym in zip(lab.base.edges, lab.labels):
            if induced.setdefault(leg.h_E(e), sym) != sym:
                raise LabelError(f"label clash in pushout: {induced[leg.h_E(e)]!r} vs {sym!r}")
    return tuple(induced[e] for e in po.apex.edges)


def pushout_labelled(f: HypMorphism, g: HypMorphism, B: Labelling,
                     C: Labelling) -> CospanResult[Labelling, HypMorphism]:
    """
    Pushout in the slice over G^Σ: the base pushout with induced labels.

    The labels of the common domain are read off B through f; a clash with
    C's labels through g raises LabelError.
    """
    po = pushout_hyp(f, g)
    labels = induced_labels(po, B, C)
    apex = Labelling(po.apex, labels, B.signature)
    return CospanResult(apex, po.leg1, po.leg2)


def find_labelled_morphisms(G: Labelling, H: Labelling, **kwargs) -> Iterator[Tuple[Dict, Dict]]:
    """Label-preserving morphisms G → H, in the order of ``find_morphisms``."""
    labels_g, labels_h = G.label_fn(), H.label_fn()
    extra = kwargs.pop('edge_ok', None)

    def edge_ok(e: ElemId, d: ElemId) -> bool:
        return labels_g[e] == labels_h[d] and (extra is None or extra(e, d))

    return find_morphisms(G.base, H.base, edge_ok=edge_ok, **kwargs)


def dependency_graph(graph: Hypergraph) -> nx.DiGraph:
    """Directed node graph with an arc from every source node of an edge to its targets."""
    dg = nx.DiGraph()
    dg.add_nodes_from(graph.nodes)
    for s, t in zip(graph.src, graph.tgt):
        dg.add_edges_from((u, v) for u in s for v in t)
    return dg


def is_acyclic_labelling(graph) -> bool:
    """Acyclicity is a separate predicate, not part of being a term graph."""
    if isinstance(graph, Labelling):
        graph = graph.base
    return nx.is_directed_acyclic_graph(dependency_graph(graph))


# -- terms ----------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """A finite tree of symbols, printed as an s-expression."""

    symbol: Symbol
    args: Tuple['Term', ...] = field(default=())

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"({self.symbol} {' '.join(str(a) for a in self.args)})"

    def size(self) -> int:
        return 1 + sum(a.size() for a in self.args)

    def depth(self) -> int:
        return 1 + max((a.depth() for a in self.args), default=0)

    def positions(self) -> Iterator['Term']:
        """Subterm occurrences in pre-order."""
        yield self
        for a in self.args:
            yield from a.positions()

    def symbols(self) -> List[Symbol]:
        return [t.symbol for t in self.positions()]

    def check(self, sig: Signature) -> 'Term':
        """
        Check every symbol against the signature.

        Raises:
            LabelError: unknown symbol or wrong number of arguments
        """
        for t in self.positions():
            n = sig.arity(t.symbol)
            if len(t.args) != n:
                raise LabelError(f"{t.symbol!r} expects {n} arguments, got {len(t.args)}")
        return self


def term(symbol: Symbol, *args: 'Term') -> Term:
    return Term(symbol, tuple(args))


def term_graph_from_term(t: Term, sig: Signature) -> Labelling:
    """
    The tree term graph of t: one edge and one target node per position.

    Positions are numbered in pre-order, so the root is node 0 and edge 0.
    """
    t.check(sig)
    edges: Dict[ElemId, Tuple[Tuple[ElemId, ...], Tuple[ElemId, ...]]] = {}
    labels: Dict[ElemId, Symbol] = {}
    counter = iter(range(t.size()))

    def visit(sub: Term) -> ElemId:
        me = next(counter)
        children = tuple(visit(a) for a in sub.args)
        edges[me] = (children, (me,))
        labels[me] = sub.symbol
        return me

    visit(t)
    base = Hypergraph.build(nodes=range(t.size()), edges=edges)
    return Labelling.of(base, labels, sig)


def example_signature() -> Signature:
    """Constants a, b, 0, 1, 2 and the binary operators * and /."""
    return Signature.of({'a': 0, 'b': 0, '0': 0, '1': 0, '2': 0, '*': 2, '/': 2})
