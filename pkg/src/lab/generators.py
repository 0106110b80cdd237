"""
Seeded random structures for the lab campaigns.

Every generator takes a ``random.Random`` so a trial is reproducible from
its seed. Sizes are drawn uniformly within the bounds given.
"""

import random
from typing import Dict, List, Optional, Sequence, Tuple

from ..core import finset
from ..core.egraph import rebuild_eq
from ..core.eqhyp import EqHypergraph, EqMorphism, eq_morphism, subobject
from ..core.finset import ElemId, FinFn, FinSet, UnionFind
from ..core.hypergraph import Hypergraph


def trial_rng(campaign: str, seed: int, index: int, *extra) -> random.Random:
    """Independent generator for one trial (string seeds hash deterministically)."""
    return random.Random(':'.join(str(x) for x in (campaign, seed, index) + extra))


# -- finite sets ------------------------------------------------------------------

def random_finset(rng: random.Random, max_size: int, min_size: int = 0) -> FinSet:
    return FinSet.range(rng.randint(min_size, max_size))


def random_function(rng: random.Random, X: FinSet, Y: FinSet) -> Optional[FinFn]:
    """A uniform function X → Y; None when X is inhabited and Y empty."""
    if len(X) and not len(Y):
        return None
    return FinFn(X, Y, tuple(rng.choice(Y.elems) for _ in X))


def random_injection(rng: random.Random, X: FinSet, Y: FinSet) -> Optional[FinFn]:
    if len(X) > len(Y):
        return None
    return FinFn(X, Y, tuple(rng.sample(list(Y.elems), len(X))))


def random_subset(rng: random.Random, items: Sequence[ElemId], keep: float = 0.5) -> List[ElemId]:
    return [x for x in items if rng.random() < keep]


# -- hypergraphs with equivalence ------------------------------------------------------

def random_hypergraph(rng: random.Random, max_nodes: int, max_edges: int, max_arity: int = 2,
                      min_nodes: int = 1) -> Hypergraph:
    """Dense ids; every edge has a single target and at most ``max_arity`` sources."""
    n = rng.randint(min_nodes, max_nodes)
    nodes = list(range(n))
    edges: Dict[ElemId, Tuple[Tuple[ElemId, ...], Tuple[ElemId, ...]]] = {}
    if n:
        for e in range(rng.randint(0, max_edges)):
            arity = rng.randint(0, max_arity)
            edges[e] = (tuple(rng.choice(nodes) for _ in range(arity)), (rng.choice(nodes),))
    return Hypergraph.build(nodes, edges)


def random_partition_map(rng: random.Random, nodes: FinSet, max_classes: Optional[int] = None) -> Dict[ElemId, int]:
    bound = max(1, min(len(nodes), max_classes or len(nodes)))
    return {v: rng.randrange(bound) for v in nodes}


def random_eq(rng: random.Random, max_size: int, max_arity: int = 2) -> EqHypergraph:
    """A random hypergraph with a random partition of its nodes."""
    hyp = random_hypergraph(rng, max_size, max_size, max_arity)
    blocks: Dict[int, List[ElemId]] = {}
    for v, c in random_partition_map(rng, hyp.nodes).items():
        blocks.setdefault(c, []).append(v)
    return EqHypergraph.from_partition(hyp, blocks.values())


def random_e_hypergraph(rng: random.Random, max_size: int, max_arity: int = 2) -> EqHypergraph:
    """A random object closed under the (unlabelled) operator condition."""
    eq, _ = rebuild_eq(random_eq(rng, max_size, max_arity))
    return eq


def pb_subobject(rng: random.Random, G: EqHypergraph, keep: float = 0.5) -> EqMorphism:
    """Inclusion of a random union of whole classes, with a random part of the edges inside it."""
    chosen = set(random_subset(rng, G.classes.elems, keep))
    nodes = [v for v in G.nodes if G.q(v) in chosen]
    inside = [e for e in G.edges if all(G.q(v) in chosen for v in G.hyp.incident_nodes(e))]
    return subobject(G, nodes, random_subset(rng, inside, keep))


def source_closed_subobject(rng: random.Random, G: EqHypergraph, keep: float = 0.5) -> EqMorphism:
    """
    A Pb sub-object that also contains every edge whose sources all lie in
    its classes, together with that edge's target classes.
    """
    chosen = set(random_subset(rng, G.classes.elems, keep))
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(G.edges):
            if all(G.q(v) in chosen for v in G.hyp.src[i]):
                for v in G.hyp.tgt[i]:
                    if G.q(v) not in chosen:
                        chosen.add(G.q(v))
                        changed = True
    nodes = [v for v in G.nodes if G.q(v) in chosen]
    return subobject(G, nodes)


def regular_subobject(rng: random.Random, G: EqHypergraph, keep: float = 0.5,
                      cut_class: bool = False) -> EqMorphism:
    """
    Inclusion of a random node selection with a random part of the edges
    inside it. With ``cut_class`` a multi-node class, when there is one, is
    hit but not covered, so the result is not in Pb.
    """
    nodes = set(random_subset(rng, G.nodes.elems, keep))
    if cut_class:
        big = [c for c in G.classes if len(G.members(c)) > 1]
        if big:
            members = G.members(rng.choice(big))
            rng.shuffle(members)
            nodes -= set(members)
            nodes.add(members[0])
    inside = [e for e in G.edges if all(v in nodes for v in G.hyp.incident_nodes(e))]
    return subobject(G, sorted(nodes), random_subset(rng, inside, keep))


def random_morphism_from(rng: random.Random, A: EqHypergraph, max_extra: int,
                         merge_prob: float = 0.3, max_arity: int = 2) -> EqMorphism:
    """
    A random morphism out of A: A is copied into a larger hypergraph, some
    nodes are merged, extra nodes and edges are added, and the classes are
    coarsened at random on top of those forced by A.
    """
    a_nodes = list(A.nodes)
    total = len(a_nodes) + rng.randint(0 if a_nodes else 1, max_extra)
    uf = UnionFind(range(total))
    if total > 1 and rng.random() < merge_prob:
        uf.union(rng.randrange(total), rng.randrange(total))
    quot = finset.quotient(FinSet.range(total), uf)
    node_map = {v: quot(i) for i, v in enumerate(a_nodes)}
    nodes = list(quot.cod)

    edges: Dict[ElemId, Tuple[Tuple[ElemId, ...], Tuple[ElemId, ...]]] = {}
    edge_map: Dict[ElemId, ElemId] = {}
    for i, e in enumerate(A.edges):
        edges[i] = (tuple(node_map[v] for v in A.hyp.src[i]), tuple(node_map[v] for v in A.hyp.tgt[i]))
        edge_map[e] = i
    for k in range(rng.randint(0, max_extra)):
        arity = rng.randint(0, max_arity)
        edges[len(A.edges) + k] = (tuple(rng.choice(nodes) for _ in range(arity)), (rng.choice(nodes),))
    hyp = Hypergraph.build(nodes, edges)

    classes = UnionFind(hyp.nodes)
    for c in A.classes:
        members = A.members(c)
        for v in members[1:]:
            classes.union(node_map[members[0]], node_map[v])
    for _ in range(rng.randint(0, len(nodes))):
        if rng.random() < merge_prob:
            classes.union(rng.choice(nodes), rng.choice(nodes))
    B = EqHypergraph.from_quotient(hyp, finset.quotient(hyp.nodes, classes))
    return eq_morphism(A, B, edge_map, node_map)


def random_closed_morphism_from(rng: random.Random, A: EqHypergraph, max_extra: int) -> EqMorphism:
    """Like ``random_morphism_from`` but into an e-hypergraph (classes rebuilt afterwards)."""
    f = random_morphism_from(rng, A, max_extra)
    closed, _ = rebuild_eq(f.cod)
    if closed is f.cod:
        return f
    return eq_morphism(A, closed, f.h_E.as_dict(), f.h_V.as_dict())


def random_class_injective_closed_morphism(rng: random.Random, A: EqHypergraph, max_extra: int,
                                           attempts: int = 20) -> EqMorphism:
    """A morphism into an e-hypergraph that keeps the classes of A apart (identity as last resort)."""
    for _ in range(attempts):
        f = random_closed_morphism_from(rng, A, max_extra)
        if finset.is_injective(f.h_Q):
            return f
    return eq_morphism(A, A, finset.identity(A.edges).as_dict(), finset.identity(A.nodes).as_dict())
